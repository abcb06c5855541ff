from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from quivrep.exactla import (
    GF, QQ, Mat, Reducer, inverse, kernel_basis, parse_field, rank, rref, solve, span_rank,
)

small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))
    return Mat.from_rows([[QQ(x) for x in row] for row in rows], QQ)


def as_sympy(A):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in A.tolist()])


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_agrees_with_sympy(A):
    assert rank(A) == as_sympy(A).rank()


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_agrees_with_sympy(A):
    R, rk, pivots = rref(A)
    sR, spiv = as_sympy(A).rref()
    assert list(pivots) == list(spiv)
    assert as_sympy(R) == sR


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_kernel_is_annihilated_and_has_right_size(A):
    K = kernel_basis(A)
    assert K.shape == (A.cols, A.cols - rank(A))
    if K.cols:
        assert (A @ K).is_zero()
        assert rank(K) == K.cols


@settings(max_examples=80, deadline=None)
@given(matrices(), st.lists(small_ints, min_size=5, max_size=5))
def test_solve_consistent_systems(A, xs):
    x = Mat.from_rows([[QQ(v)] for v in xs[: A.cols]], QQ)
    b = A @ x
    y = solve(A, b)
    assert y is not None
    assert A @ y == b


def test_solve_inconsistent():
    A = Mat.from_rows([[1, 0], [1, 0]], QQ)
    b = Mat.from_rows([[1], [2]], QQ)
    assert solve(A, b) is None


@settings(max_examples=50, deadline=None)
@given(matrices(4, 4))
def test_inverse_when_square_and_invertible(A):
    if A.rows != A.cols or rank(A) < A.rows:
        return
    assert A @ inverse(A) == Mat.identity(A.rows, QQ)


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        inverse(Mat.from_rows([[1, 2], [2, 4]], QQ))


def test_prime_field_arithmetic():
    F = GF(7)
    a, b = F(3), F(5)
    assert a * b == F(1)
    assert a / b == F(2)
    assert F("1/2") * F(2) == F.one
    assert -a == F(4)
    assert a ** 6 == F.one
    with pytest.raises(ZeroDivisionError):
        a / F(0)
    with pytest.raises(ValueError):
        F(GF(5)(1))


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, -1]]
    assert rank(Mat.from_rows([[QQ(x) for x in r] for r in rows], QQ)) == 2
    F = GF(2)
    assert rank(Mat.from_rows([[F(x) for x in r] for r in rows], F)) == 1


def test_parse_field():
    assert parse_field("q") is QQ
    assert parse_field("fp:5") is GF(5)
    with pytest.raises(ValueError):
        parse_field("fp:6")
    with pytest.raises(ValueError):
        parse_field("reals")


def test_entries_stay_exact():
    A = Mat.from_rows([[QQ(1), QQ(3)], [QQ(2), QQ(7)]], QQ)
    inv = inverse(A)
    assert all(isinstance(x, Fraction) for row in inv.tolist() for x in row)
    assert inv.tolist() == [[7, -3], [-2, 1]]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=0, max_size=4),
       st.lists(small_ints, min_size=4, max_size=4))
def test_reducer_coset_membership(vectors, v):
    vecs = [[QQ(x) for x in row] for row in vectors]
    red = Reducer(vecs, 4, QQ)
    w = [QQ(x) for x in v]
    inside = span_rank(vecs + [w], 4, QQ) == span_rank(vecs, 4, QQ)
    assert red.contains(w) == inside
    # the coset coordinates of w and of w + (anything in the span) agree
    if vecs:
        shifted = [a + b for a, b in zip(w, vecs[0])]
        assert red.coset(shifted) == red.coset(w)
    # lift gives a representative of the same class
    assert red.coset(red.lift(red.coset(w))) == red.coset(w)
    assert red.add(w) == (not inside)
    assert red.contains(w)
