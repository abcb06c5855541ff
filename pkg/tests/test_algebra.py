import random
from itertools import product

import pytest

from quivrep import GF, QQ, Quiver, Relation, build_algebra, gabriel_quiver, load_algebra
from quivrep.errors import MalformedRelation, NotFiniteDimensional


def interval_hom_total(n):
    """Sum of dim Hom(X, Y) over indecomposable pairs of linear A_n.

    [a, b] has top a; Hom([a, b], [c, d]) is one-dimensional iff c <= a <= d <= b.
    """
    intervals = [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
    return sum(1 for (a, b), (c, d) in product(intervals, repeat=2) if c <= a <= d <= b)


def path_count(Q):
    """Number of paths in an acyclic quiver (trivial ones included)."""
    n = len(Q.vertices)
    total = 0
    layer = {(v, v): 1 for v in range(n)}
    while layer:
        total += sum(layer.values())
        nxt = {}
        for (s, t), c in layer.items():
            for k in range(len(Q.arrows)):
                if Q.src[k] == t:
                    key = (s, Q.tgt[k])
                    nxt[key] = nxt.get(key, 0) + c
        layer = nxt
    return total


def linear(n, rels=()):
    Q = Quiver([str(i) for i in range(1, n + 1)],
               [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)])
    return Q, [Relation([(1, r)]) for r in rels]


def test_auslander_dimension_matches_interval_homs(aus):
    assert interval_hom_total(3) == 15
    assert aus.dimension == interval_hom_total(3)


def test_auslander_dimension_over_prime_field(corpus):
    A = load_algebra(corpus / "auslander_a3.alg", field=GF(5))
    assert A.dimension == 15


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_path_algebra_dimension(n):
    Q, _ = linear(n)
    assert build_algebra(Q).dimension == path_count(Q) == n * (n + 1) // 2


def test_small_corpus_dimensions(small):
    assert small["a2"][0].dimension == 3
    assert small["a3"][0].dimension == 6
    assert small["one_loop"][0].dimension == 2
    assert small["a3_rad2"][0].dimension == 5
    assert small["a4_rad2"][0].dimension == 7


def test_commutativity_relation():
    Q = Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")])
    A = build_algebra(Q, [Relation([(1, ["a", "b"]), (-1, ["c", "d"])])])
    assert A.dimension == path_count(Q) - 1
    assert A.element([(1, ["a", "b"])]) == A.element([(1, ["c", "d"])])


def test_multiplication_is_associative(aus):
    rng = random.Random(7)
    n = aus.dimension

    def rand_elem():
        return {i: QQ(rng.randint(-2, 2)) for i in rng.sample(range(n), 4)}

    for _ in range(30):
        x, y, z = rand_elem(), rand_elem(), rand_elem()
        assert aus.multiply(aus.multiply(x, y), z) == aus.multiply(x, aus.multiply(y, z))


def test_identity_is_unit(aus):
    one = aus.one()
    for i in range(aus.dimension):
        x = {i: QQ(1)}
        assert aus.multiply(one, x) == x == aus.multiply(x, one)


def test_relations_vanish(aus):
    assert aus.element([(1, ["a", "c"])]) == {}
    assert aus.element([(1, ["e", "f"])]) == {}
    assert aus.element([(1, ["b", "d"]), (1, ["c", "e"])]) == {}


def test_gabriel_quiver_recovers_arrows(aus):
    G = gabriel_quiver(aus)
    got = sorted((a.source, a.target) for a in G.arrows)
    want = sorted((a.source, a.target) for a in aus.quiver.arrows)
    assert got == want


def test_gabriel_quiver_ignores_non_admissible_presentation():
    # an arrow that equals a composite is not in rad / rad^2
    Q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")])
    A = build_algebra(Q, [Relation([(1, ["a", "b"])])])
    G = gabriel_quiver(A)
    assert len(G.arrows) == 3


def test_opposite(aus):
    op = aus.opposite()
    assert op.dimension == aus.dimension
    assert op.opposite() is aus
    assert len(gabriel_quiver(op).arrows) == len(aus.quiver.arrows)


def test_malformed_relations():
    Q, _ = linear(3)
    with pytest.raises(MalformedRelation):
        build_algebra(Q, [Relation([(1, ["a1"])])])
    with pytest.raises(MalformedRelation):
        build_algebra(Q, [Relation([(1, ["a2", "a1"])])])
    Q2 = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "2"), ("d", "2", "2")])
    with pytest.raises(MalformedRelation):
        build_algebra(Q2, [Relation([(1, ["a", "b"]), (1, ["c", "d"])])])
    with pytest.raises(MalformedRelation):
        build_algebra(Q, [Relation([(1, ["zz", "a1"])])])
    with pytest.raises(MalformedRelation):
        Relation([])


def test_loop_without_relations_is_infinite():
    Q = Quiver(["1"], [("x", "1", "1")])
    with pytest.raises(NotFiniteDimensional):
        build_algebra(Q, max_len=6)


def test_loop_with_cube_relation():
    Q = Quiver(["1"], [("x", "1", "1")])
    A = build_algebra(Q, [Relation([(1, ["x", "x", "x"])])])
    assert A.dimension == 3


def test_duplicate_names_rejected():
    with pytest.raises(ValueError):
        Quiver(["1", "1"], [])
    with pytest.raises(ValueError):
        Quiver(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])
