"""Exact linear algebra over the rationals and prime fields.

Matrices are small and dense.  Entries are ``fractions.Fraction`` over Q and
``Fp`` residues over GF(p); there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class Fp:
    """A residue modulo a prime.  Mixing moduli raises ``ValueError``."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"cannot mix GF({self.p}) and GF({other.p}) elements")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else Fp(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else Fp(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else Fp(v - self.value, self.p)

    def __mul__(self, other):
        v = self._other(other)
        return NotImplemented if v is None else Fp(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.value * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._other(other)
        if v is None:
            return NotImplemented
        return Fp(v, self.p) / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pow__(self, k):
        if k < 0:
            return Fp(1, self.p) / Fp(pow(self.value, -k, self.p), self.p)
        return Fp(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        v = self._other(other)
        return False if v is None else self.value == v

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    characteristic = 0
    zero = None
    one = None

    def __call__(self, x):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)

    def random_element(self, rng, spread=3):
        return self(rng.randint(-spread, spread))


class RationalField(Field):
    """The field Q.  Elements are ``Fraction`` instances."""

    characteristic = 0
    name = "q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Fp):
            raise ValueError("cannot coerce a prime-field element into Q")
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """GF(p) for a prime p."""

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not a prime")
        self.p = p
        self.characteristic = p
        self.name = f"fp:{p}"
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError(f"cannot mix GF({self.p}) and GF({x.p}) elements")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)
        return Fp(int(x), self.p)

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse ``q`` or ``fp:<p>``."""
    text = text.strip().lower()
    if text in ("q", "qq", "rational"):
        return QQ
    if text.startswith("fp:"):
        return GF(int(text[3:]))
    raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:<p>'")


class Mat:
    """Immutable dense matrix over a field."""

    __slots__ = ("rows", "cols", "field", "_data")

    def __init__(self, data, field=QQ, rows=None, cols=None):
        data = tuple(tuple(r) for r in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("ragged matrix data")
        self.rows = rows
        self.cols = cols
        self.field = field
        self._data = data

    @classmethod
    def from_rows(cls, rows, field=QQ, cols=None):
        rows = [tuple(field(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(rows, field, len(rows), cols)

    @classmethod
    def from_columns(cls, columns, nrows, field=QQ):
        columns = list(columns)
        data = [tuple(c[i] for c in columns) for i in range(nrows)]
        return cls(data, field, nrows, len(columns))

    @classmethod
    def zeros(cls, rows, cols, field=QQ):
        z = field.zero
        return cls([(z,) * cols for _ in range(rows)], field, rows, cols)

    @classmethod
    def identity(cls, n, field=QQ):
        z, o = field.zero, field.one
        return cls([tuple(o if i == j else z for j in range(n)) for i in range(n)], field, n, n)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        return tuple(x for r in self._data for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(r[j] for r in self._data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def tolist(self):
        return [list(r) for r in self._data]

    @property
    def T(self):
        return Mat(list(zip(*self._data)) if self.rows else [()] * self.cols, self.field, self.cols, self.rows)

    def is_zero(self):
        return not any(x for r in self._data for x in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Mat({self.rows}x{self.cols}: [{body}])"

    def __add__(self, other):
        _same_shape(self, other)
        return Mat([tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)],
                   self.field, self.rows, self.cols)

    def __sub__(self, other):
        _same_shape(self, other)
        return Mat([tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)],
                   self.field, self.rows, self.cols)

    def __neg__(self):
        return Mat([tuple(-a for a in r) for r in self._data], self.field, self.rows, self.cols)

    def scale(self, c):
        return Mat([tuple(c * a for a in r) for r in self._data], self.field, self.rows, self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.field.zero
        n = other.cols
        B = other._data
        out = []
        for r in self._data:
            acc = [zero] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(B[k]):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Mat(out, self.field, self.rows, n)

    def apply(self, v):
        """Matrix times a column vector given as a sequence."""
        zero = self.field.zero
        out = []
        for r in self._data:
            acc = zero
            for a, b in zip(r, v):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def trace(self):
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), self.field.zero)

    def submatrix(self, rows, cols):
        return Mat([tuple(self._data[i][j] for j in cols) for i in rows], self.field, len(rows), len(cols))


def _same_shape(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def hstack(mats, rows=None, field=None):
    mats = list(mats)
    if not mats:
        return Mat.zeros(rows or 0, 0, field or QQ)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise ValueError("hstack needs equal row counts")
    data = [tuple(x for m in mats for x in m._data[i]) for i in range(r)]
    return Mat(data, mats[0].field, r, sum(m.cols for m in mats))


def vstack(mats, cols=None, field=None):
    mats = list(mats)
    if not mats:
        return Mat.zeros(0, cols or 0, field or QQ)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise ValueError("vstack needs equal column counts")
    return Mat([r for m in mats for r in m._data], mats[0].field, sum(m.rows for m in mats), c)


def block_diag(mats, field=QQ):
    mats = list(mats)
    if mats:
        field = mats[0].field
    R = sum(m.rows for m in mats)
    C = sum(m.cols for m in mats)
    z = field.zero
    data = []
    off = 0
    for m in mats:
        for r in m._data:
            data.append((z,) * off + r + (z,) * (C - off - m.cols))
        off += m.cols
    return Mat(data, field, R, C)


def _rref_rows(rows, ncols):
    """In-place rref of a list of mutable rows; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if pr[c] != 1:
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] = pr[j] * inv
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(nrows):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    for j in nz:
                        row[j] = row[j] - f * pr[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(A: Mat):
    """Reduced row echelon form with first-nonzero pivoting.

    Returns ``(R, rank, pivots)``.
    """
    rows = [list(r) for r in A._data]
    pivots = _rref_rows(rows, A.cols)
    return Mat(rows, A.field, A.rows, A.cols), len(pivots), pivots


def rank(A: Mat) -> int:
    return rref(A)[1]


def kernel_basis(A: Mat) -> Mat:
    """Columns form a basis of the null space; one column per free variable."""
    R, rk, pivots = rref(A)
    field = A.field
    free = [j for j in range(A.cols) if j not in set(pivots)]
    cols = []
    for f in free:
        v = [field.zero] * A.cols
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        cols.append(v)
    return Mat.from_columns(cols, A.cols, field) if cols else Mat.zeros(A.cols, 0, field)


def solve(A: Mat, b: Mat):
    """Some X with A X = b (free variables zero), or None if inconsistent."""
    if A.rows != b.rows:
        raise ValueError(f"row mismatch: {A.shape} vs {b.shape}")
    field = A.field
    n = A.cols
    rows = [list(ra) + list(rb) for ra, rb in zip(A._data, b._data)]
    pivots = _rref_rows(rows, n + b.cols)
    if pivots and pivots[-1] >= n:
        return None
    X = [[field.zero] * b.cols for _ in range(n)]
    for i, p in enumerate(pivots):
        X[p] = rows[i][n:]
    return Mat(X, field, n, b.cols)


def solve_vector(A: Mat, v):
    X = solve(A, Mat([(x,) for x in v], A.field, len(v), 1))
    return None if X is None else X.column(0)


def inverse(A: Mat) -> Mat:
    if A.rows != A.cols:
        raise ValueError("inverse of a non-square matrix")
    X = solve(A, Mat.identity(A.rows, A.field))
    if X is None or rank(A) != A.rows:
        raise ZeroDivisionError("matrix is singular")
    return X


def column_space(A: Mat) -> Mat:
    """Pivot columns of A: a basis of its column space."""
    _, _, pivots = rref(A)
    return A.submatrix(range(A.rows), pivots)


def row_basis(vectors, ncols, field=QQ):
    """rref rows (nonzero) spanning the given vectors, with pivots."""
    rows = [list(v) for v in vectors]
    pivots = _rref_rows(rows, ncols)
    return [tuple(r) for r in rows[: len(pivots)]], pivots


class Reducer:
    """Reduction of vectors modulo a fixed subspace.

    Keeps the subspace in rref; the standard vectors at non-pivot positions
    give a canonical complement, so ``coset`` returns coordinates in it.
    """

    def __init__(self, vectors, ncols, field=QQ):
        self.ncols = ncols
        self.field = field
        self.rows, self.pivots = row_basis(vectors, ncols, field)
        piv = set(self.pivots)
        self.free = [j for j in range(ncols) if j not in piv]

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                for j in range(p, self.ncols):
                    if row[j]:
                        v[j] -= f * row[j]
        return v

    def coset(self, v):
        r = self.reduce(v)
        return tuple(r[j] for j in self.free)

    def contains(self, v):
        return not any(self.reduce(v))

    def add(self, v):
        """Enlarge the subspace by v; False when v was already in it."""
        if self.contains(v):
            return False
        self.rows, self.pivots = row_basis(list(self.rows) + [list(v)], self.ncols, self.field)
        piv = set(self.pivots)
        self.free = [j for j in range(self.ncols) if j not in piv]
        return True

    def lift(self, coords):
        """Vector with the given complement coordinates (zero elsewhere)."""
        v = [self.field.zero] * self.ncols
        for j, c in zip(self.free, coords):
            v[j] = c
        return v


def span_rank(vectors, ncols, field=QQ):
    return len(row_basis(vectors, ncols, field)[1])
