"""Modules over bound quiver algebras, their maps, Hom spaces and decomposition.

A module is a covariant representation: one vector space per vertex and, for
an arrow a: s -> t, a dim(t) x dim(s) matrix.  Vectors are column vectors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import sympy

from .errors import NonSplitEndomorphism
from .exactla import Mat, Reducer, _rref_rows, block_diag, column_space, hstack, kernel_basis, rank, row_basis, solve, vstack

DEFAULT_SEED = 0xEC5EED
_seed = DEFAULT_SEED


def set_seed(seed):
    """Seed used by decomposition when no seed is passed explicitly."""
    global _seed
    _seed = DEFAULT_SEED if seed is None else int(seed)


def current_seed():
    return _seed


class Module:
    def __init__(self, algebra, dims, maps=None, name=None, check=True):
        Q = algebra.quiver
        F = algebra.field
        if isinstance(dims, dict):
            dims = [int(dims.get(v, 0)) for v in Q.vertices]
        self.algebra = algebra
        self.field = F
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != len(Q.vertices):
            raise ValueError("dimension vector length does not match the quiver")
        if maps is None:
            maps = {}
        if isinstance(maps, dict):
            maps = [maps.get(a.name) for a in Q.arrows]
        out = []
        for i, m in enumerate(maps):
            r, c = self.dims[Q.tgt[i]], self.dims[Q.src[i]]
            if m is None:
                m = Mat.zeros(r, c, F)
            elif not isinstance(m, Mat):
                m = Mat.from_rows(m, F, cols=c)
            if m.shape != (r, c):
                raise ValueError(f"arrow {Q.arrows[i].name}: expected {r}x{c}, got {m.rows}x{m.cols}")
            out.append(m)
        self.maps = tuple(out)
        self.name = name
        self._cache = {}
        self._paths = {}
        if check:
            self.check_relations()

    def check_relations(self):
        A = self.algebra
        for r in A._resolved:
            s, t, terms = r
            acc = Mat.zeros(self.dims[t], self.dims[s], self.field)
            for c, arrows in terms:
                acc = acc + self._arrow_product(arrows).scale(c)
            if not acc.is_zero():
                raise ValueError(f"relation {r} does not vanish on the module")

    def _arrow_product(self, arrows):
        m = None
        for a in arrows:
            m = self.maps[a] if m is None else self.maps[a] @ m
        return m

    @property
    def total_dim(self):
        return sum(self.dims)

    @property
    def dim_vector(self):
        return dict(zip(self.algebra.quiver.vertices, self.dims))

    def is_zero(self):
        return self.total_dim == 0

    def arrow_matrix(self, name):
        return self.maps[self.algebra.quiver.arrow_index[name]]

    def path_matrix(self, path):
        """Matrix of a path (tuple of arrows from ``path.source``) on this module."""
        key = (path.source, path.arrows)
        m = self._paths.get(key)
        if m is None:
            if not path.arrows:
                m = Mat.identity(self.dims[path.source], self.field)
            else:
                m = self._arrow_product(path.arrows)
            self._paths[key] = m
        return m

    def element_matrix(self, element, u, w):
        """Action M_u -> M_w of the e_u-e_w part of an algebra element."""
        A = self.algebra
        acc = Mat.zeros(self.dims[w], self.dims[u], self.field)
        for i, c in element.items():
            p = A.basis[i]
            if p.source == u and p.target == w and c:
                acc = acc + self.path_matrix(p).scale(c)
        return acc

    def equals(self, other):
        return self.algebra is other.algebra and self.dims == other.dims and self.maps == other.maps

    @property
    def label(self):
        from .homology import loewy_label
        lab = self._cache.get("label")
        if lab is None:
            lab = self._cache["label"] = loewy_label(self)
        return lab

    def __repr__(self):
        nm = self.name or self.label
        return f"Module({nm}, dims={self.dims})"


class ModuleMap:
    """Per-vertex matrices f_v: M_v -> N_v commuting with the arrow actions."""

    def __init__(self, source, target, comps, check=True):
        if source.algebra is not target.algebra:
            raise ValueError("modules over different algebras")
        F = source.field
        comps = [c if isinstance(c, Mat) else Mat.from_rows(c, F, cols=source.dims[v])
                 for v, c in enumerate(comps)]
        if len(comps) != len(source.dims):
            raise ValueError("one component per vertex is required")
        for v, c in enumerate(comps):
            if c.shape != (target.dims[v], source.dims[v]):
                raise ValueError(f"component at vertex {v} has shape {c.shape}")
        self.source = source
        self.target = target
        self.comps = tuple(comps)
        if check:
            Q = source.algebra.quiver
            for a in range(len(Q.arrows)):
                s, t = Q.src[a], Q.tgt[a]
                if comps[t] @ source.maps[a] != target.maps[a] @ comps[s]:
                    raise ValueError(f"map does not commute with arrow {Q.arrows[a].name}")

    @classmethod
    def identity(cls, M):
        return cls(M, M, [Mat.identity(d, M.field) for d in M.dims], check=False)

    @classmethod
    def zero(cls, M, N):
        return cls(M, N, [Mat.zeros(N.dims[v], M.dims[v], M.field) for v in range(len(M.dims))], check=False)

    def __matmul__(self, other):
        """Composition ``self o other``."""
        if other.target is not self.source:
            raise ValueError("maps do not compose")
        return ModuleMap(other.source, self.target, [a @ b for a, b in zip(self.comps, other.comps)], check=False)

    def __add__(self, other):
        self._parallel(other)
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.comps, other.comps)], check=False)

    def __sub__(self, other):
        self._parallel(other)
        return ModuleMap(self.source, self.target, [a - b for a, b in zip(self.comps, other.comps)], check=False)

    def __neg__(self):
        return ModuleMap(self.source, self.target, [-a for a in self.comps], check=False)

    def scale(self, c):
        return ModuleMap(self.source, self.target, [a.scale(c) for a in self.comps], check=False)

    def _parallel(self, other):
        if other.source is not self.source or other.target is not self.target:
            raise ValueError("maps are not parallel")

    @property
    def vector(self):
        return tuple(x for c in self.comps for x in c.entries)

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def is_injective(self):
        return all(rank(c) == c.cols for c in self.comps)

    def is_surjective(self):
        return all(rank(c) == c.rows for c in self.comps)

    def is_isomorphism(self):
        return self.source.dims == self.target.dims and self.is_injective()

    def inverse(self):
        from .exactla import inverse
        return ModuleMap(self.target, self.source, [inverse(c) for c in self.comps], check=False)

    def trace(self):
        return sum((c.trace() for c in self.comps), self.source.field.zero)

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return self.source is other.source and self.target is other.target and self.comps == other.comps

    __hash__ = object.__hash__

    def __repr__(self):
        return f"ModuleMap({self.source!r} -> {self.target!r})"


def combine(maps, coeffs, source=None, target=None):
    """Linear combination of parallel maps."""
    out = None
    for f, c in zip(maps, coeffs):
        if c:
            g = f.scale(c)
            out = g if out is None else out + g
    if out is None:
        if source is None:
            source, target = maps[0].source, maps[0].target
        out = ModuleMap.zero(source, target)
    return out


@dataclass
class ShortExactSeq:
    i: ModuleMap
    d: ModuleMap

    @property
    def left(self):
        return self.i.source

    @property
    def middle(self):
        return self.i.target

    @property
    def right(self):
        return self.d.target

    def is_exact(self):
        if self.i.target is not self.d.source:
            return False
        if not (self.i.is_injective() and self.d.is_surjective()):
            return False
        if not (self.d @ self.i).is_zero():
            return False
        return all(a + b == c for a, b, c in zip(self.left.dims, self.right.dims, self.middle.dims))


class HomSpace:
    """Basis of Hom(M, N), with O(1) coordinates read off free positions."""

    def __init__(self, source, target, basis, free):
        self.source = source
        self.target = target
        self.basis = basis
        self._free = free

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def coordinates(self, f):
        v = f.vector
        return tuple(v[j] for j in self._free)

    def element(self, coeffs):
        return combine(self.basis, coeffs, self.source, self.target)


def _hom_basis(M, N):
    A = M.algebra
    Q = A.quiver
    F = M.field
    n = len(M.dims)
    offs = []
    o = 0
    for v in range(n):
        offs.append(o)
        o += N.dims[v] * M.dims[v]
    total = o
    rows = []
    for a in range(len(Q.arrows)):
        s, t = Q.src[a], Q.tgt[a]
        Ma, Na = M.maps[a], N.maps[a]
        ms, mt, ns, nt = M.dims[s], M.dims[t], N.dims[s], N.dims[t]
        # (f_t Ma - Na f_s)[i][j] = 0
        for i in range(nt):
            for j in range(ms):
                row = {}
                for k in range(mt):
                    c = Ma[k, j]
                    if c:
                        idx = offs[t] + i * mt + k
                        row[idx] = row.get(idx, F.zero) + c
                for k in range(ns):
                    c = Na[i, k]
                    if c:
                        idx = offs[s] + k * ms + j
                        row[idx] = row.get(idx, F.zero) - c
                if any(row.values()):
                    rows.append(row)
    dense = []
    for r in rows:
        d = [F.zero] * total
        for k, c in r.items():
            d[k] = c
        dense.append(d)
    pivots = _rref_rows(dense, total)
    piv = set(pivots)
    free = [j for j in range(total) if j not in piv]
    vectors = []
    for f in free:
        vec = [F.zero] * total
        vec[f] = F.one
        for i, p in enumerate(pivots):
            x = dense[i][f]
            if x:
                vec[p] = -x
        vectors.append(vec)
    basis = []
    for vec in vectors:
        comps = []
        for v in range(n):
            r, c = N.dims[v], M.dims[v]
            flat = vec[offs[v]: offs[v] + r * c]
            comps.append(Mat([flat[i * c:(i + 1) * c] for i in range(r)], F, r, c))
        basis.append(ModuleMap(M, N, comps, check=False))
    return basis, free


def hom_space(M, N):
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    key = ("hom", N)
    H = M._cache.get(key)
    if H is None:
        basis, free = _hom_basis(M, N)
        H = HomSpace(M, N, basis, free)
        M._cache[key] = H
    return H


class QuotientSpace:
    """Hom(M, N) modulo a subspace, with a canonical complement basis."""

    def __init__(self, hom, sub_vectors):
        self.hom = hom
        self.source = hom.source
        self.target = hom.target
        self.reducer = Reducer(sub_vectors, hom.dim, hom.source.field)

    @property
    def dim(self):
        return self.hom.dim - self.reducer.rank

    def __len__(self):
        return self.dim

    @property
    def subspace_dim(self):
        return self.reducer.rank

    @property
    def representatives(self):
        return [self.hom.basis[j] for j in self.reducer.free]

    def class_of(self, f):
        return self.reducer.coset(self.hom.coordinates(f))

    def class_of_coords(self, coords):
        return self.reducer.coset(coords)

    def contains(self, f):
        """True when f lies in the subspace (its class is zero)."""
        return not any(self.class_of(f))

    def element(self, class_coords):
        return combine(self.representatives, class_coords, self.source, self.target)


# -- constructions ------------------------------------------------------

@dataclass
class Biproduct:
    module: Module
    injections: list
    projections: list


def direct_sum(modules, algebra=None):
    modules = list(modules)
    if algebra is None:
        if not modules:
            raise ValueError("direct_sum of no modules needs an algebra")
        algebra = modules[0].algebra
    F = algebra.field
    Q = algebra.quiver
    n = len(Q.vertices)
    dims = [sum(m.dims[v] for m in modules) for v in range(n)]
    maps = [block_diag([m.maps[a] for m in modules], F) if modules else None for a in range(len(Q.arrows))]
    S = Module(algebra, dims, maps, check=False)
    inj, proj = [], []
    offs = [0] * n
    for m in modules:
        ic, pc = [], []
        for v in range(n):
            d, D, o = m.dims[v], dims[v], offs[v]
            ic.append(Mat([tuple(F.one if (i == j + o) else F.zero for j in range(d)) for i in range(D)], F, D, d))
            pc.append(Mat([tuple(F.one if (j == i + o) else F.zero for j in range(D)) for i in range(d)], F, d, D))
            offs[v] += d
        inj.append(ModuleMap(m, S, ic, check=False))
        proj.append(ModuleMap(S, m, pc, check=False))
    return Biproduct(S, inj, proj)


def map_between_sums(src, tgt, blocks):
    """Map from src.module to tgt.module given blocks[j][i]: src_i -> tgt_j."""
    M, N = src.module, tgt.module
    out = ModuleMap.zero(M, N)
    for j, row in enumerate(blocks):
        for i, f in enumerate(row):
            if f is not None:
                out = out + (tgt.injections[j] @ f @ src.projections[i])
    return out


def submodule(M, spaces):
    """Submodule spanned per vertex by the columns of ``spaces[v]`` (independent)."""
    A = M.algebra
    Q = A.quiver
    F = M.field
    dims = [s.cols for s in spaces]
    maps = []
    for a in range(len(Q.arrows)):
        s, t = Q.src[a], Q.tgt[a]
        img = M.maps[a] @ spaces[s]
        X = solve(spaces[t], img)
        if X is None:
            raise ValueError("subspaces are not closed under the arrow actions")
        maps.append(X)
    N = Module(A, dims, maps, check=False)
    return N, ModuleMap(N, M, list(spaces), check=False)


def _complement(basis, d, F):
    """Standard basis vectors completing the column span of ``basis`` to F^d."""
    red = Reducer(basis.T._data if basis.cols else [], d, F)
    cols = []
    for j in red.free:
        cols.append(tuple(F.one if i == j else F.zero for i in range(d)))
    return Mat.from_columns(cols, d, F) if cols else Mat.zeros(d, 0, F), red


def quotient(M, spaces):
    """M / U where U is spanned per vertex by the columns of ``spaces[v]``."""
    A = M.algebra
    Q = A.quiver
    F = M.field
    n = len(M.dims)
    comps = []
    proj = []
    for v in range(n):
        C, _ = _complement(spaces[v], M.dims[v], F)
        comps.append(C)
        # coordinates of x in basis [U | C]; keep the C part
        full = hstack([spaces[v], C]) if spaces[v].cols else C
        if full.cols:
            inv = solve(full, Mat.identity(M.dims[v], F))
            proj.append(inv.submatrix(range(spaces[v].cols, full.cols), range(M.dims[v])))
        else:
            proj.append(Mat.zeros(0, M.dims[v], F))
    maps = []
    for a in range(len(Q.arrows)):
        s, t = Q.src[a], Q.tgt[a]
        maps.append(proj[t] @ M.maps[a] @ comps[s])
    N = Module(A, [c.cols for c in comps], maps, check=False)
    return N, ModuleMap(M, N, proj, check=False)


def kernel(f):
    spaces = [kernel_basis(c) for c in f.comps]
    return submodule(f.source, spaces)


def image(f):
    spaces = [column_space(c) for c in f.comps]
    return submodule(f.target, spaces)


def cokernel(f):
    spaces = [column_space(c) for c in f.comps]
    return quotient(f.target, spaces)


def factor_through_mono(g, i):
    """h with i o h = g, for i injective and im g inside im i."""
    comps = []
    for gv, iv in zip(g.comps, i.comps):
        X = solve(iv, gv)
        if X is None:
            raise ValueError("map does not factor through the monomorphism")
        comps.append(X)
    return ModuleMap(g.source, i.source, comps, check=False)


def factor_through_epi(g, q):
    """h with h o q = g, for q surjective and ker q inside ker g."""
    comps = []
    for gv, qv in zip(g.comps, q.comps):
        R = solve(qv, Mat.identity(qv.rows, qv.field))
        if R is None:
            raise ValueError("map is not surjective")
        comps.append(gv @ R)
    return ModuleMap(q.target, g.target, comps, check=False)


def solve_factorization(f, g, side="left"):
    """Find h with g o h = f (side='left') or h o g = f (side='right'); None if impossible."""
    F = f.source.field
    if side == "left":
        H = hom_space(f.source, g.source)
        cols = [(g @ h).vector for h in H.basis]
    else:
        H = hom_space(g.target, f.target)
        cols = [(h @ g).vector for h in H.basis]
    target = f.vector
    if not cols:
        return H.element([]) if not any(target) else None
    A = Mat.from_columns(cols, len(target), F)
    X = solve(A, Mat([(x,) for x in target], F, len(target), 1))
    if X is None:
        return None
    return H.element(X.column(0))


def dual(M):
    """Vector-space dual D M = Hom_k(M, k), a module over the opposite algebra."""
    D = M._cache.get("dual")
    if D is None:
        Aop = M.algebra.opposite()
        D = Module(Aop, M.dims, [m.T for m in M.maps], check=False)
        D._cache["dual"] = M
        M._cache["dual"] = D
    return D


def dual_map(f):
    return ModuleMap(dual(f.target), dual(f.source), [c.T for c in f.comps], check=False)


# -- endomorphism rings and decomposition -------------------------------

def _min_poly_coeffs(powers_fn, one, dim, F):
    """Monic minimal polynomial of an algebra element via its powers.

    ``powers_fn(k)`` returns the coordinate vector of x^k.  Coefficients are
    returned lowest degree first.
    """
    vecs = [one]
    k = 1
    while True:
        vecs.append(powers_fn(k))
        A = Mat.from_columns(vecs[:-1], dim, F)
        sol = solve(A, Mat([(x,) for x in vecs[-1]], F, dim, 1))
        if sol is not None:
            return [-c for c in sol.column(0)] + [F.one]
        k += 1


def _factor(coeffs, F):
    """Factor a polynomial (low degree first) over F: list of (monic coeffs, multiplicity)."""
    poly = _sym_poly(coeffs, F, sympy.Symbol("x"))
    out = []
    for fac, mult in poly.factor_list()[1]:
        cs = [_from_sympy(c, F) for c in fac.all_coeffs()]
        cs = [c / cs[0] for c in cs]
        out.append((list(reversed(cs)), mult))
    return out


def residue_scalar(X, h):
    """lambda with h - lambda*id nilpotent, for h in a local End(X)."""
    F = X.field
    d = X.total_dim
    if d == 0:
        return F.zero
    if F.characteristic == 0 or d % F.characteristic:
        return h.trace() / F(d)
    # char p dividing dim: read the root off the minimal polynomial
    mat = block_diag(list(h.comps), F)
    return _single_root(mat, F)


def _single_root(mat, F):
    n = mat.rows
    vec = lambda m: m.entries
    powers = [Mat.identity(n, F)]

    def pw(k):
        while len(powers) <= k:
            powers.append(powers[-1] @ mat)
        return vec(powers[k])
    coeffs = _min_poly_coeffs(pw, vec(powers[0]), n * n, F)
    facs = _factor(coeffs, F)
    if len(facs) != 1 or len(facs[0][0]) != 2:
        raise NonSplitEndomorphism("endomorphism is not scalar plus nilpotent")
    return -facs[0][0][0]


def endo_radical(M):
    """Coordinates (in hom_space(M, M)) of a basis of rad End(M), or None.

    Uses the trace form; returns None when that is not known to be exact
    (small characteristic and the trace-form kernel is not nilpotent).
    """
    E = hom_space(M, M)
    F = M.field
    key = "endo_radical"
    if key in M._cache:
        return M._cache[key]
    n = E.dim
    B = E.basis
    G = []
    for a in range(n):
        row = []
        for b in range(n):
            t = F.zero
            for ca, cb in zip(B[a].comps, B[b].comps):
                d = ca.rows
                for k in range(d):
                    rk = ca.row(k)
                    for l in range(d):
                        if rk[l]:
                            x = cb[l, k]
                            if x:
                                t += rk[l] * x
            row.append(t)
        G.append(row)
    K = kernel_basis(Mat(G, F, n, n)) if n else Mat.zeros(0, 0, F)
    J = [tuple(c) for c in K.columns()]
    if F.characteristic and F.characteristic <= M.total_dim and J:
        if not _is_nilpotent_span([E.element(c) for c in J], M):
            J = None
    M._cache[key] = J
    return J


def _is_nilpotent_span(maps, M):
    E = hom_space(M, M)
    F = M.field
    cur = [E.coordinates(f) for f in maps]
    base = maps
    for _ in range(M.total_dim + 1):
        rows, piv = row_basis(cur, E.dim, F)
        if not rows:
            return True
        elems = [E.element(r) for r in rows]
        cur = [E.coordinates(x @ y) for x in elems for y in base]
    return False


def _lift_idempotent(e, M):
    for _ in range(2 * M.total_dim.bit_length() + 4):
        e2 = e @ e
        if e2 == e:
            return e
        e3 = e2 @ e
        e = e2.scale(3) - e3.scale(2)
    raise NonSplitEndomorphism("idempotent lifting did not converge")


def _split_by_idempotent(M, e):
    F = M.field
    one = ModuleMap.identity(M)
    f = one - e
    parts = []
    for idem in (e, f):
        spaces = [column_space(c) for c in idem.comps]
        N, inc = submodule(M, spaces)
        proj = ModuleMap(M, N, [solve(s, c) for s, c in zip(spaces, idem.comps)], check=False)
        parts.append(Summand(N, inc, proj))
    return parts


@dataclass
class Summand:
    module: Module
    inclusion: ModuleMap
    projection: ModuleMap


class _SemisimpleQuotient:
    """E / J for E = End(M), J = rad E, with structure constants."""

    def __init__(self, M, J):
        self.M = M
        self.E = hom_space(M, M)
        self.F = M.field
        self.Q = QuotientSpace(self.E, J)
        self.J = J
        self.d = self.Q.dim
        reps = self.Q.representatives
        self.reps = reps
        self.table = [[self.Q.class_of(a @ b) for b in reps] for a in reps]
        self.unit = self.Q.class_of(ModuleMap.identity(M))

    def mul(self, s, t):
        F = self.F
        out = [F.zero] * self.d
        for a, sa in enumerate(s):
            if sa:
                for b, tb in enumerate(t):
                    if tb:
                        for k, c in enumerate(self.table[a][b]):
                            if c:
                                out[k] += sa * tb * c
        return tuple(out)

    def lift(self, s):
        return self.Q.element(s)

    def center(self):
        F = self.F
        d = self.d
        rows = []
        for a in range(d):
            for k in range(d):
                rows.append([self.table[b][a][k] - self.table[a][b][k] for b in range(d)])
        K = kernel_basis(Mat(rows, F, len(rows), d))
        return [tuple(c) for c in K.columns()]

    def power(self, z, k):
        out = self.unit
        for _ in range(k):
            out = self.mul(out, z)
        return out

    def central_idempotent(self):
        F = self.F
        for z in self.center():
            coeffs = _min_poly_coeffs(lambda k: self.power(z, k), self.unit, self.d, F)
            facs = _factor(coeffs, F)
            if any(len(c) > 2 for c, _ in facs):
                raise NonSplitEndomorphism("central element with an irreducible factor of degree > 1")
            roots = [-c[0] for c, _ in facs]
            if len(roots) < 2:
                continue
            lam = roots[0]
            e = self.unit
            for mu in roots[1:]:
                zm = tuple(a - mu * b for a, b in zip(z, self.unit))
                e = tuple(x / (lam - mu) for x in self.mul(e, zm))
            return e
        return None

    def isotypic_idempotent(self, rng):
        """Nontrivial idempotent of a simple E/J = M_n(k), from a left annihilator ideal."""
        F = self.F
        M = self.M
        d = self.d
        n = isqrt(d)
        if n * n != d:
            raise NonSplitEndomorphism(f"End/rad has dimension {d}, not a square")
        Jmaps = [self.E.element(c) for c in self.J]
        lifted = [self.lift(tuple(F.one if i == a else F.zero for i in range(d))) for a in range(d)]
        order = sorted(range(len(M.dims)), key=lambda v: M.dims[v])
        for v in order:
            if not M.dims[v]:
                continue
            JM = hstack([j.comps[v] for j in Jmaps], rows=M.dims[v], field=F) if Jmaps else Mat.zeros(M.dims[v], 0, F)
            JM = column_space(JM) if JM.cols else JM
            C, red = _complement(JM, M.dims[v], F)
            if not C.cols:
                continue
            # action of each basis element of E/J on the top space M_v / J M_v
            acts = []
            for f in lifted:
                img = f.comps[v] @ C
                acts.append([red.coset(col) for col in img.columns()])
            q_dim = C.cols
            cands = [tuple(F.one if i == j else F.zero for i in range(q_dim)) for j in range(q_dim)]
            for j in range(q_dim):
                for a in range(d):
                    cands.append(tuple(acts[a][j]))
            for _ in range(24):
                cands.append(tuple(F(rng.randint(-3, 3)) for _ in range(q_dim)))
            for q in cands:
                if not any(q):
                    continue
                cols = []
                for a in range(d):
                    vec = [F.zero] * q_dim
                    for j, qj in enumerate(q):
                        if qj:
                            for i, x in enumerate(acts[a][j]):
                                if x:
                                    vec[i] += qj * x
                    cols.append(vec)
                W = Mat.from_columns(cols, q_dim, F)
                if rank(W) >= d:
                    continue
                L = [tuple(c) for c in kernel_basis(W).columns()]
                e = self._right_identity(L)
                if e is not None:
                    return e
        raise NonSplitEndomorphism("could not split an isotypic endomorphism algebra")

    def _right_identity(self, L):
        F = self.F
        d = self.d
        rows = []
        rhs = []
        prods = [[self.mul(li, lk) for lk in L] for li in L]
        for i, li in enumerate(L):
            for k in range(d):
                rows.append([prods[i][m][k] for m in range(len(L))])
                rhs.append((li[k],))
        X = solve(Mat(rows, F, len(rows), len(L)), Mat(rhs, F, len(rhs), 1))
        if X is None:
            return None
        x = X.column(0)
        e = tuple(sum((c * l[k] for c, l in zip(x, L)), F.zero) for k in range(d))
        if self.mul(e, e) != e or not any(e) or e == self.unit:
            return None
        return e


def _fitting_split(M, rng):
    """Split by primary decomposition of endomorphisms (small characteristic)."""
    E = hom_space(M, M)
    F = M.field
    one = ModuleMap.identity(M)
    cands = list(E.basis)
    for _ in range(48):
        cands.append(E.element([F(rng.randint(-3, 3)) for _ in range(E.dim)]))
    lams = []
    x = sympy.Symbol("x")
    for idx, f in enumerate(cands):
        coeffs = _min_poly_coeffs(lambda k: _power(f, k).vector, one.vector, len(f.vector), F)
        facs = _factor(coeffs, F)
        if len(facs) >= 2:
            P = _sym_poly(facs[0][0], F, x) ** facs[0][1]
            R = _sym_poly(coeffs, F, x).exquo(P)
            _, t, _ = P.gcdex(R)
            # t*R(f) is the idempotent projecting onto the generalized kernel of P(f)
            return _split_by_idempotent(M, _eval_poly(t * R, f, F))
        if len(facs[0][0]) > 2:
            raise NonSplitEndomorphism("endomorphism with an irreducible factor of degree > 1")
        if idx < E.dim:
            lams.append(-facs[0][0][0])
    shifted = [f - one.scale(l) for f, l in zip(E.basis, lams)]
    if _is_nilpotent_span(shifted, M):
        return None
    raise NonSplitEndomorphism("could not find a splitting endomorphism")


def _power(f, k):
    out = ModuleMap.identity(f.source)
    for _ in range(k):
        out = out @ f
    return out


def _from_sympy(c, F):
    c = sympy.Rational(c)
    return F(Fraction(int(c.p), int(c.q)))


def _sym_poly(coeffs, F, x):
    hi = list(reversed(coeffs))
    if F.characteristic == 0:
        return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in hi], x, domain=sympy.QQ)
    return sympy.Poly([int(c) for c in hi], x, modulus=F.characteristic)


def _eval_poly(poly, f, F):
    out = ModuleMap.zero(f.source, f.source)
    one = ModuleMap.identity(f.source)
    for c in poly.all_coeffs():
        out = out @ f + one.scale(_from_sympy(c, F))
    return out


def _split(M, rng):
    """Two complementary summands of M, or None if M is indecomposable."""
    E = hom_space(M, M)
    if E.dim <= 1:
        return None
    J = endo_radical(M)
    if J is None:
        return _fitting_split(M, rng)
    if E.dim - len(J) == 1:
        return None
    S = _SemisimpleQuotient(M, J)
    e = S.central_idempotent()
    if e is None:
        e = S.isotypic_idempotent(rng)
    idem = _lift_idempotent(S.lift(e), M)
    return _split_by_idempotent(M, idem)


def is_indecomposable(M):
    if M.total_dim == 0:
        return False
    return _split(M, random.Random(_seed)) is None


def decompose_summands(M, seed=None):
    """Indecomposable summands with inclusions/projections (not grouped)."""
    if seed is None:
        seed = _seed
    key = ("summands", seed)
    if key in M._cache:
        return M._cache[key]
    rng = random.Random(seed)
    out = []
    todo = [Summand(M, ModuleMap.identity(M), ModuleMap.identity(M))]
    while todo:
        s = todo.pop(0)
        if s.module.total_dim == 0:
            continue
        parts = _split(s.module, rng)
        if parts is None:
            out.append(s)
            continue
        for p in parts:
            todo.append(Summand(p.module, s.inclusion @ p.inclusion, p.projection @ s.projection))
    out.sort(key=lambda s: (s.module.total_dim, s.module.dims))
    M._cache[key] = out
    return out


def _local_iso(X, Y):
    """Isomorphism X -> Y between indecomposables, or None."""
    if X.dims != Y.dims:
        return None
    H = hom_space(X, Y)
    K = hom_space(Y, X)
    F = X.field
    d = X.total_dim
    fast = F.characteristic == 0 or d % F.characteristic
    for f in H.basis:
        for g in K.basis:
            if fast:
                t = F.zero
                for gc, fc in zip(g.comps, f.comps):
                    for k in range(gc.rows):
                        rk = gc.row(k)
                        for l in range(gc.cols):
                            if rk[l]:
                                x = fc[l, k]
                                if x:
                                    t += rk[l] * x
                nonzero = bool(t)
            else:
                nonzero = bool(residue_scalar(X, g @ f))
            if nonzero:
                return f
    return None


def decompose(M, seed=None):
    """Isomorphism classes of indecomposable summands with multiplicities."""
    classes = []
    for s in decompose_summands(M, seed):
        for c in classes:
            if _local_iso(c[0], s.module) is not None:
                c[1] += 1
                break
        else:
            classes.append([s.module, 1])
    if len(classes) == 1 and classes[0][1] == 1 and classes[0][0].dims == M.dims:
        return [(M, 1)]
    return [(m, k) for m, k in classes]


def find_isomorphism(M, N, seed=None):
    """An isomorphism M -> N, or None."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    if M.dims != N.dims:
        return None
    if M is N:
        return ModuleMap.identity(M)
    sm = decompose_summands(M, seed)
    sn = list(decompose_summands(N, seed))
    if len(sm) != len(sn):
        return None
    total = None
    used = [False] * len(sn)
    for a in sm:
        for j, b in enumerate(sn):
            if used[j]:
                continue
            phi = _local_iso(a.module, b.module)
            if phi is not None:
                used[j] = True
                term = b.inclusion @ phi @ a.projection
                total = term if total is None else total + term
                break
        else:
            return None
    if total is None:
        return ModuleMap.zero(M, N)
    return total


def is_isomorphic(M, N, seed=None):
    return find_isomorphism(M, N, seed) is not None


def radical_endomorphisms(X):
    """Basis of rad End(X) for an indecomposable X (kernel of the residue scalar)."""
    key = "rad_end"
    if key in X._cache:
        return X._cache[key]
    E = hom_space(X, X)
    F = X.field
    lam = [residue_scalar(X, f) for f in E.basis]
    K = kernel_basis(Mat([lam], F, 1, E.dim)) if E.dim else Mat.zeros(0, 0, F)
    out = [E.element(c) for c in K.columns()]
    X._cache[key] = out
    return out


def base_change(M, mats):
    """Module isomorphic to M via invertible per-vertex matrices g_v, with the map M -> new."""
    from .exactla import inverse
    Q = M.algebra.quiver
    maps = []
    for a in range(len(Q.arrows)):
        s, t = Q.src[a], Q.tgt[a]
        maps.append(mats[t] @ M.maps[a] @ inverse(mats[s]))
    N = Module(M.algebra, M.dims, maps, check=False)
    return N, ModuleMap(M, N, list(mats), check=False)


def random_invertible(n, F, rng):
    while True:
        m = Mat([tuple(F(rng.randint(-2, 2)) for _ in range(n)) for _ in range(n)], F, n, n)
        if rank(m) == n:
            return m
