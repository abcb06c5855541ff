"""Radicals, covers, envelopes, syzygies, Ext, stable Hom and approximations."""

from __future__ import annotations

from dataclasses import dataclass

from .exactla import Mat, hstack, solve, solve_vector
from .repmod import (
    Biproduct, Module, ModuleMap, QuotientSpace, ShortExactSeq, cokernel, direct_sum, dual, dual_map,
    factor_through_epi, factor_through_mono, hom_space, kernel, quotient, radical_endomorphisms,
    solve_factorization, submodule,
)
from .exactla import column_space, kernel_basis


# -- radical, top, socle ------------------------------------------------

def radical(M):
    """rad M with its inclusion: the sum of the images of all arrows."""
    Q = M.algebra.quiver
    F = M.field
    spaces = []
    for v in range(len(M.dims)):
        ims = [M.maps[a] for a in Q.in_arrows[v]]
        if ims and M.dims[v]:
            spaces.append(column_space(hstack(ims)))
        else:
            spaces.append(Mat.zeros(M.dims[v], 0, F))
    return submodule(M, spaces)


def top(M):
    """M / rad M with the projection."""
    R, inc = radical(M)
    return quotient(M, list(inc.comps))


def socle(M):
    """Largest semisimple submodule: common kernel of all outgoing arrows."""
    Q = M.algebra.quiver
    F = M.field
    spaces = []
    for v in range(len(M.dims)):
        outs = [M.maps[a] for a in Q.out_arrows[v]]
        if outs:
            from .exactla import vstack
            spaces.append(kernel_basis(vstack(outs)))
        else:
            spaces.append(Mat.identity(M.dims[v], F))
    return submodule(M, spaces)


def loewy_layers(M):
    """Dimension vectors of rad^i M / rad^(i+1) M."""
    layers = []
    cur = M
    while cur.total_dim:
        R, _ = radical(cur)
        layers.append(tuple(a - b for a, b in zip(cur.dims, R.dims)))
        cur = R
    return layers


def loewy_label(M):
    """Composition-series style label such as ``2/34/5``."""
    V = M.algebra.quiver.vertices
    sep = "" if all(len(v) == 1 for v in V) else ","
    layers = loewy_layers(M)
    if not layers:
        return "0"
    return "/".join(sep.join(v for v, d in zip(V, layer) for _ in range(d)) for layer in layers)


# -- projectives and injectives ----------------------------------------

def projective(A, v):
    """Indecomposable projective P_v = e_v A (paths starting at vertex index v)."""
    key = ("P", v)
    P = A._cache.get(key)
    if P is not None:
        return P
    Q = A.quiver
    F = A.field
    n = len(Q.vertices)
    dims = [len(A.paths_between(v, w)) for w in range(n)]
    pos = {i: j for w in range(n) for j, i in enumerate(A.paths_between(v, w))}
    maps = []
    for a in range(len(Q.arrows)):
        s, t = Q.src[a], Q.tgt[a]
        cols = []
        arrow_path = Q.path([Q.arrows[a].name])
        for i in A.paths_between(v, s):
            prod = A.reduce(A.basis[i] * arrow_path)
            col = [F.zero] * dims[t]
            for k, c in prod.items():
                col[pos[k]] = c
            cols.append(col)
        maps.append(Mat.from_columns(cols, dims[t], F) if cols else Mat.zeros(dims[t], 0, F))
    P = Module(A, dims, maps, name=f"P{Q.vertices[v]}", check=False)
    A._cache[key] = P
    return P


def injective(A, v):
    """Indecomposable injective I_v = D(P_v over the opposite algebra)."""
    key = ("I", v)
    I = A._cache.get(key)
    if I is None:
        I = dual(projective(A.opposite(), v))
        A._cache[key] = I
    return I


def simple(A, v):
    key = ("S", v)
    S = A._cache.get(key)
    if S is None:
        dims = [1 if w == v else 0 for w in range(len(A.quiver.vertices))]
        S = Module(A, dims, name=f"S{A.quiver.vertices[v]}", check=False)
        A._cache[key] = S
    return S


class ProjectiveSum:
    """P = P_{v_1} + ... + P_{v_r} with bookkeeping for generators."""

    def __init__(self, A, vertices):
        self.algebra = A
        self.vertices = tuple(vertices)
        n = len(A.quiver.vertices)
        parts = [projective(A, v) for v in self.vertices]
        self.module = direct_sum(parts, algebra=A).module if len(parts) != 1 else parts[0]
        self.offsets = []
        run = [0] * n
        for P in parts:
            self.offsets.append(tuple(run))
            run = [r + d for r, d in zip(run, P.dims)]

    def __len__(self):
        return len(self.vertices)

    def generator_index(self, k):
        # the trivial path is the first basis path at its own vertex
        return self.offsets[k][self.vertices[k]]

    def map_to(self, N, images):
        """The map sending the k-th generator to ``images[k]`` in N_{v_k}."""
        A = self.algebra
        F = A.field
        n = len(A.quiver.vertices)
        comps = []
        for w in range(n):
            blocks = []
            for k, v in enumerate(self.vertices):
                y = images[k]
                cols = [N.path_matrix(A.basis[i]).apply(y) for i in A.paths_between(v, w)]
                if cols:
                    blocks.append(Mat.from_columns(cols, N.dims[w], F))
            comps.append(hstack(blocks) if blocks else Mat.zeros(N.dims[w], 0, F))
        return ModuleMap(self.module, N, comps, check=False)

    def generator_images(self, f):
        """Images of the generators under a map out of this sum."""
        return [f.comps[v].column(self.generator_index(k)) for k, v in enumerate(self.vertices)]

    def hom_basis(self, N):
        """Basis of Hom(P, N) via Yoneda: one generator mapped to one basis vector."""
        F = self.algebra.field
        out = []
        for k, v in enumerate(self.vertices):
            for j in range(N.dims[v]):
                images = [tuple(F.zero for _ in range(N.dims[u])) for u in self.vertices]
                images[k] = tuple(F.one if i == j else F.zero for i in range(N.dims[v]))
                out.append(self.map_to(N, images))
        return out

    def components(self, f, other):
        """Elements x[k][l] in e_{v_k} A e_{u_l} describing f: self -> other.

        ``k`` indexes summands of ``other`` (vertices v_k) and ``l`` summands of
        self (vertices u_l); the generator of summand l maps to sum_k x[k][l].
        """
        A = self.algebra
        gens = self.generator_images(f)
        out = [[None] * len(self.vertices) for _ in other.vertices]
        for l, u in enumerate(self.vertices):
            y = gens[l]
            for k, v in enumerate(other.vertices):
                off = other.offsets[k][u]
                elem = {}
                for j, i in enumerate(A.paths_between(v, u)):
                    c = y[off + j]
                    if c:
                        elem[i] = c
                out[k][l] = elem
        return out


def projective_sum(A, vertices):
    key = ("Psum", tuple(vertices))
    S = A._cache.get(key)
    if S is None:
        S = A._cache[key] = ProjectiveSum(A, vertices)
    return S


def op_element(A, elem):
    """The image x^op in the opposite algebra (reversed paths, renormalized)."""
    Aop = A.opposite()
    Q = Aop.quiver
    out = {}
    for i, c in elem.items():
        p = A.basis[i]
        from .algebra import Path
        rp = Path(p.target, p.source, tuple(reversed(p.arrows)))
        for k, x in Aop.reduce(rp).items():
            out[k] = out.get(k, A.field.zero) + c * x
    return {k: v for k, v in out.items() if v}


def dual_projective_map(src, tgt, f):
    """Hom(-, A) applied to f: src -> tgt between projective sums.

    Returns the map tgt* -> src* between projective sums over the opposite algebra.
    """
    A = src.algebra
    Aop = A.opposite()
    F = A.field
    x = src.components(f, tgt)
    dsrc = projective_sum(Aop, src.vertices)
    dtgt = projective_sum(Aop, tgt.vertices)
    images = []
    for k, v in enumerate(tgt.vertices):
        vec = [F.zero] * dsrc.module.dims[v]
        for l, u in enumerate(src.vertices):
            off = dsrc.offsets[l][v]
            paths = Aop.paths_between(u, v)
            pos = {i: j for j, i in enumerate(paths)}
            for i, c in op_element(A, x[k][l]).items():
                vec[off + pos[i]] += c
        images.append(tuple(vec))
    return dtgt, dsrc, dtgt.map_to(dsrc.module, images)


@dataclass
class Cover:
    sum: ProjectiveSum
    map: ModuleMap

    @property
    def module(self):
        return self.sum.module


def projective_cover(M):
    """Minimal projective cover P(M) -> M, with the summand vertices recorded."""
    c = M._cache.get("cover")
    if c is not None:
        return c
    A = M.algebra
    F = M.field
    R, inc = radical(M)
    from .exactla import Reducer
    vertices = []
    images = []
    for v in range(len(M.dims)):
        red = Reducer(inc.comps[v].T._data if inc.comps[v].cols else [], M.dims[v], F)
        for j in red.free:
            vertices.append(v)
            images.append(tuple(F.one if i == j else F.zero for i in range(M.dims[v])))
    S = projective_sum(A, vertices)
    c = Cover(S, S.map_to(M, images))
    M._cache["cover"] = c
    return c


@dataclass
class Presentation:
    """P1 -> P0 -> M -> 0, minimal; K = kernel of the cover."""

    module: Module
    cover0: Cover
    kernel: Module
    kernel_inclusion: ModuleMap
    cover1: Cover

    @property
    def p1(self):
        return self.kernel_inclusion @ self.cover1.map

    @property
    def p0(self):
        return self.cover0.map

    minimal = True


def presentation(M):
    p = M._cache.get("presentation")
    if p is None:
        c0 = projective_cover(M)
        K, inc = kernel(c0.map)
        c1 = projective_cover(K)
        p = M._cache["presentation"] = Presentation(M, c0, K, inc, c1)
    return p


@dataclass
class Envelope:
    module: Module
    map: ModuleMap
    dual_cover: Cover


def injective_envelope(M):
    """Minimal injective envelope M -> I(M), dual to a cover over the opposite algebra."""
    e = M._cache.get("envelope")
    if e is None:
        c = projective_cover(dual(M))
        eps = dual_map(c.map)
        e = M._cache["envelope"] = Envelope(eps.target, eps, c)
    return e


def syzygy(M, i=1):
    for _ in range(i):
        M = presentation(M).kernel
    return M


def cosyzygy(M, i=1):
    for _ in range(i):
        M = cosyzygy_data(M)[0]
    return M


def cosyzygy_data(M):
    """(Omega-bar M, projection I(M) -> Omega-bar M)."""
    d = M._cache.get("cosyzygy")
    if d is None:
        e = injective_envelope(M)
        d = M._cache["cosyzygy"] = cokernel(e.map)
    return d


def is_projective(M):
    return projective_cover(M).module.total_dim == M.total_dim


def is_injective(M):
    return injective_envelope(M).module.total_dim == M.total_dim


def lift_from_projective(psum, f, surj):
    """g: psum.module -> X with surj o g = f, for f: psum.module -> N and surj: X ->> N."""
    images = []
    for k, y in enumerate(psum.generator_images(f)):
        v = psum.vertices[k]
        x = solve_vector(surj.comps[v], y)
        if x is None:
            raise ValueError("map does not lift: target map is not surjective onto the image")
        images.append(x)
    return psum.map_to(surj.source, images)


def syzygy_map(f):
    """Omega f: Omega M -> Omega M' induced by lifting f to projective covers."""
    pm, pn = presentation(f.source), presentation(f.target)
    u0 = lift_from_projective(pm.cover0.sum, f @ pm.cover0.map, pn.cover0.map)
    return factor_through_mono(u0 @ pm.kernel_inclusion, pn.kernel_inclusion)


def injective_extension(f):
    """g: I(M) -> I(M') with g o eps_M = eps_M' o f, for f: M -> M'."""
    em, en = injective_envelope(f.source), injective_envelope(f.target)
    # dualize: lift D f o cover(D M') through cover(D M)
    Dg = lift_from_projective(en.dual_cover.sum, dual_map(f) @ en.dual_cover.map, em.dual_cover.map)
    return dual_map(Dg)


def cosyzygy_map(f):
    """Omega-bar f induced on the cokernels of the injective envelopes."""
    g = injective_extension(f)
    _, qm = cosyzygy_data(f.source)
    _, qn = cosyzygy_data(f.target)
    return factor_through_epi(qn @ g, qm)


# -- Ext ------------------------------------------------------------------

class ExtSpace:
    """Ext^i(M, N) as Hom(Omega^i M, N) modulo maps factoring through P(Omega^(i-1) M)."""

    def __init__(self, M, N, degree=1):
        if degree < 1:
            raise ValueError("Ext degree must be >= 1")
        self.source = M
        self.target = N
        self.degree = degree
        base = syzygy(M, degree - 1)
        self.base = base
        pres = presentation(base)
        self.presentation = pres
        H = hom_space(pres.kernel, N)
        inc = pres.kernel_inclusion
        cob = [H.coordinates(g @ inc) for g in pres.cover0.sum.hom_basis(N)]
        self.quotient = QuotientSpace(H, cob)

    @property
    def dim(self):
        return self.quotient.dim

    def __len__(self):
        return self.dim

    @property
    def representatives(self):
        """Maps Omega^i M -> N representing the basis classes."""
        return self.quotient.representatives

    def class_of(self, h):
        return self.quotient.class_of(h)

    def element(self, coords):
        return self.quotient.element(coords)

    def sequence(self, k=None, coords=None):
        """Representative 0 -> N -> E -> base -> 0 (degree 1: base = M) of a class."""
        if coords is None:
            coords = [1 if j == k else 0 for j in range(self.dim)]
        coords = [self.source.field(c) for c in coords]
        h = self.element(coords)
        return extension_sequence(self.presentation, h)


def extension_sequence(pres, h):
    """Push the sequence 0 -> K -> P0 -> M -> 0 out along h: K -> N."""
    data = _pushout_data(pres.kernel_inclusion, h)
    W, q, bp = data
    i = q @ bp.injections[1]
    d = factor_through_epi(pres.cover0.map @ bp.projections[0], q)
    return ShortExactSeq(i, d)


def ext(M, N, i=1):
    key = ("ext", N, i)
    E = M._cache.get(key)
    if E is None:
        E = M._cache[key] = ExtSpace(M, N, i)
    return E


def ext_dim(M, N, i=1):
    return ext(M, N, i).dim


def ext_map_source(f, X):
    """Ext^1(f, X): Ext^1(M', X) -> Ext^1(M, X) for f: M -> M', as a matrix."""
    Em, En = ext(f.source, X), ext(f.target, X)
    F = X.field
    om = syzygy_map(f)
    cols = [Em.class_of(h @ om) for h in En.representatives]
    return Mat.from_columns(cols, Em.dim, F) if cols else Mat.zeros(Em.dim, 0, F)


def ext_map_target(g, M):
    """Ext^1(M, g): Ext^1(M, X) -> Ext^1(M, Y) for g: X -> Y, as a matrix."""
    Ex, Ey = ext(M, g.source), ext(M, g.target)
    F = M.field
    cols = [Ey.class_of(g @ h) for h in Ex.representatives]
    return Mat.from_columns(cols, Ey.dim, F) if cols else Mat.zeros(Ey.dim, 0, F)


# -- stable and costable Hom ---------------------------------------------

def stable_hom(M, N):
    """Hom(M, N) modulo maps factoring through a projective (via P(N) -> N)."""
    key = ("stable", N)
    S = M._cache.get(key)
    if S is None:
        H = hom_space(M, N)
        pi = projective_cover(N).map
        sub = [H.coordinates(pi @ g) for g in hom_space(M, pi.source).basis]
        S = M._cache[key] = QuotientSpace(H, sub)
    return S


def costable_hom(M, N):
    """Hom(M, N) modulo maps factoring through an injective (via M -> I(M))."""
    key = ("costable", N)
    S = M._cache.get(key)
    if S is None:
        H = hom_space(M, N)
        eps = injective_envelope(M).map
        sub = [H.coordinates(g @ eps) for g in hom_space(eps.target, N).basis]
        S = M._cache[key] = QuotientSpace(H, sub)
    return S


def ideal_hom(M, N, objects):
    """Hom(M, N) modulo the span of compositions through the given modules."""
    H = hom_space(M, N)
    sub = []
    for C in objects:
        first = hom_space(M, C).basis
        second = hom_space(C, N).basis
        for b in second:
            for a in first:
                sub.append(H.coordinates(b @ a))
    return QuotientSpace(H, sub)


# -- approximations -------------------------------------------------------

def radical_maps(X, Y):
    """Basis of rad(X, Y) for indecomposables X, Y (all maps unless X is Y)."""
    if X is Y:
        return radical_endomorphisms(X)
    return hom_space(X, Y).basis


@dataclass
class Approximation:
    module: Module
    map: ModuleMap
    parts: list  # (object index, component map) per summand, in order

    @property
    def multiplicities(self):
        out = {}
        for i, _ in self.parts:
            out[i] = out.get(i, 0) + 1
        return out


def _assemble_right(X, objects, picks):
    mods = [objects[i] for i, _ in picks]
    if not mods:
        Z = Module(X.algebra, [0] * len(X.dims), check=False)
        return Approximation(Z, ModuleMap.zero(Z, X), [])
    bp = direct_sum(mods, algebra=X.algebra)
    total = None
    for (i, f), p in zip(picks, bp.projections):
        term = f @ p
        total = term if total is None else total + term
    return Approximation(bp.module, total, picks)


def _assemble_left(X, objects, picks):
    mods = [objects[i] for i, _ in picks]
    if not mods:
        Z = Module(X.algebra, [0] * len(X.dims), check=False)
        return Approximation(Z, ModuleMap.zero(X, Z), [])
    bp = direct_sum(mods, algebra=X.algebra)
    total = None
    for (i, f), e in zip(picks, bp.injections):
        term = e @ f
        total = term if total is None else total + term
    return Approximation(bp.module, total, picks)


def right_approximation(X, objects):
    """Minimal right add(objects)-approximation C_X -> X.

    ``objects`` are pairwise non-isomorphic indecomposables.
    """
    objects = list(objects)
    for i, C in enumerate(objects):
        if C is X:
            return Approximation(X, ModuleMap.identity(X), [(i, ModuleMap.identity(X))])
    picks = []
    for i, C in enumerate(objects):
        H = hom_space(C, X)
        if not H.dim:
            continue
        sub = []
        for l, D in enumerate(objects):
            G = hom_space(D, X).basis
            if not G:
                continue
            for r in radical_maps(C, D):
                for g in G:
                    sub.append(H.coordinates(g @ r))
        Qs = QuotientSpace(H, sub)
        for f in Qs.representatives:
            picks.append((i, f))
    return _assemble_right(X, objects, picks)


def left_approximation(X, objects):
    """Minimal left add(objects)-approximation X -> C^X."""
    objects = list(objects)
    for i, C in enumerate(objects):
        if C is X:
            return Approximation(X, ModuleMap.identity(X), [(i, ModuleMap.identity(X))])
    picks = []
    for i, C in enumerate(objects):
        H = hom_space(X, C)
        if not H.dim:
            continue
        sub = []
        for l, D in enumerate(objects):
            G = hom_space(X, D).basis
            if not G:
                continue
            for r in radical_maps(D, C):
                for g in G:
                    sub.append(H.coordinates(r @ g))
        Qs = QuotientSpace(H, sub)
        for f in Qs.representatives:
            picks.append((i, f))
    return _assemble_left(X, objects, picks)


def in_add(X, objects):
    """X in add(objects): the identity factors through the right approximation."""
    if X.total_dim == 0:
        return True
    appr = right_approximation(X, objects)
    if appr.module is X:
        return True
    return solve_factorization(ModuleMap.identity(X), appr.map, side="left") is not None


# -- pushout and pullback -------------------------------------------------

def _pushout_data(f, g):
    X = f.source
    bp = direct_sum([f.target, g.target], algebra=X.algebra)
    h = bp.injections[0] @ f - bp.injections[1] @ g
    W, q = cokernel(h)
    return W, q, bp


def pushout(f, g):
    """For f: X -> Y, g: X -> Z return (Y -> W, Z -> W)."""
    if f.source is not g.source:
        raise ValueError("pushout needs a common source")
    W, q, bp = _pushout_data(f, g)
    return q @ bp.injections[0], q @ bp.injections[1]


def pullback(f, g):
    """For f: Y -> W, g: Z -> W return (X -> Y, X -> Z)."""
    if f.target is not g.target:
        raise ValueError("pullback needs a common target")
    bp = direct_sum([f.source, g.source], algebra=f.source.algebra)
    h = f @ bp.projections[0] - g @ bp.projections[1]
    X, inc = kernel(h)
    return bp.projections[0] @ inc, bp.projections[1] @ inc
