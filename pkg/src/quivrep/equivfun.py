"""Quotient categories, stable endomorphism algebras and the functors F, G, mu.

Conventions.  Objects of an additive quotient category are indecomposable
modules.  For the algebra Gamma of a quotient category, the vertex i stands
for the object M_i and e_j Gamma e_i is identified with Hom(M_i, M_j), so a
map M_i -> M_j is read as a Gamma-path from j to i.  Right Gamma-modules are
then exactly the contravariant functors on the quotient category: the value
at i is C(M_i) and the matrix of the arrow for f: M_i -> M_j is C(f).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Quiver, Relation, build_algebra, ideal_generators
from .artheory import ar_quiver, tau_minus, tau_minus_map, tau_n
from .cluster import (
    Subcategory, compute_M_L, compute_M_R, is_rigid, left_resolution, omega_bar_M, perp_left, right_resolution,
)
from .errors import VerificationFailed, XNotInML, XNotInMR
from .exactla import Mat, Reducer, kernel_basis, rank, solve_vector
from .homology import (
    cosyzygy, cosyzygy_map, costable_hom, ext, ext_map_source, ext_map_target, ideal_hom, injective,
    lift_from_projective, presentation, projective, projective_cover, pullback, right_approximation,
    stable_hom,
)
from .repmod import (
    Module, ModuleMap, _local_iso, combine, factor_through_mono, find_isomorphism, hom_space,
    is_isomorphic, radical_endomorphisms,
)


def quotient_hom(X, Y, ideal):
    """Hom(X, Y) modulo maps factoring through add(ideal).

    Compositions through a single copy of each ideal indecomposable already
    span the ideal: a map through E^m is a sum of maps through the copies.
    """
    mods = ideal.modules if isinstance(ideal, Subcategory) else list(ideal)
    key = ("ideal_hom", Y, tuple(id(m) for m in mods))
    Q = X._cache.get(key)
    if Q is None:
        Q = X._cache[key] = ideal_hom(X, Y, mods)
    return Q


class QuotientCategory:
    """Full subcategory on ``objects`` (indecomposables) modulo maps through ``ideal``."""

    def __init__(self, objects, ideal, name=""):
        self.all_objects = list(objects)
        self.ideal = ideal.modules if isinstance(ideal, Subcategory) else list(ideal)
        self.name = name
        self.objects = [(n, X) for n, X in self.all_objects if quotient_hom(X, X, self.ideal).dim]
        self._rad = {}

    def __len__(self):
        return len(self.objects)

    @property
    def names(self):
        return [n for n, _ in self.objects]

    @property
    def modules(self):
        return [X for _, X in self.objects]

    def index(self, name):
        return self.names.index(name)

    def hom(self, i, j):
        return quotient_hom(self.objects[i][1], self.objects[j][1], self.ideal)

    def radical(self, i, j):
        """Maps whose classes span rad(M_i, M_j) in the quotient."""
        r = self._rad.get((i, j))
        if r is None:
            Q = self.hom(i, j)
            if i == j:
                X = self.objects[i][1]
                cands = radical_endomorphisms(X)
                red = Reducer([], Q.dim, X.field)
                r = []
                for f in cands:
                    c = Q.class_of(f)
                    if red.add(c):
                        r.append(f)
            else:
                r = list(Q.representatives)
            self._rad[(i, j)] = r
        return r

    def radical_squared(self, i, j):
        """Classes (coordinates in hom(i, j)) spanning rad^2(M_i, M_j)."""
        Q = self.hom(i, j)
        out = []
        for k in range(len(self.objects)):
            for a in self.radical(i, k):
                for b in self.radical(k, j):
                    out.append(Q.class_of(b @ a))
        return out

    def irreducible(self, i, j):
        """Maps M_i -> M_j whose classes form a basis of rad / rad^2."""
        Q = self.hom(i, j)
        F = self.objects[i][1].field
        red = Reducer(self.radical_squared(i, j), Q.dim, F)
        picks = []
        for f in self.radical(i, j):
            if red.add(Q.class_of(f)):
                picks.append(f)
        return picks

    def gabriel_quiver(self):
        """{(i, j): number of irreducible maps M_i -> M_j} over the nonzero objects."""
        out = {}
        for i in range(len(self.objects)):
            for j in range(len(self.objects)):
                m = len(self.irreducible(i, j))
                if m:
                    out[(i, j)] = m
        return out


class GammaAlgebra:
    """The algebra of a quotient category as a bound quiver algebra."""

    def __init__(self, category: QuotientCategory, side="stable"):
        self.category = category
        self.side = side
        objs = category.objects
        self.names = [n for n, _ in objs]
        self.modules = [X for _, X in objs]
        k = len(objs)
        arrows = []
        self.arrow_maps = []  # the map M_i -> M_j behind each Gamma arrow j -> i
        for i in range(k):
            for j in range(k):
                for f in category.irreducible(i, j):
                    arrows.append((f"g{len(arrows) + 1}", self.names[j], self.names[i]))
                    self.arrow_maps.append((i, j, f))
        self.quiver = Q = Quiver(self.names, arrows)
        F = objs[0][1].field if objs else None
        self.field = F
        rels, L = self._relations()
        self.loewy_bound = L
        self.relations = rels
        self.algebra = build_algebra(Q, rels, max_len=max(L, 1), field=F, name=f"Gamma({side})") if objs else None
        expect = sum(category.hom(i, j).dim for i in range(k) for j in range(k))
        if self.algebra is not None and self.algebra.dimension != expect:
            raise VerificationFailed(
                f"Gamma has dimension {self.algebra.dimension} but the quotient Hom spaces total {expect}")
        self._eval_cache = {}

    @property
    def dimension(self):
        return 0 if self.algebra is None else self.algebra.dimension

    def evaluate(self, path):
        """The composite map M_w -> M_u of a Gamma-path from u to w."""
        f = None
        for a in reversed(path.arrows):
            g = self.arrow_maps[a][2]
            f = g if f is None else g @ f
        if f is None:
            X = self.modules[path.source]
            return ModuleMap.identity(X)
        return f

    def _class(self, path):
        # a path u -> w evaluates in Hom(M_w, M_u)
        return self.category.hom(path.target, path.source).class_of(self.evaluate(path))

    def _relations(self):
        Q = self.quiver
        F = self.field
        k = len(Q.vertices)
        if not k:
            return [], 1
        L = 1
        while True:
            longest = [p for v in range(k) for p in Q.paths_from(v, L) if len(p) == L]
            if all(not any(self._class(p)) for p in longest):
                break
            L += 1
        cands = []
        for u in range(k):
            for w in range(k):
                ps = [p for p in Q.paths_from(u, L) if p.target == w and len(p) >= 2]
                if not ps:
                    continue
                ps.sort(key=lambda p: p.key, reverse=True)
                dim = self.category.hom(w, u).dim
                cols = [self._class(p) for p in ps]
                E = Mat.from_columns(cols, dim, F) if dim else Mat.zeros(0, len(ps), F)
                K = kernel_basis(E)
                red = Reducer([K.column(c) for c in range(K.cols)], len(ps), F)
                for row in red.rows:
                    terms = [(c, ps[t].arrows) for t, c in enumerate(row) if c]
                    cands.append((u, w, terms))
        cands.sort(key=lambda r: (min(len(a) for _, a in r[2]), max(len(a) for _, a in r[2])))
        chosen = ideal_generators(Q, cands, L, F)
        rels = [Relation([(c, [Q.arrows[x].name for x in a]) for c, a in terms]) for _, _, terms in chosen]
        return rels, L

    def element_of(self, i, j, f):
        """The element of e_j Gamma e_i (a combination of paths j -> i) representing f: M_i -> M_j."""
        A = self.algebra
        Qh = self.category.hom(i, j)
        target = Qh.class_of(f)
        idx = A.paths_between(j, i)
        if not idx:
            return {}
        E = Mat.from_columns([self._class(A.basis[b]) for b in idx], Qh.dim, self.field)
        x = solve_vector(E, target)
        return {b: c for b, c in zip(idx, x) if c}

    def gabriel_quiver(self):
        """Quiver of the category in map orientation: (i, j) counts irreducible M_i -> M_j."""
        out = {}
        for i, j, _ in self.arrow_maps:
            out[(i, j)] = out.get((i, j), 0) + 1
        return out


def stable_endo_algebra(C: Subcategory, side="stable"):
    """Gamma for the stable (modulo projectives) or costable (modulo injectives) category of C."""
    A = C.algebra
    n = len(A.quiver.vertices)
    if side == "stable":
        ideal = [projective(A, v) for v in range(n)]
    elif side == "costable":
        ideal = [injective(A, v) for v in range(n)]
    else:
        raise ValueError("side must be 'stable' or 'costable'")
    return GammaAlgebra(QuotientCategory(C.members, ideal, side), side)


@dataclass
class FunctorModule:
    """A right Gamma-module given by the values of a contravariant functor."""

    gamma: GammaAlgebra
    module: Module
    source: object = None

    @property
    def values(self):
        if self.module is None:
            return {}
        return dict(zip(self.gamma.names, self.module.dims))

    @property
    def total_dim(self):
        return 0 if self.module is None else self.module.total_dim

    def is_zero(self):
        return self.total_dim == 0


def _functor_module(gamma, dims, action, source=None):
    """Build the Gamma-module with value dims and arrow matrices action(i, j, f)."""
    if gamma.algebra is None:
        return FunctorModule(gamma, None, source)
    maps = [action(i, j, f) for i, j, f in gamma.arrow_maps]
    return FunctorModule(gamma, Module(gamma.algebra, dims, maps), source)


def functor_F(X, gamma, C=None, check=True):
    """F(X) = Ext^1(-, X) restricted to the stable category of C."""
    if check and C is not None and left_resolution(X, C) is None:
        raise XNotInML("F is defined on M_L only")
    dims = [ext(M, X).dim for M in gamma.modules]
    return _functor_module(gamma, dims, lambda i, j, f: ext_map_source(f, X), X)


def functor_F_map(g, FX, FY):
    """F(g): F(X) -> F(Y) for g: X -> Y."""
    comps = [ext_map_target(g, M) for M in FX.gamma.modules]
    return ModuleMap(FX.module, FY.module, comps)


def _precompose(X):
    def action(i, j, f):
        src, tgt = costable_hom(f.target, X), costable_hom(f.source, X)
        cols = [tgt.class_of(h @ f) for h in src.representatives]
        return Mat.from_columns(cols, tgt.dim, X.field) if cols else Mat.zeros(tgt.dim, 0, X.field)
    return action


def functor_G(X, gamma, C=None, check=True):
    """G(X) = costable Hom(-, X) restricted to the costable category of C."""
    if check and C is not None and right_resolution(X, C) is None:
        raise XNotInMR("G is defined on M_R only")
    dims = [costable_hom(M, X).dim for M in gamma.modules]
    return _functor_module(gamma, dims, _precompose(X), X)


def functor_G_map(g, GX, GY):
    """G(g): G(X) -> G(Y) for g: X -> Y, by postcomposition."""
    comps = []
    for M in GX.gamma.modules:
        src, tgt = costable_hom(M, g.source), costable_hom(M, g.target)
        cols = [tgt.class_of(g @ h) for h in src.representatives]
        comps.append(Mat.from_columns(cols, tgt.dim, M.field) if cols else Mat.zeros(tgt.dim, 0, M.field))
    return ModuleMap(GX.module, GY.module, comps)


# -- pseudokernels ----------------------------------------------------------

@dataclass
class Pseudokernel:
    map: ModuleMap  # C_L -> C1
    approximation: object


def pseudokernel(f, C: Subcategory):
    """A map k': C_L -> C1 in add C whose stable class is a pseudokernel of f: C1 -> C0.

    Pull back the projective cover of C0 along f and take a right
    C-approximation of the pullback.
    """
    cover = projective_cover(f.target).map
    to_c1, _ = pullback(f, cover)
    appr = right_approximation(to_c1.source, C.modules)
    return Pseudokernel(to_c1 @ appr.map, appr)


def check_pseudokernel(f, pk, C: Subcategory):
    """Every stable map Z -> C1 killed by f factors through pk, for each member Z; returns a failing Z or None."""
    C1 = f.source
    CL = pk.map.source
    for name, Z in C.members:
        H = stable_hom(Z, C1)
        if not H.dim:
            continue
        tgt = stable_hom(Z, f.target)
        # stable maps h with f h = 0: kernel of the induced map
        cols = [tgt.class_of(f @ h) for h in H.representatives]
        Kf = kernel_basis(Mat.from_columns(cols, tgt.dim, Z.field)) if tgt.dim else None
        killed = ([H.element(Kf.column(c)) for c in range(Kf.cols)] if Kf is not None
                  else list(H.representatives))
        through = [H.class_of(pk.map @ u) for u in hom_space(Z, CL).basis]
        red = Reducer(through, H.dim, Z.field)
        for h in killed:
            if not red.contains(H.class_of(h)):
                return name
        for v in through:
            # the composite must itself be killed by f
            if any(tgt.class_of(f @ H.element(v))):
                return name
    return None


# -- mu ---------------------------------------------------------------------

class MuData:
    """The correspondence costable M -> stable M, N |-> tau^-_{n-1} Omega-bar N, with witnesses."""

    def __init__(self, stable: GammaAlgebra, costable: GammaAlgebra, n):
        self.stable = stable
        self.costable = costable
        self.n = n
        self.target = []  # index in stable Gamma
        self.iso = []  # tau^- Omega-bar^{n-1} N -> M_sigma(N)
        for N in costable.modules:
            S = _sigma(N, n)
            hit = None
            for k, M in enumerate(stable.modules):
                if M.dims == S.dims:
                    phi = find_isomorphism(S, M)
                    if phi is not None:
                        hit = (k, phi)
                        break
            if hit is None:
                raise VerificationFailed("tau^- Omega-bar does not land in the stable category of M",
                                         counterexample=N)
            self.target.append(hit[0])
            self.iso.append(hit[1])
        if sorted(self.target) != list(range(len(stable.modules))):
            raise VerificationFailed("tau^- Omega-bar is not a bijection on objects")

    def transport(self, i, j, f):
        """sigma(f): M_sigma(i) -> M_sigma(j) for a costable map f: N_i -> N_j."""
        g = f
        for _ in range(self.n - 1):
            g = cosyzygy_map(g)
        g = tau_minus_map(g)
        return self.iso[j] @ g @ self.iso[i].inverse()


def _sigma(N, n):
    return tau_minus(cosyzygy(N, n - 1))


def mu(Cmod: FunctorModule, data: MuData):
    """mu(C) = C o tau^-_{n-1} o Omega-bar as a module over the costable Gamma."""
    gamma = data.costable
    if Cmod.module is None or gamma.algebra is None:
        return FunctorModule(gamma, None, Cmod.source)
    st = data.stable
    dims = [Cmod.module.dims[data.target[k]] for k in range(len(gamma.modules))]

    def action(i, j, f):
        si, sj = data.target[i], data.target[j]
        elem = st.element_of(si, sj, data.transport(i, j, f))
        return Cmod.module.element_matrix(elem, sj, si)

    return _functor_module(gamma, dims, action, Cmod.source)


# -- presentation exactness ------------------------------------------------------

def _matrix(src_space, tgt_space, fn, F):
    cols = [tgt_space.class_of(fn(h)) for h in src_space.representatives]
    return Mat.from_columns(cols, tgt_space.dim, F) if cols else Mat.zeros(tgt_space.dim, 0, F)


def _exact(Amat, Bmat, dim_mid, dim_end):
    """Hom -> Hom -> value -> 0 exact: B A = 0, B onto, rank A = dim ker B."""
    if Amat.cols and Bmat.rows and not (Bmat @ Amat).is_zero():
        return False
    rb = rank(Bmat) if Bmat.rows and Bmat.cols else 0
    ra = rank(Amat) if Amat.rows and Amat.cols else 0
    return rb == dim_end and ra == dim_mid - rb


def check_left_presentation(X, C: Subcategory, gamma: GammaAlgebra):
    """For 0 -> X -> M0 -> M1 -> 0, check stHom(-, M0) -> stHom(-, M1) -> F X -> 0 at every vertex.

    Returns a list of (object name, ok) pairs.
    """
    res = left_resolution(X, C)
    if res is None:
        raise XNotInML("X has no M-coresolution of length one")
    d0, d1 = res.first.map, res.second
    M0, M1 = d0.target, d1.target
    out = []
    for name, Mi in zip(gamma.names, gamma.modules):
        F = Mi.field
        H0, H1 = stable_hom(Mi, M0), stable_hom(Mi, M1)
        E = ext(Mi, X)
        cover = presentation(Mi).cover0
        inc = presentation(Mi).kernel_inclusion

        def connecting(h):
            u = lift_from_projective(cover.sum, h @ cover.map, d1)
            return factor_through_mono(u @ inc, d0)

        Am = _matrix(H0, H1, lambda h: d1 @ h, F)
        cols = [E.class_of(connecting(h)) for h in H1.representatives]
        Bm = Mat.from_columns(cols, E.dim, F) if cols else Mat.zeros(E.dim, 0, F)
        out.append((name, _exact(Am, Bm, H1.dim, E.dim)))
    return out


def check_right_presentation(X, C: Subcategory, gamma: GammaAlgebra):
    """For 0 -> M1 -> M0 -> X -> 0, check coHom(-, M1) -> coHom(-, M0) -> G X -> 0 at every vertex."""
    res = right_resolution(X, C)
    if res is None:
        raise XNotInMR("X has no M-resolution of length one")
    d0, d1 = res.first.map, res.second
    M0, M1 = d0.source, d1.source
    out = []
    for name, Mi in zip(gamma.names, gamma.modules):
        F = Mi.field
        H1, H0, HX = costable_hom(Mi, M1), costable_hom(Mi, M0), costable_hom(Mi, X)
        Am = _matrix(H1, H0, lambda h: d1 @ h, F)
        Bm = _matrix(H0, HX, lambda h: d0 @ h, F)
        out.append((name, _exact(Am, Bm, H0.dim, HX.dim)))
    return out


# -- verification of the equivalences ------------------------------------------------

def _quiver_record(names, arrows):
    return {
        "vertices": list(names),
        "arrows": [[names[i], names[j], m] for (i, j), m in sorted(arrows.items())],
    }


def _match(modules, targets):
    """For each module, the index of an isomorphic target (or None)."""
    out = []
    for X in modules:
        hit = None
        for k, Y in enumerate(targets):
            if X.dims == Y.dims and _local_iso(X, Y) is not None:
                hit = k
                break
        out.append(hit)
    return out


def _hom_check(cat, images, mapper):
    """Per pair: (quotient dim, Gamma Hom dim, rank of the induced map, vanishing on the ideal)."""
    table = []
    for i, (xn, X) in enumerate(cat.objects):
        for j, (yn, Y) in enumerate(cat.objects):
            Q = cat.hom(i, j)
            H = hom_space(images[i].module, images[j].module)
            cols = [H.coordinates(mapper(g, images[i], images[j])) for g in Q.representatives]
            r = rank(Mat.from_columns(cols, H.dim, X.field)) if cols and H.dim else 0
            full = hom_space(X, Y)
            ideal_ok = all(
                mapper(full.element(row), images[i], images[j]).is_zero()
                for row in Q.reducer.rows)
            table.append({"source": xn, "target": yn, "quotient_dim": Q.dim, "gamma_dim": H.dim,
                          "rank": r, "well_defined": ideal_ok})
    return table


def verify_equivalence(kind, M: Subcategory, ar, ambient=None, strict=True):
    """Machine check that F (kind 'F') or G (kind 'G') is an equivalence.

    M must be rigid; a non-rigid M is reported as a failure.  Checks, over
    the nonzero indecomposables of the quotient category:
    images are indecomposable and pairwise non-isomorphic; the functor is
    well defined on classes and bijective on Hom spaces; every indecomposable
    Gamma-module (from the AR quiver of Gamma) is hit.  The quiver of the
    quotient category is compared with the AR quiver of Gamma along the
    object bijection.
    """
    if kind not in ("F", "G"):
        raise ValueError("kind must be 'F' or 'G'")
    if kind == "F":
        amb = ambient if ambient is not None else compute_M_L(M, ar)
        ideal = M
        gamma = stable_endo_algebra(M, "stable")
        apply, mapper = functor_F, functor_F_map
    else:
        amb = ambient if ambient is not None else compute_M_R(M, ar)
        ideal = omega_bar_M(M, ar)
        gamma = stable_endo_algebra(M, "costable")
        apply, mapper = functor_G, functor_G_map
    cat = QuotientCategory(amb.members, ideal, f"{kind}-quotient")
    failures = []
    rigid = is_rigid(M, 2)
    if not rigid:
        failures.append(("rigid", "Ext^1({}, {}) != 0".format(*rigid.certificate[:2])))
    vanish = []
    for name, X in amb.members:
        if name not in cat.names:
            img = apply(X, gamma, check=False)
            if img.module is not None and img.total_dim:
                failures.append(("vanishing", name))
            vanish.append(name)
    images = [apply(X, gamma, check=False) for X in cat.modules]
    gar = ar_quiver(gamma.algebra) if gamma.algebra is not None else None
    gmods = gar.modules if gar is not None else []
    match = _match([im.module for im in images], gmods) if gar is not None else [None] * len(images)
    for name, k in zip(cat.names, match):
        if k is None:
            failures.append(("object", name))
    if len(set(m for m in match if m is not None)) != len([m for m in match if m is not None]):
        failures.append(("object", "two objects share an image"))
    hit = sorted(set(m for m in match if m is not None))
    if len(hit) != len(gmods):
        missed = [gar.vertices[k].name for k in range(len(gmods)) if k not in hit]
        failures.append(("density", ",".join(missed)))
    table = _hom_check(cat, images, mapper) if gamma.algebra is not None else []
    for row in table:
        if not (row["quotient_dim"] == row["gamma_dim"] == row["rank"] and row["well_defined"]):
            failures.append(("hom", (row["source"], row["target"])))
    cq = cat.gabriel_quiver()
    quiver_match = None
    if gar is not None and all(m is not None for m in match):
        mapped = {(match[i], match[j]): m for (i, j), m in cq.items()}
        quiver_match = mapped == {k: v for k, v in gar.arrows.items() if k[0] in hit and k[1] in hit}
        if not quiver_match:
            failures.append(("quiver", "quotient quiver differs from the AR quiver of Gamma"))
    report = {
        "kind": kind,
        "subcategory": M.names,
        "ambient": amb.names,
        "ideal": ideal.names,
        "vanishing": vanish,
        "quotient_objects": [{"name": n, "label": X.label, "dims": list(X.dims)} for n, X in cat.objects],
        "quotient_quiver": _quiver_record(cat.names, cq),
        "gamma": {
            "side": gamma.side,
            "dimension": gamma.dimension,
            "quiver": _quiver_record(gamma.names, gamma.gabriel_quiver()),
            "relations": [repr(r) for r in gamma.relations],
        },
        "gamma_indecomposables": len(gmods),
        "bijection": [
            {"object": n, "image_dims": list(im.module.dims) if im.module is not None else [],
             "gamma_module": gar.vertices[k].name if k is not None else None}
            for n, im, k in zip(cat.names, images, match)],
        "hom_table": table,
        "quiver_matches_gamma_ar_quiver": quiver_match,
        "failures": [[a, b if isinstance(b, str) else list(b)] for a, b in failures],
        "ok": not failures,
    }
    if strict and failures:
        err = VerificationFailed(f"{kind} is not an equivalence: {failures[0]}", counterexample=failures[0])
        err.report = report
        raise err
    return report


def verify_square(M: Subcategory, n, ar, strict=True):
    """mu(F X) against G(tau_{n-1} X) for every X in the left perpendicular category outside M."""
    st = stable_endo_algebra(M, "stable")
    co = stable_endo_algebra(M, "costable")
    data = MuData(st, co, n)
    rows = []
    failures = []
    names = set(M.names)
    for name, X in perp_left(M, n - 2, ar).members:
        if name in names:
            continue
        FX = functor_F(X, st, check=False)
        lhs = mu(FX, data)
        TX = tau_n(X, n)
        GT = functor_G(TX, co, check=False)
        same = lhs.module.dims == GT.module.dims and is_isomorphic(lhs.module, GT.module)
        tx = ar.name_of(TX) if TX.total_dim else None
        rows.append({"object": name, "tau": tx, "mu_F_dims": list(lhs.module.dims),
                     "G_tau_dims": list(GT.module.dims), "isomorphic": bool(same)})
        if not same:
            failures.append(name)
    report = {
        "n": n,
        "subcategory": M.names,
        "correspondence": [[co.names[k], st.names[data.target[k]]] for k in range(len(co.names))],
        "rows": rows,
        "ok": not failures,
    }
    if strict and failures:
        err = VerificationFailed(f"square fails at {failures[0]}", counterexample=failures[0])
        err.report = report
        raise err
    return report
