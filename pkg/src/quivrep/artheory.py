"""Transpose, AR translations, AR sequences and the AR quiver."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import BudgetExceeded, ProjectiveInput
from .exactla import Mat, kernel_basis, vstack
from .homology import (
    cosyzygy, cosyzygy_map, ext, extension_sequence, injective_envelope, is_injective, is_projective,
    lift_from_projective, loewy_label, presentation, projective, dual_projective_map, socle, syzygy,
    syzygy_map, radical,
)
from .repmod import (
    ModuleMap, ShortExactSeq, cokernel, decompose, dual, dual_map, factor_through_epi, find_isomorphism,
    quotient, radical_endomorphisms, _local_iso,
)


def _transpose_data(M):
    """(Tr M, P1*, projection P1* -> Tr M) built from the minimal presentation."""
    d = M._cache.get("transpose")
    if d is None:
        pres = presentation(M)
        src = pres.cover1.sum
        tgt = pres.cover0.sum
        dtgt, dsrc, c = dual_projective_map(src, tgt, pres.p1)
        Tr, q = cokernel(c)
        d = M._cache["transpose"] = (Tr, dsrc, q)
        Tr._cache.setdefault("transpose_of", M)
    return d


def transpose(M):
    """Tr M over the opposite algebra."""
    return _transpose_data(M)[0]


def tau(M):
    """tau M = D Tr M."""
    t = M._cache.get("tau")
    if t is None:
        t = M._cache["tau"] = dual(transpose(M))
    return t


def tau_minus(M):
    """tau^- M = Tr D M."""
    t = M._cache.get("tau_minus")
    if t is None:
        t = M._cache["tau_minus"] = transpose(dual(M))
    return t


def transpose_map(u):
    """Tr u: Tr N2 -> Tr N1 for u: N1 -> N2 (contravariant)."""
    N1, N2 = u.source, u.target
    p1, p2 = presentation(N1), presentation(N2)
    u0 = lift_from_projective(p1.cover0.sum, u @ p1.cover0.map, p2.cover0.map)
    # lift u0 o p1 through P1(N2) ->> Omega N2 -> P0(N2)
    v = factor_through_mono_image(u0 @ p1.p1, p2)
    u1 = lift_from_projective(p1.cover1.sum, v, p2.cover1.map)
    _, _, c2 = dual_projective_map(p1.cover1.sum, p2.cover1.sum, u1)
    Tr1, _, q1 = _transpose_data(N1)
    Tr2, _, q2 = _transpose_data(N2)
    return factor_through_epi(q1 @ c2, q2)


def factor_through_mono_image(g, pres):
    from .repmod import factor_through_mono
    return factor_through_mono(g, pres.kernel_inclusion)


def tau_map(f):
    """tau f: tau M -> tau M' for f: M -> M'."""
    return dual_map(transpose_map(f))


def tau_minus_map(f):
    """tau^- f: tau^- M -> tau^- M' for f: M -> M'."""
    return transpose_map(dual_map(f))


def tau_n(M, n):
    """tau_{n-1} = tau Omega^{n-2}.  ``n`` is the cluster-tilting degree (n >= 2)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return tau(syzygy(M, n - 2))


def tau_n_minus(M, n, literal=False):
    """tau^-_{n-1} = tau^- Omega-bar^{n-2}.

    ``literal=True`` gives tau Omega-bar^{n-2} instead, the other reading of
    the formula; it is not inverse to ``tau_n`` and is kept for comparison.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    base = cosyzygy(M, n - 2)
    return tau(base) if literal else tau_minus(base)


def ar_sequence(Z):
    """Almost split sequence 0 -> tau Z -> E -> Z -> 0 for indecomposable non-projective Z."""
    s = Z._cache.get("ar_sequence")
    if s is not None:
        return s
    if is_projective(Z):
        raise ProjectiveInput("no almost split sequence ends in a projective module")
    T = tau(Z)
    E = ext(Z, T)
    F = Z.field
    om = [syzygy_map(r) for r in radical_endomorphisms(Z)]
    blocks = []
    for w in om:
        cols = [E.class_of(h @ w) for h in E.representatives]
        blocks.append(Mat.from_columns(cols, E.dim, F))
    if blocks:
        K = kernel_basis(vstack(blocks))
        soc = K.column(0)
    else:
        soc = tuple(F.one if j == 0 else F.zero for j in range(E.dim))
    s = extension_sequence(E.presentation, E.element(soc))
    Z._cache["ar_sequence"] = s
    return s


@dataclass
class ARVertex:
    name: str
    module: object
    label: str
    projective: bool
    injective: bool

    @property
    def dims(self):
        return self.module.dims


@dataclass
class ARQuiver:
    algebra: object
    vertices: list
    arrows: dict  # (i, j) -> multiplicity of irreducible maps vertices[i] -> vertices[j]
    tau: dict  # i -> j with vertices[j] = tau(vertices[i])
    sequences: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.vertices)

    @property
    def modules(self):
        return [v.module for v in self.vertices]

    @property
    def names(self):
        return [v.name for v in self.vertices]

    def index_of(self, X):
        """Index of the vertex isomorphic to the indecomposable X, or None."""
        for i, v in enumerate(self.vertices):
            if v.module is X:
                return i
        for i, v in enumerate(self.vertices):
            if v.module.dims == X.dims and _local_iso(v.module, X) is not None:
                return i
        return None

    def find(self, ref):
        """Vertex by canonical name or by Loewy label."""
        for v in self.vertices:
            if v.name == ref:
                return v
        for v in self.vertices:
            if v.label == ref:
                return v
        raise KeyError(f"no indecomposable named {ref!r}")

    def name_of(self, X):
        i = self.index_of(X)
        return None if i is None else self.vertices[i].name

    def arrow_count(self):
        return sum(self.arrows.values())

    def predecessors(self, j):
        return {i: m for (i, k), m in self.arrows.items() if k == j}

    def successors(self, i):
        return {k: m for (j, k), m in self.arrows.items() if j == i}

    def check_mesh(self):
        """Middle terms of AR sequences agree with the arrows into Z and out of tau Z."""
        for z, t in self.tau.items():
            into = self.predecessors(z)
            out = self.successors(t)
            if into != out:
                return False
            seq = self.sequences.get(z)
            if seq is not None:
                lhs = [a + b for a, b in zip(self.vertices[z].dims, self.vertices[t].dims)]
                if list(seq.middle.dims) != lhs:
                    return False
        return True


def ar_quiver(A, budget=10000):
    """All indecomposables of a representation-finite algebra, with irreducible maps and tau.

    Starts from the indecomposable projectives and closes up under tau, tau^-,
    middle terms of AR sequences, radicals of projectives and quotients of
    injectives by their socles.
    """
    key = ("ar_quiver", budget)
    if key in A._cache:
        return A._cache[key]
    n = len(A.quiver.vertices)
    found = []
    queue = deque()

    def locate(X):
        for i, Y in enumerate(found):
            if Y is X or (Y.dims == X.dims and _local_iso(Y, X) is not None):
                return i
        return None

    def add(X):
        i = locate(X)
        if i is None:
            if len(found) >= budget:
                raise BudgetExceeded(f"more than {budget} indecomposables; the algebra may be representation-infinite")
            found.append(X)
            i = len(found) - 1
            queue.append(i)
        return i

    for v in range(n):
        add(projective(A, v))
    arrows = {}
    tau_of = {}
    seqs = {}
    proj = {}
    inj = {}
    while queue:
        i = queue.popleft()
        X = found[i]
        proj[i] = is_projective(X)
        inj[i] = is_injective(X)
        if proj[i]:
            R, _ = radical(X)
            if R.total_dim:
                for Y, m in decompose(R):
                    j = add(Y)
                    arrows[(j, i)] = arrows.get((j, i), 0) + m
        else:
            s = ar_sequence(X)
            seqs[i] = s
            t = add(tau(X))
            tau_of[i] = t
            for Y, m in decompose(s.middle):
                j = add(Y)
                arrows[(j, i)] = arrows.get((j, i), 0) + m
        if not inj[i]:
            add(tau_minus(X))
        else:
            so, inc = socle(X)
            Qm, _ = cokernel(inc)
            if Qm.total_dim:
                for Y, _ in decompose(Qm):
                    add(Y)
    # canonical order: projectives by vertex, then discovery order
    order = list(range(n)) + list(range(n, len(found)))
    names = {}
    counter = 0
    V = A.quiver.vertices
    for i in order:
        X = found[i]
        if i < n:
            names[i] = f"P{V[i]}"
        elif X.total_dim == 1:
            names[i] = f"S{V[X.dims.index(1)]}"
        elif inj[i]:
            v = next(w for w in range(n) if injective_socle_vertex(X, w))
            names[i] = f"I{V[v]}"
        else:
            counter += 1
            names[i] = f"M{counter}"
    verts = []
    for i in order:
        X = found[i]
        if X.name is None:
            X.name = names[i]
        verts.append(ARVertex(names[i], X, loewy_label(X), proj[i], inj[i]))
    Q = ARQuiver(A, verts, dict(sorted(arrows.items())), dict(sorted(tau_of.items())), seqs)
    if not Q.check_mesh():
        raise AssertionError("mesh bookkeeping does not balance")
    A._cache[key] = Q
    return Q


def injective_socle_vertex(X, w):
    so, _ = socle(X)
    return so.dims[w] > 0
