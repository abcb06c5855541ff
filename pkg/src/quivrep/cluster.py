"""Subcategories of mod A: rigidity, cluster tilting, tau-orbits, M_L, M_R, perpendiculars."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import BudgetExceeded, RequiresARQuiver
from .homology import (
    cokernel, cosyzygy, ext_dim, costable_hom, in_add, injective, is_injective, is_projective, kernel,
    left_approximation, loewy_label, projective, right_approximation, syzygy,
)
from .repmod import decompose, direct_sum
from .artheory import tau


def natural_key(name):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


@dataclass
class Subcategory:
    """add of finitely many pairwise non-isomorphic indecomposables."""

    algebra: object
    members: list  # (name, Module), name-sorted
    provenance: str = "explicit"
    layers: list = field(default_factory=list)

    def __post_init__(self):
        self.members = sorted(self.members, key=lambda m: natural_key(m[0]))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, name):
        return name in self.names

    @property
    def names(self):
        return [n for n, _ in self.members]

    @property
    def modules(self):
        return [m for _, m in self.members]

    def module(self, name):
        for n, m in self.members:
            if n == name:
                return m
        raise KeyError(name)

    def contains_module(self, X, ar=None):
        """Whether the indecomposable X is isomorphic to a member."""
        from .repmod import _local_iso
        for _, m in self.members:
            if m is X or (m.dims == X.dims and _local_iso(m, X) is not None):
                return True
        return False

    def direct_sum(self):
        return direct_sum(self.modules, algebra=self.algebra).module


def _named(ar, X):
    if ar is None:
        return loewy_label(X), X
    i = ar.index_of(X)
    if i is None:
        raise ValueError(f"module {loewy_label(X)} is not in the AR quiver")
    v = ar.vertices[i]
    return v.name, v.module


def subcategory(ar, refs, provenance="explicit"):
    """Subcategory from AR-quiver names or Loewy labels."""
    members = []
    seen = set()
    for r in refs:
        v = ar.find(r)
        if v.name not in seen:
            seen.add(v.name)
            members.append((v.name, v.module))
    return Subcategory(ar.algebra, members, provenance)


def from_modules(A, modules, ar=None, provenance="explicit"):
    """Reduce a list of modules to their indecomposable summands, deduplicated."""
    members = []
    for M in modules:
        for X, _ in (decompose(M) if M.total_dim else []):
            name, X = _named(ar, X)
            if not any(n == name for n, _ in members):
                members.append((name, X))
    return Subcategory(A, members, provenance)


@dataclass
class Decision:
    ok: bool
    certificate: object = None
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def is_rigid(C, n):
    """Ext^i(X, Y) = 0 for all members and 1 <= i <= n-1; certificate (X, Y, i)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    for i in range(1, n):
        for xn, X in C.members:
            for yn, Y in C.members:
                if ext_dim(X, Y, i):
                    return Decision(False, (xn, yn, i))
    return Decision(True)


def _ct_violations(v, member, C, n):
    X = v.module
    left = next(((yn, i) for i in range(1, n) for yn, Y in C.members if ext_dim(X, Y, i)), None)
    right = next(((yn, i) for i in range(1, n) for yn, Y in C.members if ext_dim(Y, X, i)), None)
    out = []
    if member and left:
        out.append((v.name, "(2)", f"member with Ext^{left[1]}({v.name}, {left[0]}) != 0"))
    if not member and not left:
        out.append((v.name, "(2)", f"Ext^i({v.name}, C) = 0 for 1 <= i < {n} but not a member"))
    if member and right:
        out.append((v.name, "(3)", f"member with Ext^{right[1]}({right[0]}, {v.name}) != 0"))
    if not member and not right:
        out.append((v.name, "(3)", f"Ext^i(C, {v.name}) = 0 for 1 <= i < {n} but not a member"))
    return out


def is_cluster_tilting(C, n, ar=None):
    """n-cluster-tilting test over all indecomposables of mod A.

    Functorial finiteness holds for any finite subcategory, so only the two
    biconditionals are checked.  Every violation is collected as
    (module name, condition, detail); the certificate is the first one.
    """
    if ar is None:
        raise RequiresARQuiver("cluster-tilting check needs the full list of indecomposables")
    if n < 1:
        raise ValueError("n must be at least 1")
    names = set(C.names)
    bad = []
    for v in ar.vertices:
        member = v.name in names
        if n == 1:
            if not member:
                bad.append((v.name, "(2)", "every module belongs to a 1-cluster-tilting subcategory"))
            continue
        bad.extend(_ct_violations(v, member, C, n))
    return Decision(not bad, bad[0] if bad else None, bad)


def orbit_translation(M, n):
    """tau Omega^{n-1}: the n-AR translation that generates an n-cluster-tilting
    subcategory of an algebra of global dimension at most n."""
    return tau(syzygy(M, n - 1))


def generate_by_tau_orbit(A, n, ar=None, budget=10000):
    """add of the orbits of D A under tau Omega^{n-1}, recorded layer by layer."""
    if n < 1:
        raise ValueError("n must be at least 1")
    k = len(A.quiver.vertices)
    members = []
    layers = []
    current = [injective(A, v) for v in range(k)]
    while current:
        layer = []
        for M in current:
            if not M.total_dim:
                continue
            for X, _ in decompose(M):
                name, X = _named(ar, X)
                if any(nm == name for nm, _ in members) or any(nm == name for nm, _ in layer):
                    continue
                layer.append((name, X))
        if not layer:
            break
        members.extend(layer)
        if len(members) > budget:
            raise BudgetExceeded("tau-orbit generation exceeded the budget")
        layers.append([nm for nm, _ in layer])
        current = [orbit_translation(X, n) for _, X in layer]
    return Subcategory(A, members, "tau-orbit", layers)


@dataclass
class Resolution:
    """0 -> X -> M0 -> M1 -> 0 (left) or 0 -> M1 -> M0 -> X -> 0 (right)."""

    module: object
    first: object  # approximation map
    second: object  # cokernel / kernel map


def left_resolution(X, C):
    """The M-coresolution 0 -> X -> M0 -> M1 -> 0 if X is in M_L, else None."""
    appr = left_approximation(X, C.modules)
    if not appr.map.is_injective():
        return None
    M1, q = cokernel(appr.map)
    if not in_add(M1, C.modules):
        return None
    return Resolution(X, appr, q)


def right_resolution(X, C):
    """The M-resolution 0 -> M1 -> M0 -> X -> 0 if X is in M_R, else None."""
    appr = right_approximation(X, C.modules)
    if not appr.map.is_surjective():
        return None
    M1, inc = kernel(appr.map)
    if not in_add(M1, C.modules):
        return None
    return Resolution(X, appr, inc)


def _require(ar):
    if ar is None:
        raise RequiresARQuiver("this computation needs the full list of indecomposables")


def compute_M_L(C, ar):
    _require(ar)
    members = [(v.name, v.module) for v in ar.vertices if left_resolution(v.module, C) is not None]
    return Subcategory(C.algebra, members, "computed: M_L")


def compute_M_R(C, ar):
    _require(ar)
    members = [(v.name, v.module) for v in ar.vertices if right_resolution(v.module, C) is not None]
    return Subcategory(C.algebra, members, "computed: M_R")


def perp_left(C, k, ar):
    """Indecomposables X with Ext^i(X, C) = 0 for 1 <= i <= k."""
    _require(ar)
    if k == 0:
        return Subcategory(C.algebra, [(v.name, v.module) for v in ar.vertices], "computed: perp (k=0)")
    members = [(v.name, v.module) for v in ar.vertices
               if not any(ext_dim(v.module, Y, i) for i in range(1, k + 1) for Y in C.modules)]
    return Subcategory(C.algebra, members, f"computed: left perp {k}")


def perp_right(C, k, ar):
    """Indecomposables X with Ext^i(C, X) = 0 for 1 <= i <= k."""
    _require(ar)
    if k == 0:
        return Subcategory(C.algebra, [(v.name, v.module) for v in ar.vertices], "computed: perp (k=0)")
    members = [(v.name, v.module) for v in ar.vertices
               if not any(ext_dim(Y, v.module, i) for i in range(1, k + 1) for Y in C.modules)]
    return Subcategory(C.algebra, members, f"computed: right perp {k}")


def omega_bar_M(C, ar):
    """add of the cosyzygies of members together with all injectives."""
    _require(ar)
    A = C.algebra
    mods = [injective(A, v) for v in range(len(A.quiver.vertices))]
    mods += [cosyzygy(M) for M in C.modules]
    S = from_modules(A, mods, ar, "computed: omega-bar")
    return S


def omega_M(C, ar):
    """add of the syzygies of members together with all projectives."""
    _require(ar)
    A = C.algebra
    mods = [projective(A, v) for v in range(len(A.quiver.vertices))]
    mods += [syzygy(M) for M in C.modules]
    return from_modules(A, mods, ar, "computed: omega")


def costable_perp(C, ar):
    """Indecomposables X of M_R with costable Hom(M, X) = 0 for every member M."""
    _require(ar)
    members = [(n, X) for n, X in compute_M_R(C, ar).members
               if all(costable_hom(M, X).dim == 0 for M in C.modules)]
    return Subcategory(C.algebra, members, "computed: costable perp")


def stable_perp(C, ar):
    """Indecomposables X of M_L with stable Hom(X, M) = 0 for every member M."""
    from .homology import stable_hom
    _require(ar)
    members = [(n, X) for n, X in compute_M_L(C, ar).members
               if all(stable_hom(X, M).dim == 0 for M in C.modules)]
    return Subcategory(C.algebra, members, "computed: stable perp")
