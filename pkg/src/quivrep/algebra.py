"""Bound quiver algebras kQ/I with a length-lex normal-form basis.

Paths compose diagrammatically: ``(a, b)`` means a first, then b.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import MalformedRelation, NotFiniteDimensional
from .exactla import QQ, Reducer, row_basis


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        arrows = [a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2])) for a in arrows]
        self.arrows = tuple(arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        if len({a.name for a in arrows}) != len(arrows):
            raise ValueError("duplicate arrow names")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        for a in arrows:
            if a.source not in self.vertex_index or a.target not in self.vertex_index:
                raise ValueError(f"arrow {a.name} has an unknown endpoint")
        self.arrow_index = {a.name: i for i, a in enumerate(arrows)}
        # integer endpoints, used everywhere internally
        self.src = tuple(self.vertex_index[a.source] for a in arrows)
        self.tgt = tuple(self.vertex_index[a.target] for a in arrows)
        self.out_arrows = [[] for _ in self.vertices]
        self.in_arrows = [[] for _ in self.vertices]
        for i, a in enumerate(arrows):
            self.out_arrows[self.src[i]].append(i)
            self.in_arrows[self.tgt[i]].append(i)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    def opposite(self):
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def arrow_multiplicities(self):
        return Counter((a.source, a.target) for a in self.arrows)

    def paths_from(self, v, max_len):
        """All paths starting at vertex index v of length <= max_len, shortest first."""
        frontier = [Path(v, v, ())]
        out = list(frontier)
        for _ in range(max_len):
            nxt = []
            for p in frontier:
                for a in self.out_arrows[p.target]:
                    nxt.append(Path(p.source, self.tgt[a], p.arrows + (a,)))
            if not nxt:
                break
            out.extend(nxt)
            frontier = nxt
        return out

    def path(self, names, source=None):
        """Path from a sequence of arrow names (or a trivial path at ``source``)."""
        names = list(names)
        if not names:
            v = self.vertex_index[str(source)]
            return Path(v, v, ())
        idx = []
        for n in names:
            if n not in self.arrow_index:
                raise MalformedRelation(f"unknown arrow {n!r}")
            idx.append(self.arrow_index[n])
        for a, b in zip(idx, idx[1:]):
            if self.tgt[a] != self.src[b]:
                raise MalformedRelation(f"arrows {self.arrows[a].name} and {self.arrows[b].name} do not compose")
        return Path(self.src[idx[0]], self.tgt[idx[-1]], tuple(idx))


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: tuple

    def __len__(self):
        return len(self.arrows)

    @property
    def key(self):
        # length-lex, ties broken by declared arrow order then source vertex
        return (len(self.arrows), self.arrows, self.source)

    def __mul__(self, other):
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def describe(self, quiver):
        if not self.arrows:
            return "e" + quiver.vertices[self.source]
        return "".join(quiver.arrows[a].name for a in self.arrows) if all(
            len(quiver.arrows[a].name) == 1 for a in self.arrows) else "*".join(
            quiver.arrows[a].name for a in self.arrows)


class Relation:
    """Linear combination of parallel paths, each a tuple of arrow names."""

    def __init__(self, terms):
        self.terms = tuple((c, tuple(str(n) for n in path)) for c, path in terms)
        if not self.terms:
            raise MalformedRelation("empty relation")

    def reversed(self):
        return Relation([(c, tuple(reversed(p))) for c, p in self.terms])

    def __repr__(self):
        return "Relation(" + " + ".join(f"{c}*{'.'.join(p)}" for c, p in self.terms) + ")"


def _ideal_rows(quiver, rels, L, field=QQ):
    """Per (source, target) block: rref of the ideal truncated above length L.

    ``rels`` holds resolved relations: (source, target, [(coef, arrow tuple)]).
    Columns of a block are its paths of length <= L sorted by descending key,
    so pivots are leading terms.
    """
    n = len(quiver.vertices)
    paths_from = [quiver.paths_from(v, L) for v in range(n)]
    into = [[] for _ in range(n)]
    for v in range(n):
        for p in paths_from[v]:
            into[p.target].append(p)
    blocks = {}
    for u in range(n):
        for p in paths_from[u]:
            blocks.setdefault((u, p.target), []).append(p)
    cols = {}
    for key, ps in blocks.items():
        ps.sort(key=lambda p: p.key, reverse=True)
        cols[key] = (ps, {p.arrows: i for i, p in enumerate(ps)})
    gens = {key: [] for key in blocks}
    for s, t, terms in rels:
        minlen = min(len(a) for _, a in terms)
        for p in into[s]:
            if len(p) + minlen > L:
                continue
            for q in paths_from[t]:
                if len(p) + minlen + len(q) > L:
                    continue
                key = (p.source, q.target)
                ps, index = cols[key]
                vec = {}
                for c, a in terms:
                    full = p.arrows + a + q.arrows
                    if len(full) <= L:
                        j = index[full]
                        vec[j] = vec.get(j, field.zero) + c
                gens[key].append(vec)
    out = {}
    for key, (ps, index) in cols.items():
        vecs = []
        for vec in gens[key]:
            row = [field.zero] * len(ps)
            for j, c in vec.items():
                row[j] = c
            vecs.append(row)
        out[key] = (ps, vecs)
    return out


class Algebra:
    """kQ/I for an admissible ideal I, with a canonical normal-form basis."""

    def __init__(self, quiver, relations=(), field=QQ, max_len=None, name=None):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.field = field
        self.name = name
        self.max_len = max(2 * len(quiver.vertices), 12) if max_len is None else max_len
        self._opposite = None
        self._mult = {}
        self._cache = {}
        self._build()

    # -- construction -------------------------------------------------
    def _resolve(self):
        rels = []
        for r in self.relations:
            paths = [self.quiver.path(p) for _, p in r.terms]
            for p in paths:
                if len(p) < 2:
                    raise MalformedRelation(f"relation term of length {len(p)} in {r}; need length >= 2")
            if len({(p.source, p.target) for p in paths}) != 1:
                raise MalformedRelation(f"relation terms are not parallel: {r}")
            terms = {}
            for (c, _), p in zip(r.terms, paths):
                terms[p.arrows] = terms.get(p.arrows, self.field.zero) + self.field(c)
            terms = [(c, a) for a, c in terms.items() if c]
            if terms:
                rels.append((paths[0].source, paths[0].target, terms))
        return rels

    def _build(self):
        quiver = self.quiver
        rels = self._resolve()
        self._resolved = rels
        field = self.field
        L = 1
        while True:
            if L > self.max_len:
                raise NotFiniteDimensional(
                    f"paths of length {self.max_len} are not all in the ideal; raise max_len or check relations")
            blocks = _ideal_rows(quiver, rels, L, field)
            done = True
            reductions = {}
            basis = []
            for key, (ps, vecs) in blocks.items():
                rows, pivots = row_basis(vecs, len(ps), field)
                pivset = set(pivots)
                for row, piv in zip(rows, pivots):
                    reductions[ps[piv].arrows, key] = (row, piv)
                for j, p in enumerate(ps):
                    if j not in pivset:
                        if len(p) == L:
                            done = False
                        basis.append(p)
                    elif len(p) == L:
                        row = reductions[p.arrows, key][0]
                        if sum(1 for x in row if x) != 1:
                            done = False
            if done:
                break
            L += 1
        self.loewy_bound = L
        basis.sort(key=lambda p: p.key)
        self.basis = tuple(basis)
        self.index = {(p.source, p.arrows): i for i, p in enumerate(basis)}
        self._blocks = blocks
        self._reductions = reductions
        n = len(quiver.vertices)
        self._between = {}
        for i, p in enumerate(basis):
            self._between.setdefault((p.source, p.target), []).append(i)
        self._nf = {}
        self.vertex_count = n

    @property
    def dimension(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"Algebra({self.name or 'kQ/I'}, dim={self.dimension}, field={self.field!r})"

    def paths_between(self, u, w):
        """Basis indices of normal-form paths from vertex index u to w."""
        return self._between.get((u, w), [])

    # -- arithmetic ---------------------------------------------------
    def reduce(self, path: Path):
        """Normal form of a path as a dict basis-index -> coefficient."""
        if len(path) >= self.loewy_bound:
            return {}
        key = (path.source, path.arrows)
        if key in self.index:
            return {self.index[key]: self.field.one}
        cached = self._nf.get(key)
        if cached is not None:
            return dict(cached)
        block = (path.source, path.target)
        ps, _ = self._blocks[block]
        row, piv = self._reductions[path.arrows, block]
        out = {}
        for j, c in enumerate(row):
            if c and j != piv:
                # non-pivot columns are basis paths; each has length < bound
                i = self.index[(ps[j].source, ps[j].arrows)]
                out[i] = -c
        self._nf[key] = out
        return dict(out)

    def basis_product(self, i, j):
        key = (i, j)
        res = self._mult.get(key)
        if res is None:
            p = self.basis[i] * self.basis[j]
            res = {} if p is None else self.reduce(p)
            self._mult[key] = res
        return res

    def multiplication_table(self):
        n = self.dimension
        return {(i, j): self.basis_product(i, j) for i in range(n) for j in range(n)}

    def multiply(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.basis_product(i, j).items():
                    out[k] = out.get(k, self.field.zero) + a * b * c
        return {k: v for k, v in out.items() if v}

    def idempotent(self, v):
        return {self.index[(v, ())]: self.field.one}

    def one(self):
        return {self.index[(v, ())]: self.field.one for v in range(self.vertex_count)}

    def element(self, terms):
        """Element from ``[(coef, arrow names)]``; trivial paths as ``(coef, 'e<v>')``."""
        out = {}
        for c, p in terms:
            if isinstance(p, str) and p.startswith("e") and p[1:] in self.quiver.vertex_index:
                path = self.quiver.path([], source=p[1:])
            else:
                path = self.quiver.path(p)
            for k, v in self.reduce(path).items():
                out[k] = out.get(k, self.field.zero) + self.field(c) * v
        return {k: v for k, v in out.items() if v}

    def opposite(self):
        if self._opposite is None:
            op = Algebra(self.quiver.opposite(), [r.reversed() for r in self.relations], self.field,
                         self.max_len, name=(self.name + "^op") if self.name else None)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def path_label(self, i):
        return self.basis[i].describe(self.quiver)


def build_algebra(quiver, relations=(), max_len=None, field=QQ, name=None):
    return Algebra(quiver, relations, field=field, max_len=max_len, name=name)


def opposite(A):
    return A.opposite()


def gabriel_quiver(A):
    """Quiver with arrows v -> w counted by dim e_v (rad/rad^2) e_w."""
    field = A.field
    rad = [i for i, p in enumerate(A.basis) if len(p) > 0]
    by_block = {}
    for i in rad:
        p = A.basis[i]
        by_block.setdefault((p.source, p.target), []).append(i)
    products = {}
    for i in rad:
        for j in rad:
            prod = A.basis_product(i, j)
            if prod:
                p = A.basis[i]
                q = A.basis[j]
                products.setdefault((p.source, q.target), []).append(prod)
    arrows = []
    V = A.quiver.vertices
    for (u, w) in sorted(by_block):
        idx = by_block[(u, w)]
        pos = {k: t for t, k in enumerate(idx)}
        vecs = []
        for prod in products.get((u, w), []):
            row = [field.zero] * len(idx)
            for k, c in prod.items():
                row[pos[k]] = c
            vecs.append(row)
        r2 = len(row_basis(vecs, len(idx), field)[1])
        for m in range(len(idx) - r2):
            arrows.append(Arrow(f"{V[u]}->{V[w]}" + (f"#{m + 1}" if m else ""), V[u], V[w]))
    return Quiver(V, arrows)


def ideal_generators(quiver, candidates, L, field=QQ):
    """Greedy minimal subset of ``candidates`` generating the same ideal modulo length > L.

    Candidates are ``(source, target, [(coef, arrow tuple)])`` and are tried in order.
    """
    chosen = []
    current = None
    for cand in candidates:
        trial = chosen + [cand]
        if current is not None:
            s, t, terms = cand
            ps, vecs = current[(s, t)]
            index = {p.arrows: i for i, p in enumerate(ps)}
            vec = [field.zero] * len(ps)
            for c, a in terms:
                if len(a) <= L:
                    vec[index[a]] += c
            red = Reducer(vecs, len(ps), field)
            if red.contains(vec):
                continue
        chosen = trial
        current = _ideal_rows(quiver, chosen, L, field)
    return chosen
