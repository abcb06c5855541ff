"""Reading .alg/.mod/.sub files and writing JSON and DOT."""

from __future__ import annotations

import json
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .algebra import Quiver, Relation, build_algebra
from .exactla import QQ, Mat, parse_field
from .repmod import Module

SCHEMA_VERSION = 1


class FormatError(ValueError):
    pass


def _load_toml(path):
    path = Path(path)
    try:
        with path.open("rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise FormatError(f"{path}: no such file") from None
    except tomllib.TOMLDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None


# -- algebras ---------------------------------------------------------------

def algebra_from_dict(data, field=None, max_len=None, source="<algebra>"):
    try:
        qd = data["quiver"]
        vertices = [str(v) for v in qd["vertices"]]
        arrows = [(str(a["name"]), str(a["from"]), str(a["to"])) for a in qd.get("arrows", [])]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{source}: malformed [quiver] block ({exc})") from None
    if field is None:
        field = parse_field(str(data.get("field", "q")))
    rels = []
    for k, r in enumerate(data.get("relation", [])):
        try:
            terms = [(field(str(c)), [str(a) for a in p]) for c, p in r["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"{source}: relation {k + 1} is malformed ({exc})") from None
        rels.append(Relation(terms))
    try:
        Q = Quiver(vertices, arrows)
    except ValueError as exc:
        raise FormatError(f"{source}: {exc}") from None
    return build_algebra(Q, rels, max_len=max_len, field=field, name=data.get("name"))


def load_algebra(path, field=None, max_len=None):
    return algebra_from_dict(_load_toml(path), field, max_len, str(path))


def algebra_to_toml(A):
    Q = A.quiver
    lines = []
    if A.name:
        lines.append(f"name = {json.dumps(A.name)}")
    if A.field is not QQ:
        lines.append(f'field = "fp:{A.field.p}"')
    lines.append("")
    lines.append("[quiver]")
    lines.append("vertices = [" + ", ".join(json.dumps(v) for v in Q.vertices) + "]")
    lines.append("arrows = [")
    for a in Q.arrows:
        lines.append(f"  {{ name = {json.dumps(a.name)}, from = {json.dumps(a.source)}, to = {json.dumps(a.target)} }},")
    lines.append("]")
    for r in A.relations:
        lines.append("")
        lines.append("[[relation]]")
        terms = ", ".join(f"[{json.dumps(scalar_str(c))}, [{', '.join(json.dumps(x) for x in p)}]]"
                          for c, p in r.terms)
        lines.append(f"terms = [{terms}]")
    return "\n".join(lines) + "\n"


# -- modules ------------------------------------------------------------------

def scalar_str(c):
    """Rationals as "p" or "p/q"; residues as their representative."""
    return str(c)


def module_from_dict(A, data, source="<module>"):
    F = A.field
    Q = A.quiver
    dd = data.get("dims", {})
    unknown = set(map(str, dd)) - set(Q.vertices)
    if unknown:
        raise FormatError(f"{source}: unknown vertices {sorted(unknown)}")
    dims = [int(dd.get(v, 0)) for v in Q.vertices]
    maps = {}
    md = data.get("maps", {})
    for name, rows in md.items():
        if name not in Q.arrow_index:
            raise FormatError(f"{source}: unknown arrow {name!r}")
        i = Q.arrow_index[name]
        r, c = dims[Q.tgt[i]], dims[Q.src[i]]
        try:
            maps[name] = Mat.from_rows([[F(str(x)) for x in row] for row in rows], F, cols=c)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise FormatError(f"{source}: arrow {name}: {exc}") from None
        if maps[name].shape != (r, c):
            raise FormatError(f"{source}: arrow {name} needs a {r}x{c} matrix")
    try:
        return Module(A, dims, maps, name=data.get("name"))
    except ValueError as exc:
        raise FormatError(f"{source}: {exc}") from None


def load_module(A, path):
    return module_from_dict(A, _load_toml(path), str(path))


def module_to_toml(M, name=None):
    Q = M.algebra.quiver
    lines = []
    nm = name or M.name
    if nm:
        lines.append(f"name = {json.dumps(nm)}")
    lines.append("")
    lines.append("[dims]")
    for v, d in zip(Q.vertices, M.dims):
        lines.append(f"{json.dumps(v)} = {d}")
    lines.append("")
    lines.append("[maps]")
    for a, m in zip(Q.arrows, M.maps):
        if m.rows and m.cols:
            rows = ", ".join("[" + ", ".join(json.dumps(scalar_str(x)) for x in row) + "]" for row in m.tolist())
            lines.append(f"{json.dumps(a.name)} = [{rows}]")
    return "\n".join(lines) + "\n"


def module_record(M, name=None):
    return {
        "name": name or M.name,
        "label": M.label,
        "dims": list(M.dims),
        "maps": {a.name: [[scalar_str(x) for x in row] for row in m.tolist()]
                 for a, m in zip(M.algebra.quiver.arrows, M.maps) if m.rows and m.cols},
    }


# -- references and subcategories ---------------------------------------------

def resolve_module(ref, A, ar=None, base=None):
    """A module from a canonical AR-quiver name, a Loewy label, or a .mod path."""
    ref = str(ref)
    if ref.endswith(".mod"):
        p = Path(ref)
        if base is not None and not p.is_absolute() and not p.exists():
            p = Path(base) / p
        return load_module(A, p)
    if ar is None:
        from .artheory import ar_quiver
        ar = ar_quiver(A)
    try:
        return ar.find(ref).module
    except KeyError:
        raise FormatError(f"unknown module {ref!r}: not a canonical name, Loewy label or .mod file") from None


def load_subcategory(path, A, ar, n=None):
    """Read a .sub file: either ``members = [...]`` or a ``[generator]`` record."""
    from .cluster import from_modules, generate_by_tau_orbit

    data = _load_toml(path)
    gen = data.get("generator")
    if gen is not None:
        if gen.get("kind") != "tau-orbit":
            raise FormatError(f"{path}: unknown generator kind {gen.get('kind')!r}")
        return generate_by_tau_orbit(A, int(gen.get("n", n or 2)), ar)
    members = data.get("members")
    if not isinstance(members, list):
        raise FormatError(f"{path}: expected a members list or a [generator] record")
    base = Path(path).parent
    mods = [resolve_module(m, A, ar, base) for m in members]
    return from_modules(A, mods, ar, f"file: {Path(path).name}")


def subcategory_from_arg(arg, A, ar, n=2):
    """--subcat value: "tau-orbit", a .sub path, or comma-separated module references."""
    from .cluster import from_modules, generate_by_tau_orbit

    if arg == "tau-orbit":
        return generate_by_tau_orbit(A, n, ar)
    if arg.endswith(".sub"):
        return load_subcategory(arg, A, ar, n)
    refs = [r.strip() for r in arg.split(",") if r.strip()]
    mods = [resolve_module(r, A, ar) for r in refs]
    return from_modules(A, mods, ar, "explicit")


# -- JSON ---------------------------------------------------------------------

def to_json(kind, payload):
    doc = {"schema": f"quivrep.{kind}", "version": SCHEMA_VERSION}
    doc.update(payload)
    return json.dumps(doc, indent=2, default=str) + "\n"


def ar_quiver_record(ar, subcats=()):
    verts = []
    for i, v in enumerate(ar.vertices):
        rec = {"name": v.name, "label": v.label, "dims": list(v.dims),
               "projective": v.projective, "injective": v.injective}
        if i in ar.tau:
            rec["tau"] = ar.vertices[ar.tau[i]].name
        if subcats:
            rec["in"] = [tag for tag, C in subcats if v.name in C.names]
        verts.append(rec)
    return {
        "indecomposables": len(ar.vertices),
        "vertices": verts,
        "arrows": [[ar.vertices[i].name, ar.vertices[j].name, m] for (i, j), m in ar.arrows.items()],
    }


# -- DOT ----------------------------------------------------------------------

_STYLES = [
    {"shape": "box", "style": "bold"},
    {"style": "dotted"},
    {"style": "filled", "fillcolor": "lightgrey"},
    {"shape": "doublecircle"},
]


def _style_attrs(styles):
    """Merge several style dicts; ``style`` values accumulate, other keys keep the first value."""
    merged = {}
    for st in styles:
        for k, v in st.items():
            if k == "style" and k in merged:
                merged[k] = f"{merged[k]},{v}"
            else:
                merged.setdefault(k, v)
    return [f"{k}={_q(v)}" for k, v in merged.items()]


def _q(s):
    s = str(s).replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{s}"'


def ar_quiver_dot(ar, subcats=(), title="ar_quiver"):
    """DOT digraph: names and dimension vectors on nodes, irreducible maps solid, tau dotted.

    ``subcats`` is a sequence of (tag, Subcategory); membership selects a node style.
    """
    lines = [f"digraph {_q(title)} {{", "  rankdir=LR;", "  node [shape=ellipse, fontsize=10];"]
    for k, (tag, _) in enumerate(subcats):
        desc = ", ".join(_style_attrs([_STYLES[k % len(_STYLES)]]))
        lines.append(f"  // style {k}: {tag}: {desc}")
    for v in ar.vertices:
        attrs = [f"label={_q(v.name + chr(10) + v.label + chr(10) + str(list(v.dims)))}"]
        attrs += _style_attrs([_STYLES[k % len(_STYLES)] for k, (_, C) in enumerate(subcats) if v.name in C.names])
        lines.append(f"  {_q(v.name)} [{', '.join(attrs)}];")
    for (i, j), m in ar.arrows.items():
        for _ in range(m):
            lines.append(f"  {_q(ar.vertices[i].name)} -> {_q(ar.vertices[j].name)};")
    for z, t in ar.tau.items():
        lines.append(f"  {_q(ar.vertices[z].name)} -> {_q(ar.vertices[t].name)} "
                     "[style=dotted, arrowhead=none, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_dot(names, arrows, labels=None, title="quiver", extra=()):
    """DOT digraph of a quiver given by {(i, j): multiplicity}; ``extra`` are dotted pairs."""
    lines = [f"digraph {_q(title)} {{", "  rankdir=LR;", "  node [shape=ellipse, fontsize=10];"]
    for k, n in enumerate(names):
        lab = n if labels is None else f"{n}\n{labels[k]}"
        lines.append(f"  {_q(n)} [label={_q(lab)}];")
    for (i, j), m in sorted(arrows.items()):
        for _ in range(m):
            lines.append(f"  {_q(names[i])} -> {_q(names[j])};")
    for a, b in extra:
        lines.append(f"  {_q(a)} -> {_q(b)} [style=dotted, arrowhead=none, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
