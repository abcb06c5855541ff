"""Command-line front end.

Exit codes: 0 success, 1 a check or verification came out negative,
2 bad input (unreadable file, unknown module, budget exceeded, ...).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .algebra import gabriel_quiver
from .artheory import ar_quiver, tau, tau_minus, tau_n, tau_n_minus
from .cluster import (
    compute_M_L, compute_M_R, costable_perp, is_cluster_tilting, is_rigid, omega_bar_M,
)
from .equivfun import QuotientCategory, verify_equivalence, verify_square
from .errors import QuivrepError, VerificationFailed
from .exactla import parse_field
from .formats import (
    FormatError, algebra_to_toml, ar_quiver_dot, ar_quiver_record, load_algebra, module_record,
    module_to_toml, quiver_dot, resolve_module, subcategory_from_arg, to_json,
)
from .homology import costable_hom, ext, loewy_label, projective, injective, stable_hom
from .repmod import decompose, dual, hom_space, set_seed


@dataclass
class Workspace:
    """One algebra plus everything derived from it during a command."""

    algebra: object
    budget: int = 10000
    n: int = 2
    _ar: object = None
    subcats: dict = field(default_factory=dict)

    @property
    def ar(self):
        if self._ar is None:
            self._ar = ar_quiver(self.algebra, budget=self.budget)
        return self._ar

    def module(self, ref):
        return resolve_module(ref, self.algebra, self.ar)

    def subcategory(self, arg):
        if arg not in self.subcats:
            self.subcats[arg] = subcategory_from_arg(arg, self.algebra, self.ar, self.n)
        return self.subcats[arg]

    def describe(self, M):
        """Canonical names of the indecomposable summands of M, with multiplicity."""
        if not M.total_dim:
            return []
        out = []
        for X, m in decompose(M):
            name = self.ar.name_of(X)
            out.append({"name": name, "label": loewy_label(X), "multiplicity": m})
        return out


def _members(C):
    return [{"name": n, "label": X.label, "dims": list(X.dims)} for n, X in C.members]


# -- commands ------------------------------------------------------------------

def cmd_build(ws, args):
    A = ws.algebra
    Q = A.quiver
    n = len(Q.vertices)
    cartan = [[len(A.paths_between(u, w)) for w in range(n)] for u in range(n)]
    G = gabriel_quiver(A)
    payload = {
        "name": A.name,
        "field": A.field.name,
        "vertices": list(Q.vertices),
        "arrows": [[a.name, a.source, a.target] for a in Q.arrows],
        "relations": [[[str(c), list(p)] for c, p in r.terms] for r in A.relations],
        "dimension": A.dimension,
        "loewy_bound": A.loewy_bound,
        "basis": [A.path_label(i) for i in range(A.dimension)],
        "paths_between": cartan,
        "gabriel_quiver_matches": sorted(G.arrow_multiplicities().items()) == sorted(Q.arrow_multiplicities().items()),
    }
    if args.format == "dot":
        arrows = {}
        for a in Q.arrows:
            key = (Q.vertex_index[a.source], Q.vertex_index[a.target])
            arrows[key] = arrows.get(key, 0) + 1
        return 0, quiver_dot(list(Q.vertices), arrows, title=A.name or "quiver"), "dot"
    return 0, to_json("algebra", payload), "json"


def _overlays(ws, args):
    if not args.subcat:
        return []
    C = ws.subcategory(args.subcat)
    return [("M", C), ("omega-bar M", omega_bar_M(C, ws.ar))]


def cmd_ar_quiver(ws, args):
    overlays = _overlays(ws, args)
    if args.format == "json":
        return 0, to_json("ar_quiver", ar_quiver_record(ws.ar, overlays)), "json"
    return 0, ar_quiver_dot(ws.ar, overlays, ws.algebra.name or "ar_quiver"), "dot"


def cmd_hom(ws, args):
    X, Y = ws.module(args.X), ws.module(args.Y)
    payload = {"source": args.X, "target": args.Y, "hom": hom_space(X, Y).dim,
               "stable_hom": stable_hom(X, Y).dim, "costable_hom": costable_hom(X, Y).dim}
    return 0, to_json("hom", payload), "json"


def cmd_ext(ws, args):
    if args.table:
        vs = ws.ar.vertices
        tables = {}
        for i in range(1, args.degree + 1):
            tables[str(i)] = [[ext(x.module, y.module, i).dim for y in vs] for x in vs]
        payload = {"names": [v.name for v in vs], "degrees": tables}
        return 0, to_json("ext_table", payload), "json"
    if not (args.X and args.Y):
        raise FormatError("ext needs two modules or --table")
    X, Y = ws.module(args.X), ws.module(args.Y)
    dims = {str(i): ext(X, Y, i).dim for i in range(1, args.degree + 1)}
    return 0, to_json("ext", {"source": args.X, "target": args.Y, "dims": dims}), "json"


def cmd_tau(ws, args):
    X = ws.module(args.X)
    T = tau_minus(X) if args.inverse else tau(X)
    payload = {"input": args.X, "inverse": args.inverse, "result": ws.describe(T), "dims": list(T.dims)}
    return 0, to_json("tau", payload), "json"


def cmd_tau_n(ws, args):
    X = ws.module(args.X)
    T = tau_n_minus(X, args.n, literal=args.literal) if args.inverse else tau_n(X, args.n)
    payload = {"input": args.X, "n": args.n, "inverse": args.inverse, "literal": args.literal,
               "result": ws.describe(T), "dims": list(T.dims)}
    return 0, to_json("tau_n", payload), "json"


def cmd_check_rigid(ws, args):
    C = ws.subcategory(args.subcat)
    d = is_rigid(C, args.n)
    payload = {"n": args.n, "members": _members(C), "rigid": d.ok,
               "certificate": list(d.certificate) if d.certificate else None}
    return (0 if d.ok else 1), to_json("check_rigid", payload), "json"


def cmd_check_ct(ws, args):
    C = ws.subcategory(args.subcat)
    d = is_cluster_tilting(C, args.n, ws.ar)
    payload = {"n": args.n, "count": len(C), "members": _members(C), "layers": C.layers,
               "cluster_tilting": d.ok,
               "certificate": list(d.certificate) if d.certificate else None,
               "violations": [list(v) for v in d.violations]}
    return (0 if d.ok else 1), to_json("check_ct", payload), "json"


def cmd_m_left(ws, args):
    C = ws.subcategory(args.subcat)
    L = compute_M_L(C, ws.ar)
    payload = {"subcategory": C.names, "members": _members(L), "added": [n for n in L.names if n not in C.names]}
    return 0, to_json("m_left", payload), "json"


def cmd_m_right(ws, args):
    C = ws.subcategory(args.subcat)
    R = compute_M_R(C, ws.ar)
    payload = {"subcategory": C.names, "members": _members(R), "added": [n for n in R.names if n not in C.names]}
    return 0, to_json("m_right", payload), "json"


def cmd_omega_bar(ws, args):
    C = ws.subcategory(args.subcat)
    ob = omega_bar_M(C, ws.ar)
    perp = costable_perp(C, ws.ar)
    same = ob.names == perp.names
    payload = {"subcategory": C.names, "members": _members(ob), "costable_perp": perp.names,
               "matches_costable_perp": same}
    return (0 if same else 1), to_json("omega_bar", payload), "json"


def cmd_quotient_quiver(ws, args):
    A = ws.algebra
    ar = ws.ar
    C = ws.subcategory(args.subcat)
    amb = {
        "all": lambda: [(v.name, v.module) for v in ar.vertices],
        "m-left": lambda: compute_M_L(C, ar).members,
        "m-right": lambda: compute_M_R(C, ar).members,
        "subcat": lambda: C.members,
    }[args.ambient]()
    k = len(A.quiver.vertices)
    ideal = {
        "subcat": lambda: C.modules,
        "omega-bar": lambda: omega_bar_M(C, ar).modules,
        "projectives": lambda: [projective(A, v) for v in range(k)],
        "injectives": lambda: [injective(A, v) for v in range(k)],
        "none": lambda: [],
    }[args.ideal]()
    cat = QuotientCategory(amb, ideal)
    arrows = cat.gabriel_quiver()
    labels = [X.label for X in cat.modules]
    if args.format == "json":
        payload = {"ambient": args.ambient, "ideal": args.ideal, "objects": cat.names, "labels": labels,
                   "arrows": [[cat.names[i], cat.names[j], m] for (i, j), m in sorted(arrows.items())]}
        return 0, to_json("quotient_quiver", payload), "json"
    return 0, quiver_dot(cat.names, arrows, labels, title="quotient"), "dot"


def _verify(ws, args, kind):
    C = ws.subcategory(args.subcat)
    amb = None
    if getattr(args, "ambient", None) == "all":
        from .cluster import Subcategory
        amb = Subcategory(ws.algebra, [(v.name, v.module) for v in ws.ar.vertices], "all")
    try:
        rep = verify_equivalence(kind, C, ws.ar, ambient=amb, strict=True)
        code = 0
    except VerificationFailed as exc:
        rep = getattr(exc, "report", {"error": str(exc)})
        code = 1
    return code, to_json(f"verify_{kind}", rep), "json"


def cmd_verify_F(ws, args):
    return _verify(ws, args, "F")


def cmd_verify_G(ws, args):
    return _verify(ws, args, "G")


def cmd_verify_square(ws, args):
    C = ws.subcategory(args.subcat)
    try:
        rep = verify_square(C, args.n, ws.ar, strict=True)
        code = 0
    except VerificationFailed as exc:
        rep = getattr(exc, "report", {"error": str(exc)})
        code = 1
    return code, to_json("verify_square", rep), "json"


def cmd_dualize(ws, args):
    X = ws.module(args.X)
    D = dual(X)
    if args.format == "json":
        payload = {"input": args.X, "opposite_algebra": algebra_to_toml(D.algebra), "module": module_record(D)}
        return 0, to_json("dualize", payload), "json"
    text = module_to_toml(D, name=f"D({args.X})")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "opposite.alg").write_text(algebra_to_toml(D.algebra))
    return 0, text, "mod"


COMMANDS = {
    "build": (cmd_build, "algebra summary: dimension, basis, Loewy bound", "json"),
    "ar-quiver": (cmd_ar_quiver, "AR quiver of a representation-finite algebra", "dot"),
    "hom": (cmd_hom, "dimensions of Hom, stable Hom and costable Hom", "json"),
    "ext": (cmd_ext, "Ext dimensions for a pair or a full table", "json"),
    "tau": (cmd_tau, "AR translate of a module", "json"),
    "tau-n": (cmd_tau_n, "higher AR translate tau Omega^(n-2)", "json"),
    "check-rigid": (cmd_check_rigid, "n-rigidity of a subcategory", "json"),
    "check-ct": (cmd_check_ct, "n-cluster-tilting test", "json"),
    "m-left": (cmd_m_left, "indecomposables with a one-step M-coresolution", "json"),
    "m-right": (cmd_m_right, "indecomposables with a one-step M-resolution", "json"),
    "omega-bar": (cmd_omega_bar, "cosyzygies of M plus injectives, checked against the costable perpendicular", "json"),
    "quotient-quiver": (cmd_quotient_quiver, "Gabriel quiver of a quotient category", "dot"),
    "verify-F": (cmd_verify_F, "check that F is an equivalence", "json"),
    "verify-G": (cmd_verify_G, "check that G is an equivalence", "json"),
    "verify-square": (cmd_verify_square, "check mu F against G tau_(n-1)", "json"),
    "dualize": (cmd_dualize, "standard dual of a module over the opposite algebra", "mod"),
}

_ONE_MODULE = {"tau", "tau-n", "dualize"}
_TWO_MODULES = {"hom"}
_SUBCAT = {"check-rigid", "check-ct", "m-left", "m-right", "omega-bar", "quotient-quiver",
           "verify-F", "verify-G", "verify-square"}


def build_parser():
    p = argparse.ArgumentParser(prog="quivrep", description="Representation theory of bound quiver algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text, default_format) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("algebra", help=".alg file")
        if name in _ONE_MODULE:
            sp.add_argument("X", help="module: canonical name, Loewy label or .mod file")
        if name in _TWO_MODULES:
            sp.add_argument("X")
            sp.add_argument("Y")
        if name == "ext":
            sp.add_argument("X", nargs="?")
            sp.add_argument("Y", nargs="?")
            sp.add_argument("--degree", type=int, default=1, help="highest Ext degree (default 1)")
            sp.add_argument("--table", action="store_true", help="all pairs of indecomposables")
        if name in ("tau", "tau-n"):
            sp.add_argument("--inverse", action="store_true")
        if name == "tau-n":
            sp.add_argument("--literal", action="store_true", help="use tau Omega-bar^(n-2) for --inverse")
        if name in _SUBCAT or name == "ar-quiver":
            sp.add_argument("--subcat", required=name != "ar-quiver",
                            help='"tau-orbit", a .sub file, or comma-separated module references')
        if name == "quotient-quiver":
            sp.add_argument("--ambient", choices=["all", "m-left", "m-right", "subcat"], default="all")
            sp.add_argument("--ideal", choices=["subcat", "omega-bar", "projectives", "injectives", "none"],
                            default="subcat")
        if name in ("verify-F", "verify-G"):
            sp.add_argument("--ambient", choices=["default", "all"], default="default",
                            help="objects of the quotient: M_L (F) / M_R (G) by default")
        sp.add_argument("--n", type=int, default=2, help="cluster-tilting degree (default 2)")
        sp.add_argument("--field", default=None, help="q or fp:<p> (default: from the file, else q)")
        sp.add_argument("--max-path-len", type=int, default=None)
        sp.add_argument("--budget", type=int, default=10000, help="bound on the number of indecomposables")
        sp.add_argument("--seed", default=None, help="hex seed for randomized decomposition steps")
        sp.add_argument("--out", default=None, help="write the artifact into this directory")
        choices = ["dot", "json"] + (["mod"] if name == "dualize" else [])
        sp.add_argument("--format", choices=choices, default=default_format)
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        set_seed(int(args.seed, 16) if args.seed else None)
        fld = parse_field(args.field) if args.field else None
        A = load_algebra(args.algebra, field=fld, max_len=args.max_path_len)
        ws = Workspace(A, budget=args.budget, n=args.n)
        handler = COMMANDS[args.command][0]
        code, text, ext_ = handler(ws, args)
    except (QuivrepError, FormatError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 2
    finally:
        set_seed(None)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{args.command}.{ext_}"
        path.write_text(text)
        print(str(path), file=stdout)
    else:
        stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
