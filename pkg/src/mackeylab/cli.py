"""Command-line front end.

Exit codes: 0 success, 1 domain error (error JSON on stderr),
2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .errors import DomainError


class MalformedInput(Exception):
    pass


# -- input parsing --------------------------------------------------------------------

def _load_json(text: str):
    try:
        if os.path.exists(text):
            with open(text, encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read JSON from {text!r}: {exc}") from exc


def _group(text: str):
    from .groups import build_group, parse_group
    try:
        if text.lstrip().startswith("{") or text.endswith(".json"):
            return build_group(_load_json(text))
        return parse_group(text)
    except DomainError as exc:
        raise MalformedInput(str(exc)) from exc


def _ring(text, default: str = "Z"):
    from .modalg import CoeffRing
    if text is None:
        text = default
    try:
        return CoeffRing.parse(text)
    except DomainError as exc:
        raise MalformedInput(str(exc)) from exc


def _intlist(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace("[", "").replace("]", "").split(",") if x.strip()]
    except ValueError as exc:
        raise MalformedInput(f"expected comma-separated integers, got {text!r}") from exc


def _gset(G, text: str):
    """A G-set as comma-separated orbit counts per subgroup class, or as
    JSON {"orbits": [{"stabilizer": c, "count": k}]}."""
    from .groups import from_orbit_form
    n = len(G.subgroup_classes)
    if text.lstrip().startswith("{") or text.endswith(".json"):
        data = _load_json(text)
        counts = [0] * n
        try:
            for o in data["orbits"]:
                counts[int(o["stabilizer"])] += int(o.get("count", 1))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise MalformedInput(f"malformed G-set: {exc}") from exc
    else:
        counts = _intlist(text)
    if len(counts) != n or any(c < 0 for c in counts):
        raise MalformedInput(f"G-set needs {n} non-negative orbit counts")
    return from_orbit_form(G, dict(enumerate(counts)))


def _witt(text: str, N: int, ring):
    from .zhat import parse_witt
    try:
        return parse_witt(text, N, ring)
    except DomainError as exc:
        raise MalformedInput(str(exc)) from exc


def _functor(args):
    from .mackey import burnside_mackey, fixed_point_mackey
    from .serialize import mackey_from_json
    if args.input:
        try:
            return mackey_from_json(_load_json(args.input))
        except DomainError as exc:
            raise MalformedInput(str(exc)) from exc
    G = _group(args.group)
    kind = args.functor
    ring = _ring(args.ring)
    if kind == "burnside":
        return burnside_mackey(G, ring)
    if kind.startswith("fixed:"):
        c = int(kind.split(":", 1)[1])
        if not 0 <= c < len(G.subgroup_classes):
            raise MalformedInput(f"no subgroup class H{c}")
        return fixed_point_mackey(G, G.subgroup_classes[c].representative, ring)
    raise MalformedInput(f"unknown functor {kind!r} (use burnside or fixed:<class>)")


def _cyclic_module(name: str, n: int):
    """Named Z[Z/n]-modules: trivZ, regular, sign, trivZ/m."""
    from .modalg import FpModule, ModuleMap, ZZ, regular_module, trivial_module
    from .modalg.linalg import as_matrix
    if name == "trivZ":
        return trivial_module(ZZ)
    if name == "regular":
        return regular_module(n)
    if name == "sign":
        if n % 2:
            raise DomainError("the sign module needs even order")
        X = FpModule.free(ZZ, 1)
        return X, ModuleMap(X, X, as_matrix([[-1]]))
    if name.startswith("trivZ/"):
        try:
            m = int(name.split("/", 1)[1])
        except ValueError as exc:
            raise MalformedInput(f"bad module {name!r}") from exc
        X = FpModule(ZZ, 1, as_matrix([[m]]))
        return X, ModuleMap(X, X, as_matrix([[1]]))
    if name.lstrip().startswith("{") or name.endswith(".json"):
        from .serialize import matrix_from_json
        data = _load_json(name)
        try:
            X = FpModule.from_json(data["module"])
            s = matrix_from_json(data["sigma"], (X.gens, X.gens))
        except (KeyError, DomainError) as exc:
            raise MalformedInput(f"malformed module document: {exc}") from exc
        return X, ModuleMap(X, X, s)
    raise MalformedInput(f"unknown module {name!r} (use trivZ, regular, sign, trivZ/m or JSON)")


# -- rendering ------------------------------------------------------------------------

def _num(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _jnum(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _table(header: list[str], rows: list[list[str]]) -> str:
    cols = [header] + rows
    widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
    lines = []
    for r in cols:
        lines.append("  ".join(s.rjust(w) if i else s.ljust(w) for i, (s, w) in enumerate(zip(r, widths))).rstrip())
    return "\n".join(lines)


def _module_json(X) -> dict:
    tors, free = X.invariant_factors()
    return {"text": str(X), "free_rank": free, "torsion": [_jnum(d) for d in tors]}


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _class_labels(G) -> list[str]:
    return [f"H{c.index}" for c in G.subgroup_classes]


# -- commands -------------------------------------------------------------------------

def cmd_marks(args):
    from .burnside import table_of_marks
    G = _group(args.group_pos or args.group)
    T = table_of_marks(G)
    labels = _class_labels(G)
    rows = T.rows()
    text = _table([""] + labels, [[f"[G/{labels[k]}]"] + [str(v) for v in row] for k, row in enumerate(rows)])
    classes = [{"label": labels[c.index], "order": c.order, "conjugates": len(c.conjugates)}
               for c in G.subgroup_classes]
    _emit(args, f"{G.name}\n{text}", {"group": G.name, "classes": classes, "marks": rows})


def cmd_bmul(args):
    from .burnside import burnside_element, burnside_product, format_ring_element, table_of_marks
    G = _group(args.group)
    n = len(G.subgroup_classes)
    a, b = _intlist(args.a), _intlist(args.b)
    if len(a) != n or len(b) != n:
        raise MalformedInput(f"elements need {n} coefficients")
    prod = burnside_product(burnside_element(G, a), burnside_element(G, b))
    vec = prod.class_vector()
    ghost = table_of_marks(G).ghost(vec)
    _emit(args, format_ring_element(vec),
          {"group": G.name, "product": vec, "text": format_ring_element(vec), "ghost": ghost})


def cmd_homs(args):
    from .burnside import hom_basis
    G = _group(args.group)
    S1, S2 = _gset(G, args.source), _gset(G, args.target)
    basis = hom_basis(S1, S2)
    lines = [f"{len(basis)} basis spans"]
    items = []
    for k in basis:
        lines.append(f"  {k.left} <- G/H{k.cls} -> {k.right}")
        items.append({"class": k.cls, "left": k.left, "right": k.right})
    _emit(args, "\n".join(lines), {"rank": len(basis), "basis": items})


def cmd_mackey(args):
    from .mackey import (categorical_fixed_points, check_mackey_axioms, evaluate,
                         geometric_fixed_points, mutation_fuzz, phi_infl_is_identity,
                         unit_is_surjective)
    M = _functor(args)
    G = M.group
    labels = _class_labels(G)
    if args.action == "check":
        r = check_mackey_axioms(M)
        data = {"passed": r.passed, "violations": [
            {"identity": v.identity, "where": list(v.where), "detail": v.detail}
            for v in r.malformed + r.violations]}
        _emit(args, str(r), data)
        return 0 if r.passed else 1
    if args.action in ("phi", "psi"):
        c = args.subgroup
        if c is None or not 0 <= c < len(labels):
            raise MalformedInput("--subgroup must name a subgroup class index")
        H = G.subgroup_classes[c].representative
        if args.action == "phi":
            P = geometric_fixed_points(M, H)
        else:
            P = categorical_fixed_points(M, H).functor
        W = P.group
        vals = [str(v) for v in P.values]
        rows = [[f"H{i}", str(cl.order), v] for i, (cl, v) in enumerate(zip(W.subgroup_classes, vals))]
        _emit(args, f"{args.action} at {labels[c]} over {W.name} (order {W.order})\n"
              + _table(["class", "order", "value"], rows),
              {"subgroup": c, "order": W.order, "values": [_module_json(v) for v in P.values]})
        return 0
    if args.action == "infl":
        rows, data = [], []
        for c, cl in enumerate(G.subgroup_classes):
            R = cl.representative
            if not G.is_normal(R):
                continue
            a = phi_infl_is_identity(geometric_fixed_points(M, R), G, R)
            b = unit_is_surjective(M, R)
            rows.append([labels[c], str(a).lower(), str(b).lower()])
            data.append({"subgroup": c, "phi_infl_identity": a, "unit_surjective": b})
        _emit(args, _table(["normal", "phi_infl_id", "unit_onto"], rows), data)
        return 0 if all(d["phi_infl_identity"] and d["unit_surjective"] for d in data) else 1
    if args.action == "eval":
        if not args.gset:
            raise MalformedInput("--gset is required for eval")
        X = evaluate(M, _gset(G, args.gset))
        _emit(args, str(X), _module_json(X))
        return 0
    if args.action == "fuzz":
        r = mutation_fuzz(M, args.count, args.seed)
        text = (f"rejected {r.rejected}/{r.total} ({r.rate:.1%}), "
                f"pinpointed {r.pinpointed}, undetected valid {sum(r.undetected_valid)}/{len(r.undetected)}")
        _emit(args, text, {"total": r.total, "rejected": r.rejected, "pinpointed": r.pinpointed,
                           "identities": r.identities,
                           "undetected_valid": sum(r.undetected_valid),
                           "undetected": len(r.undetected)})
        return 0
    raise MalformedInput(f"unknown mackey action {args.action!r}")


def cmd_zhat(args):
    from .modalg import PLocal
    from .zhat import (burnside_truncation, canonical_filtration, change_ring,
                       derived_burnside_homology, level_fixed_points, p_local_idempotent,
                       p_typical_component)
    N = args.N
    if N < 1:
        raise MalformedInput("-N must be positive")
    act = args.action
    ring = _ring(args.ring, "Q")
    if act == "mul":
        if not args.expr:
            raise MalformedInput("an expression is required")
        out = _witt(args.expr[0], N, ring)
        for e in args.expr[1:]:
            out = out * _witt(e, N, ring)
        _emit(args, str(out), out.to_json())
    elif act == "ghost":
        if not args.expr:
            raise MalformedInput("an expression is required")
        a = _witt(args.expr[0], N, ring)
        g = a.ghost_vector()
        _emit(args, " ".join(_num(x) for x in g), {"ghost": [_jnum(x) for x in g]})
    elif act == "idem":
        e = p_local_idempotent(args.p, args.l, N)
        _emit(args, str(e), e.to_json())
    elif act == "ptypical":
        A = change_ring(burnside_truncation(N, PLocal(args.p)), PLocal(args.p))
        n = args.level
        rows, data = [], []
        for l in range(1, N + 1):
            if l % args.p == 0:
                continue
            C = p_typical_component(A, args.p, l, n)
            if C.is_zero():
                continue
            rows.append([str(l), str(C)])
            data.append({"l": l, "component": _module_json(C)})
        _emit(args, _table(["l", "component"], rows), {"level": n, "components": data})
    elif act == "filt":
        A = burnside_truncation(N, ring)
        F = canonical_filtration(A, args.n, args.level)
        basis = A.basis[args.level]
        spans = [[_jnum(x) for x in F.gens[:, j]] for j in range(F.gens.shape[1])]
        text = (f"F^{args.n} at level {args.level}: {F.module} "
                f"({'exact' if F.exact else 'approximate'})")
        _emit(args, text, {"basis_levels": basis, "generators": spans, "exact": F.exact,
                           "module": _module_json(F.module)})
    elif act == "phi":
        A = burnside_truncation(N, ring)
        P = level_fixed_points(A, args.n)
        rows = [[str(args.n // cl.order), str(v)] for cl, v in zip(P.group.subgroup_classes, P.values)]
        _emit(args, _table(["level", "value"], rows),
              {"n": args.n, "values": [{"level": args.n // cl.order, **_module_json(v)}
                                       for cl, v in zip(P.group.subgroup_classes, P.values)]})
    elif act == "dbh":
        _dbh(args)
    elif act == "glue":
        _glue(args)
    else:
        raise MalformedInput(f"unknown zhat action {act!r}")
    return 0


def cmd_tate(args):
    from .modalg import cyclic_tate
    X, s = _cyclic_module(args.module, args.n)
    r = cyclic_tate(args.n, X, s)
    _emit(args, str(r), {"n": args.n, "even": _module_json(r.even), "odd": _module_json(r.odd),
                         "periodicity": r.periodicity_generator})
    return 0


def _dbh(args):
    from .zhat import derived_burnside_homology
    S, Sp = _intlist(args.S), _intlist(args.Sp)
    res = derived_burnside_homology(S, Sp, args.deg, args.N)
    rows = [[str(n), str(X)] for n, X in enumerate(res, 1)]
    _emit(args, _table(["level", f"H_{args.deg}"], rows),
          {"degree": args.deg, "levels": [{"level": n, **_module_json(X)} for n, X in enumerate(res, 1)]})
    return 0


def _glue(args):
    from .modalg import TateResult
    from .zhat import gluing_value
    X, s = _cyclic_module(args.module, args.n)
    g = gluing_value(args.n, args.l, X, s)
    if isinstance(g.payload, TateResult):
        payload = {"even": _module_json(g.payload.even), "odd": _module_json(g.payload.odd)}
    else:
        payload = _module_json(g.payload)
    _emit(args, str(g), {"case": g.case, "value": payload, "multiplicity": list(g.multiplicity)})
    return 0


# -- parser ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": message, "kind": "malformed"}), file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--ring", default=None,
                        help="coefficient ring: Z, Q, Z/m, Z_(p) (default Z, or Q for zhat)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")

    p = _Parser(prog="mackeylab", description="Exact computations with Burnside rings, "
                "Mackey functors and profinite cyclic Mackey data.")
    p.add_argument("--version", action="version", version=f"mackeylab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("marks", parents=[common], help="table of marks")
    q.add_argument("group_pos", nargs="?", metavar="GROUP")
    q.add_argument("--group", default="cyclic:1")
    q.set_defaults(func=cmd_marks)

    q = sub.add_parser("bmul", parents=[common], help="product in the Burnside ring")
    q.add_argument("--group", required=True)
    q.add_argument("a", help="orbit coefficients, e.g. 0,1,0")
    q.add_argument("b")
    q.set_defaults(func=cmd_bmul)

    q = sub.add_parser("homs", parents=[common], help="basis of spans between G-sets")
    q.add_argument("--group", required=True)
    q.add_argument("source")
    q.add_argument("target")
    q.set_defaults(func=cmd_homs)

    q = sub.add_parser("mackey", parents=[common], help="Mackey functor operations")
    q.add_argument("action", choices=["check", "phi", "psi", "infl", "eval", "fuzz"])
    q.add_argument("--group", default="cyclic:1")
    q.add_argument("--functor", default="burnside", help="burnside or fixed:<class index>")
    q.add_argument("--input", help="Mackey functor JSON (file or literal)")
    q.add_argument("--subgroup", type=int, help="subgroup class index")
    q.add_argument("--gset", help="orbit counts per class, or G-set JSON")
    q.add_argument("--count", type=int, default=50)
    q.set_defaults(func=cmd_mackey)

    q = sub.add_parser("zhat", parents=[common], help="profinite cyclic computations")
    q.add_argument("action", choices=["mul", "ghost", "idem", "ptypical", "filt", "phi", "dbh", "glue"])
    q.add_argument("expr", nargs="*")
    q.add_argument("-N", type=int, default=12, help="truncation level")
    q.add_argument("-p", type=int, default=2)
    q.add_argument("-l", type=int, default=1)
    q.add_argument("-n", "--n", type=int, default=1)
    q.add_argument("--level", type=int, default=1)
    q.add_argument("--deg", type=int, default=0)
    q.add_argument("--S", default="1")
    q.add_argument("--Sp", default="1")
    q.add_argument("--module", default="trivZ")
    q.set_defaults(func=cmd_zhat)

    q = sub.add_parser("tate", parents=[common], help="Tate cohomology of a cyclic group")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--module", default="trivZ")
    q.set_defaults(func=cmd_tate)

    q = sub.add_parser("dbh", parents=[common], help="derived completed Burnside homology")
    q.add_argument("-N", type=int, default=12)
    q.add_argument("--deg", type=int, default=0)
    q.add_argument("--S", default="1", help="levels of the first set, e.g. 1,2")
    q.add_argument("--Sp", default="1")
    q.set_defaults(func=lambda a: _dbh(a))

    q = sub.add_parser("glue", parents=[common], help="gluing value between two levels")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--module", default="trivZ")
    q.set_defaults(func=lambda a: _glue(a))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # argparse stops filling `expr` once an option follows it
    if extra:
        if getattr(args, "expr", None) is None or any(x.startswith("--") for x in extra):
            parser.error("unrecognized arguments: " + " ".join(extra))
        args.expr = list(args.expr) + extra
    try:
        code = args.func(args)
    except MalformedInput as exc:
        print(json.dumps({"error": str(exc), "kind": "malformed"}), file=sys.stderr)
        return 2
    except DomainError as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}), file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
