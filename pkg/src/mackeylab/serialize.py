"""JSON forms for Mackey functors and matrices.

Matrix entries are integers or "a/b" strings.  A Mackey functor document
stores the group spec, the ring, one value per subgroup class, the Weyl
matrices and res/tr on canonical edges ``{"upper", "lower", "witness"}``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError
from .groups import build_group, group_to_json
from .modalg import CoeffRing, FpModule
from .modalg.linalg import normalize_entries, zeros


def matrix_to_json(A) -> list:
    return [[int(x) if Fraction(x).denominator == 1 else f"{Fraction(x).numerator}/{Fraction(x).denominator}"
             for x in row] for row in A]


def matrix_from_json(rows, shape: tuple[int, int]):
    r, c = shape
    if len(rows) != r or any(len(row) != c for row in rows):
        raise DomainError(f"matrix must have shape {r}x{c}")
    out = zeros(r, c)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = Fraction(x)
    return normalize_entries(out)


def mackey_to_json(M) -> dict:
    def edge(e):
        return {"upper": e.upper, "lower": e.lower, "witness": e.witness}

    return {
        "group": group_to_json(M.group),
        "ring": M.ring.name,
        "name": M.name,
        "values": [v.to_json() for v in M.values],
        "weyl": [[matrix_to_json(m) for m in ws] for ws in M.weyl],
        "res": [dict(edge(e), matrix=matrix_to_json(M.res[e])) for e in sorted(M.res)],
        "tr": [dict(edge(e), matrix=matrix_to_json(M.tr[e])) for e in sorted(M.tr)],
    }


def mackey_from_json(data: dict):
    from .mackey import Edge, MackeyFunctor

    try:
        G = build_group(data["group"])
        ring = CoeffRing.parse(data.get("ring", "Z"))
        values = [FpModule.from_json(dict(v, ring=v.get("ring", ring.name))) for v in data["values"]]
        dims = [v.gens for v in values]
        weyl = [[matrix_from_json(m, (dims[c], dims[c])) for m in ws]
                for c, ws in enumerate(data["weyl"])]
        res, tr = {}, {}
        for item in data["res"]:
            e = Edge(int(item["upper"]), int(item["lower"]), int(item["witness"]))
            res[e] = matrix_from_json(item["matrix"], (dims[e.lower], dims[e.upper]))
        for item in data["tr"]:
            e = Edge(int(item["upper"]), int(item["lower"]), int(item["witness"]))
            tr[e] = matrix_from_json(item["matrix"], (dims[e.upper], dims[e.lower]))
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed Mackey functor document: {exc}") from exc
    return MackeyFunctor(G, ring, values, weyl, res, tr, data.get("name", ""))
