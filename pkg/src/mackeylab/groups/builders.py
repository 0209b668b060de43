"""Constructors for concrete groups and the group spec format."""

from __future__ import annotations

from functools import lru_cache

from ..errors import DomainError, SizeBoundError
from .group import FiniteGroup, max_group_order


@lru_cache(maxsize=None)
def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError("cyclic group order must be >= 1")
    if n > max_group_order():
        raise SizeBoundError(f"group order {n} exceeds bound {max_group_order()}")
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    G = FiniteGroup(mul, f"cyclic:{n}", generators=[1] if n > 1 else [], check=False)
    G.spec = {"kind": "cyclic", "n": n}
    return G


def perm_group(degree: int, gens, name: str = "") -> FiniteGroup:
    """Closure of permutations given as image lists of 0..degree-1.

    Elements are ordered lexicographically by image tuple, so the identity
    gets index 0.  The product a*b means "apply b, then a".
    """
    if degree < 0:
        raise DomainError("degree must be non-negative")
    gens = [tuple(int(x) for x in g) for g in gens]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise DomainError(f"{list(g)} is not a permutation of {degree} points")
    ident = tuple(range(degree))
    bound = max_group_order()
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(degree))
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if len(elems) > bound:
                        raise SizeBoundError(f"closure exceeds group order bound {bound}")
        frontier = nxt
    order = sorted(elems)
    pos = {p: i for i, p in enumerate(order)}
    mul = [[pos[tuple(a[b[i]] for i in range(degree))] for b in order] for a in order]
    G = FiniteGroup(mul, name or f"perm group of order {len(order)}", check=False)
    G.spec = {"kind": "perm", "degree": degree, "gens": [list(g) for g in gens]}
    G.permutations = tuple(order)
    return G


@lru_cache(maxsize=None)
def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    if n < 1:
        raise DomainError("dihedral group needs n >= 1")
    if n <= 2:
        base = cyclic(2) if n == 1 else direct_product(cyclic(2), cyclic(2))
        G = FiniteGroup(base.mul, check=False)
        G.name = f"dihedral:{n}"
        G.spec = {"kind": "dihedral", "n": n}
        return G
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    G = perm_group(n, [rot, ref], f"dihedral:{n}")
    G.spec = {"kind": "dihedral", "n": n}
    return G


@lru_cache(maxsize=None)
def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        G = FiniteGroup([[0]], check=False)
    else:
        gens = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
        G = perm_group(n, gens)
    G.name = f"symmetric:{n}"
    G.spec = {"kind": "symmetric", "n": n}
    return G


@lru_cache(maxsize=None)
def quaternion() -> FiniteGroup:
    # elements (sign, unit) with units 1, i, j, k; ordered 1,-1,i,-i,j,-j,k,-k
    table = {("1", "1"): (1, "1"), ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"),
             ("k", "k"): (-1, "1"), ("i", "j"): (1, "k"), ("j", "k"): (1, "i"),
             ("k", "i"): (1, "j"), ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"),
             ("i", "k"): (-1, "j")}
    elems = [(s, u) for u in "1ijk" for s in (1, -1)]
    pos = {e: i for i, e in enumerate(elems)}

    def mult(a, b):
        (sa, ua), (sb, ub) = a, b
        if ua == "1":
            s, u = 1, ub
        elif ub == "1":
            s, u = 1, ua
        else:
            s, u = table[(ua, ub)]
        return (sa * sb * s, u)

    mul = [[pos[mult(a, b)] for b in elems] for a in elems]
    G = FiniteGroup(mul, "quaternion")
    G.spec = {"kind": "quaternion"}
    return G


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    mul = [[G.mul[a // m][b // m] * m + H.mul[a % m][b % m] for b in range(n * m)]
           for a in range(n * m)]
    P = FiniteGroup(mul, f"{G.name} x {H.name}", check=False)
    P.spec = {"kind": "product", "factors": [group_to_json(G), group_to_json(H)]}
    return P


@lru_cache(maxsize=None)
def klein() -> FiniteGroup:
    G = direct_product(cyclic(2), cyclic(2))
    G.name = "klein"
    G.spec = {"kind": "klein"}
    return G


def from_table(mul, name: str = "") -> FiniteGroup:
    G = FiniteGroup(mul, name or "table group")
    G.spec = {"kind": "table", "mul": [list(r) for r in G.mul]}
    return G


def build_group(spec) -> FiniteGroup:
    """Build a group from a spec dict or a short string such as ``cyclic:4``.

    Supported kinds: cyclic, table, perm, dihedral, symmetric, quaternion,
    klein, product.
    """
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, str):
        return parse_group(spec)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise DomainError("group spec must be an object with a 'kind' field")
    kind = spec["kind"]
    try:
        if kind == "cyclic":
            return cyclic(int(spec["n"]))
        if kind == "table":
            return from_table(spec["mul"], spec.get("name", ""))
        if kind == "perm":
            return perm_group(int(spec["degree"]), spec.get("gens", []), spec.get("name", ""))
        if kind == "dihedral":
            return dihedral(int(spec["n"]))
        if kind == "symmetric":
            return symmetric(int(spec["n"]))
        if kind == "quaternion":
            return quaternion()
        if kind == "klein":
            return klein()
        if kind == "product":
            f = spec["factors"]
            out = build_group(f[0])
            for g in f[1:]:
                out = direct_product(out, build_group(g))
            return out
    except KeyError as exc:
        raise DomainError(f"group spec of kind {kind!r} is missing {exc}") from None
    raise DomainError(f"unknown group kind {kind!r}")


def parse_group(text: str) -> FiniteGroup:
    t = text.strip().lower()
    if t in ("quaternion", "q8"):
        return quaternion()
    if t in ("klein", "v4"):
        return klein()
    if t in ("trivial", "1"):
        return cyclic(1)
    if ":" in t:
        kind, _, arg = t.partition(":")
        try:
            n = int(arg)
        except ValueError:
            raise DomainError(f"cannot parse group {text!r}") from None
        if kind in ("cyclic", "c", "z"):
            return cyclic(n)
        if kind in ("dihedral", "d"):
            return dihedral(n)
        if kind in ("symmetric", "s"):
            return symmetric(n)
    raise DomainError(f"cannot parse group {text!r}")


def group_to_json(G: FiniteGroup) -> dict:
    spec = getattr(G, "spec", None)
    if spec is not None:
        return spec
    return {"kind": "table", "mul": [list(r) for r in G.mul]}
