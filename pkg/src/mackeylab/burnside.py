"""Spans of finite G-sets, the Burnside ring and its table of marks.

A span S1 <- X -> S2 with X transitive is determined up to isomorphism by a
subgroup class c and the images (s1, s2) of the base coset of G/R_c, taken
up to the action of the normalizer of R_c.  ``SpanKey`` stores the minimal
such triple; a general span is an integer combination of keys.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError
from .groups import (FiniteGroup, GMap, GSet, coset_space, fibered_product, from_orbit_form,
                     point, product)
from .modalg.linalg import as_matrix, solve, zeros


@dataclass(frozen=True, order=True)
class SpanKey:
    cls: int
    left: int
    right: int


def canonical_key(G: FiniteGroup, c: int, s1: int, s2: int, S1: GSet, S2: GSet) -> SpanKey:
    N = G.subgroup_classes[c].normalizer
    best = min((S1.action[n][s1], S2.action[n][s2]) for n in N)
    return SpanKey(c, best[0], best[1])


class SpanClass:
    """A transitive span materialized as G-sets and G-maps."""

    def __init__(self, S1: GSet, S2: GSet, key: SpanKey):
        G = S1.group
        self.canonical_key = key
        self.left = S1
        self.right = S2
        self.middle = coset_space(G, G.subgroup_classes[key.cls].representative)
        reps = self.middle.coset_reps
        self.leftmap = GMap(self.middle, S1, [S1.action[r][key.left] for r in reps], check=False)
        self.rightmap = GMap(self.middle, S2, [S2.action[r][key.right] for r in reps], check=False)

    def __eq__(self, other):
        return isinstance(other, SpanClass) and self.canonical_key == other.canonical_key

    def __hash__(self):
        return hash(self.canonical_key)


def _same_gset(a: GSet, b: GSet) -> bool:
    return a is b or (a.group is b.group and a.action == b.action)


class BurnsideElement:
    """An integer combination of spans S1 -> S2."""

    def __init__(self, group: FiniteGroup, source: GSet, target: GSet, coeffs=None):
        self.group = group
        self.source = source
        self.target = target
        self.coeffs: dict[SpanKey, int] = {k: int(v) for k, v in (coeffs or {}).items() if v}

    def _compatible(self, other: "BurnsideElement") -> None:
        if self.group is not other.group:
            raise DomainError("Burnside elements over different groups")
        if not (_same_gset(self.source, other.source) and _same_gset(self.target, other.target)):
            raise DomainError("Burnside elements with different source or target")

    def __add__(self, other):
        self._compatible(other)
        c = Counter(self.coeffs)
        c.update(other.coeffs)
        return BurnsideElement(self.group, self.source, self.target, c)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "BurnsideElement":
        return BurnsideElement(self.group, self.source, self.target,
                               {key: k * v for key, v in self.coeffs.items()})

    def __rmul__(self, k: int):
        return self.scale(k)

    def __mul__(self, other):
        if isinstance(other, BurnsideElement):
            return burnside_product(self, other)
        return self.scale(other)

    def __eq__(self, other):
        return (isinstance(other, BurnsideElement) and self.group is other.group
                and _same_gset(self.source, other.source) and _same_gset(self.target, other.target)
                and self.coeffs == other.coeffs)

    def __repr__(self):
        terms = " + ".join(f"{v}*[{k.cls},{k.left},{k.right}]" for k, v in sorted(self.coeffs.items()))
        return f"BurnsideElement({terms or '0'})"

    def spans(self) -> list[tuple[SpanClass, int]]:
        return [(SpanClass(self.source, self.target, k), v) for k, v in sorted(self.coeffs.items())]

    def class_vector(self) -> list[int]:
        """Coefficients over subgroup classes, for elements of A^G = B(pt, pt)."""
        vec = [0] * len(self.group.subgroup_classes)
        for k, v in self.coeffs.items():
            vec[k.cls] += v
        return vec

    def __str__(self):
        if self.source.size == 1 and self.target.size == 1:
            return format_ring_element(self.class_vector())
        return repr(self)


def format_ring_element(vec) -> str:
    terms = []
    for c, v in enumerate(vec):
        if v == 0:
            continue
        sign = "-" if v < 0 else "+"
        mag = abs(v)
        body = f"[G/H{c}]" if mag == 1 else f"{mag}*[G/H{c}]"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def span_element(X: GSet, f1: GMap, f2: GMap) -> BurnsideElement:
    """The class of an arbitrary span S1 <- X -> S2, split into orbits."""
    G = X.group
    S1, S2 = f1.target, f2.target
    coeffs: Counter = Counter()
    for orb, stab in zip(X.orbits, X.orbit_stabilizers):
        c = G.class_of(stab)
        w = G.witness(stab)
        x = X.action[G.inv[w]][orb[0]]
        coeffs[canonical_key(G, c, f1.graph[x], f2.graph[x], S1, S2)] += 1
    return BurnsideElement(G, S1, S2, coeffs)


def identity_span(S: GSet) -> BurnsideElement:
    return span_element(S, GMap.identity(S), GMap.identity(S))


def hom_basis(S1: GSet, S2: GSet) -> list[SpanKey]:
    """Basis of B(S1, S2): per class c, the W-orbits on (S1 x S2)^{R_c}."""
    G = S1.group
    out = []
    for cls in G.subgroup_classes:
        R = cls.representative
        F1 = S1.fixed_point_set(R)
        F2 = S2.fixed_point_set(R)
        keys = {canonical_key(G, cls.index, a, b, S1, S2) for a in F1 for b in F2}
        out.extend(sorted(keys))
    return out


def basis_element(S1: GSet, S2: GSet, key: SpanKey) -> BurnsideElement:
    return BurnsideElement(S1.group, S1, S2, {key: 1})


def span_compose(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """b o a for a: S1 -> S2 and b: S2 -> S3, by fibered products."""
    if a.group is not b.group:
        raise DomainError("span composition over different groups")
    if not _same_gset(a.target, b.source):
        raise DomainError("span composition with mismatched middle object")
    G = a.group
    total: Counter = Counter()
    for k1, v1 in a.coeffs.items():
        s1 = SpanClass(a.source, a.target, k1)
        for k2, v2 in b.coeffs.items():
            s2 = SpanClass(b.source, b.target, k2)
            P, p1, p2 = fibered_product(s1.rightmap, s2.leftmap)
            left = GMap(P, a.source, [s1.leftmap.graph[x] for x in p1.graph], check=False)
            right = GMap(P, b.target, [s2.rightmap.graph[y] for y in p2.graph], check=False)
            for k, v in span_element(P, left, right).coeffs.items():
                total[k] += v * v1 * v2
    return BurnsideElement(G, a.source, b.target, total)


# -- the Burnside ring A^G = B(pt, pt) -------------------------------------------

def _point(G: FiniteGroup) -> GSet:
    P = G.__dict__.get("_point_gset")
    if P is None:
        P = point(G)
        G.__dict__["_point_gset"] = P
    return P


def burnside_element(G: FiniteGroup, vec) -> BurnsideElement:
    """The element sum_c vec[c] [G/H_c] of A^G (vec may also be a dict)."""
    items = vec.items() if isinstance(vec, dict) else enumerate(vec)
    P = _point(G)
    return BurnsideElement(G, P, P, {SpanKey(int(c), 0, 0): v for c, v in items})


def orbit_gset(G: FiniteGroup, c: int) -> GSet:
    return coset_space(G, G.subgroup_classes[c].representative)


def burnside_product(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """Product in A^G: [G/H][G/K] is the orbit decomposition of G/H x G/K."""
    if a.group is not b.group:
        raise DomainError("Burnside product over different groups")
    G = a.group
    out: Counter = Counter()
    va, vb = a.class_vector(), b.class_vector()
    for h, x in enumerate(va):
        if not x:
            continue
        for k, y in enumerate(vb):
            if not y:
                continue
            for c, m in product(orbit_gset(G, h), orbit_gset(G, k)).orbit_form.items():
                out[c] += x * y * m
    return burnside_element(G, out)


@dataclass(frozen=True)
class MarksTable:
    """marks[k, h] = |(G/H_k)^{H_h}|: rows are orbits, columns subgroups."""

    group: FiniteGroup
    marks: np.ndarray

    @property
    def size(self) -> int:
        return self.marks.shape[0]

    def ghost(self, a) -> list[int]:
        vec = a.class_vector() if isinstance(a, BurnsideElement) else list(a)
        n = self.size
        return [sum(vec[k] * self.marks[k, h] for k in range(n)) for h in range(n)]

    def from_ghost(self, g) -> list:
        """Inverse of the ghost map on its image (entries may be fractions
        when g is not in the image)."""
        x = solve(self.marks.T, as_matrix([[v] for v in g]))
        if x is None:
            raise DomainError("vector is not in the image of the ghost map")
        return [x[i, 0] for i in range(self.size)]

    def rows(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.marks]


def table_of_marks(G: FiniteGroup) -> MarksTable:
    classes = G.subgroup_classes
    n = len(classes)
    M = zeros(n, n)
    for k, ck in enumerate(classes):
        S = orbit_gset(G, k)
        for h, ch in enumerate(classes):
            if ch.order <= ck.order and ck.order % ch.order == 0:
                M[k, h] = len(S.fixed_point_set(ch.representative))
    return MarksTable(G, M)


def ghost(a: BurnsideElement) -> list[int]:
    return table_of_marks(a.group).ghost(a)


def burnside_ring_constants(G: FiniteGroup) -> np.ndarray:
    """c[h, k, l] with [G/H_h][G/H_k] = sum_l c[h, k, l] [G/H_l].

    Computed through the marks: the ghost of a product is the pointwise
    product of ghosts, and the marks matrix is invertible over Q.
    """
    T = table_of_marks(G)
    n = T.size
    out = np.zeros((n, n, n), dtype=object)
    for h in range(n):
        for k in range(h, n):
            g = [T.marks[h, j] * T.marks[k, j] for j in range(n)]
            coeffs = T.from_ghost(g)
            for l in range(n):
                out[h, k, l] = out[k, h, l] = int(coeffs[l])
    return out


def hom_basis_orbit_count(S1: GSet, S2: GSet) -> int:
    """Independent count of transitive spans over S1 x S2: each orbit G/K of
    S1 x S2 contributes one span per K-conjugacy class of subgroups of K."""
    G = S1.group
    P = product(S1, S2)
    total = 0
    for stab in P.orbit_stabilizers:
        Kg, _ = G.subgroup_group(stab)
        total += len(Kg.subgroup_classes)
    return total


def gset_from_orbits(G: FiniteGroup, counts) -> GSet:
    return from_orbit_form(G, counts)
