"""Finite G-sets and the set-level constructions on them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from ..errors import DomainError
from .group import FiniteGroup, Subgroup


class GSet:
    """A finite G-set on points 0..size-1.

    ``action[g][x]`` is g.x.  Orbits are listed by their minimal point and
    the minimal point of each orbit is its representative.
    """

    def __init__(self, group: FiniteGroup, action, check: bool = True):
        self.group = group
        self.action = tuple(tuple(int(x) for x in row) for row in action)
        if len(self.action) != group.order:
            raise DomainError("action needs one row per group element")
        self.size = len(self.action[0]) if self.action else 0
        if check:
            self._validate()

    def _validate(self) -> None:
        G = self.group
        pts = range(self.size)
        if any(len(row) != self.size for row in self.action):
            raise DomainError("ragged action table")
        if any(self.action[0][x] != x for x in pts):
            raise DomainError("identity does not act trivially")
        for g in G.generators:
            ag = self.action[g]
            for h in range(G.order):
                agh = self.action[G.mul[g][h]]
                ah = self.action[h]
                if any(agh[x] != ag[ah[x]] for x in pts):
                    raise DomainError("action is not compatible with multiplication")

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"GSet(size={self.size}, orbits={dict(sorted(self.orbit_form.items()))})"

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.size
        out = []
        for x in range(self.size):
            if seen[x]:
                continue
            orb = sorted({self.action[g][x] for g in range(self.group.order)})
            for y in orb:
                seen[y] = True
            out.append(tuple(orb))
        return tuple(out)

    @cached_property
    def quotient(self) -> tuple[int, ...]:
        """q: S -> S/G as orbit indices."""
        q = [0] * self.size
        for i, orb in enumerate(self.orbits):
            for x in orb:
                q[x] = i
        return tuple(q)

    def stabilizer(self, x: int) -> Subgroup:
        return frozenset(g for g in range(self.group.order) if self.action[g][x] == x)

    @cached_property
    def transporters(self) -> tuple[int, ...]:
        """For each point x, the minimal g with g.o = x, o its orbit representative."""
        out = [-1] * self.size
        for orb in self.orbits:
            o = orb[0]
            for g in range(self.group.order):
                y = self.action[g][o]
                if out[y] < 0:
                    out[y] = g
        return tuple(out)

    @cached_property
    def orbit_stabilizers(self) -> tuple[Subgroup, ...]:
        return tuple(self.stabilizer(orb[0]) for orb in self.orbits)

    @cached_property
    def orbit_classes(self) -> tuple[int, ...]:
        return tuple(self.group.class_of(S) for S in self.orbit_stabilizers)

    @cached_property
    def orbit_form(self) -> Counter:
        return Counter(self.orbit_classes)

    def fixed_point_set(self, H) -> list[int]:
        return [x for x in range(self.size) if all(self.action[h][x] == x for h in H)]

    def is_isomorphic(self, other: "GSet") -> bool:
        return self.group is other.group and self.orbit_form == other.orbit_form

    def to_json(self) -> dict:
        return {"orbits": [{"stabilizer": c, "count": k} for c, k in sorted(self.orbit_form.items())]}


class GMap:
    """An equivariant map of G-sets."""

    def __init__(self, source: GSet, target: GSet, graph, check: bool = True):
        self.source = source
        self.target = target
        self.graph = tuple(int(x) for x in graph)
        if len(self.graph) != source.size:
            raise DomainError("graph must list one image per source point")
        if check:
            G = source.group
            for g in G.generators:
                for x in range(source.size):
                    if self.graph[source.action[g][x]] != target.action[g][self.graph[x]]:
                        raise DomainError("map is not G-equivariant")

    def __call__(self, x: int) -> int:
        return self.graph[x]

    @classmethod
    def identity(cls, S: GSet) -> "GMap":
        return cls(S, S, range(S.size), check=False)


# -- constructions -------------------------------------------------------------

def _cache(G: FiniteGroup) -> dict:
    c = G.__dict__.get("_coset_cache")
    if c is None:
        c = {}
        G.__dict__["_coset_cache"] = c
    return c


def coset_space(G: FiniteGroup, H) -> GSet:
    """G/H with cosets ordered by their minimal element (H itself is point 0)."""
    H = frozenset(H)
    cache = _cache(G)
    if H in cache:
        return cache[H]
    index: dict[int, int] = {}
    reps = []
    for g in range(G.order):
        if g in index:
            continue
        i = len(reps)
        reps.append(g)
        for h in H:
            index[G.mul[g][h]] = i
    action = [[index[G.mul[g][r]] for r in reps] for g in range(G.order)]
    S = GSet(G, action, check=False)
    S.coset_reps = tuple(reps)
    S.coset_index = index
    cache[H] = S
    return S


def point(G: FiniteGroup) -> GSet:
    return GSet(G, [[0]] * G.order, check=False)


def empty(G: FiniteGroup) -> GSet:
    return GSet(G, [[]] * G.order, check=False)


def disjoint_union(*sets: GSet) -> GSet:
    G = sets[0].group
    action = []
    for g in range(G.order):
        row = []
        off = 0
        for S in sets:
            row.extend(off + y for y in S.action[g])
            off += S.size
        action.append(row)
    return GSet(G, action, check=False)


def from_orbit_form(G: FiniteGroup, counts) -> GSet:
    """Rebuild the disjoint union of G/H_c over a class -> multiplicity map."""
    parts = []
    classes = G.subgroup_classes
    for c, k in sorted(dict(counts).items()):
        if not 0 <= c < len(classes):
            raise DomainError(f"no subgroup class {c}")
        parts.extend([coset_space(G, classes[c].representative)] * int(k))
    if not parts:
        return empty(G)
    return disjoint_union(*parts)


def product(S1: GSet, S2: GSet) -> GSet:
    """S1 x S2 with point (a, b) at index a*|S2| + b."""
    G = S1.group
    n2 = S2.size
    action = [[S1.action[g][a] * n2 + S2.action[g][b] for a in range(S1.size) for b in range(n2)]
              for g in range(G.order)]
    return GSet(G, action, check=False)


def fibered_product(f: GMap, g: GMap) -> tuple[GSet, GMap, GMap]:
    if f.target is not g.target and f.target.size != g.target.size:
        raise DomainError("fibered product needs maps with a common target")
    S1, S2 = f.source, g.source
    G = S1.group
    pts = [(a, b) for a in range(S1.size) for b in range(S2.size) if f.graph[a] == g.graph[b]]
    pos = {p: i for i, p in enumerate(pts)}
    action = [[pos[(S1.action[h][a], S2.action[h][b])] for a, b in pts] for h in range(G.order)]
    P = GSet(G, action, check=False)
    return P, GMap(P, S1, [a for a, _ in pts], check=False), GMap(P, S2, [b for _, b in pts], check=False)


def orbit_decompose(S: GSet) -> Counter:
    """Multiset of stabilizer classes, one per orbit."""
    return Counter(S.orbit_form)


def fixed_points(S: GSet, H) -> tuple[GSet, tuple[int, ...], FiniteGroup]:
    """S^H as a W-set, W = N_G(H)/H.

    Returns (the W-set, the inclusion of its points into S, W).
    """
    G = S.group
    H = frozenset(H)
    c = G.class_of(H)
    cls = G.subgroup_classes[c]
    if H == cls.representative:
        W, proj, lift = cls.weyl, cls.weyl_map, cls.weyl_lift
    else:
        W, proj = _weyl_of(G, H)
        lift = [0] * W.order
        for g in sorted(G.normalizer(H), reverse=True):
            lift[proj[g]] = g
    pts = tuple(S.fixed_point_set(H))
    pos = {x: i for i, x in enumerate(pts)}
    action = [[pos[S.action[lift[w]][x]] for x in pts] for w in range(W.order)]
    return GSet(W, action, check=False), pts, W


def _weyl_of(G: FiniteGroup, H: Subgroup):
    from .group import _coset_group
    return _coset_group(G, G.normalizer(H), H, "W")


def restrict(S: GSet, H) -> tuple[GSet, FiniteGroup, tuple[int, ...]]:
    """The restriction of S to H, as a set over H viewed as its own group."""
    Hg, emb = S.group.subgroup_group(H)
    action = [S.action[emb[i]] for i in range(Hg.order)]
    return GSet(Hg, action, check=False), Hg, emb


def induce(S: GSet, G: FiniteGroup, emb) -> GSet:
    """G x_H S for an H-set S, H embedded in G by ``emb``.

    Points are classes of pairs (g, s) modulo (g h^-1, h s); each class is
    represented by its minimal pair.
    """
    H = S.group
    canon: dict[tuple[int, int], int] = {}
    reps = []
    for g in range(G.order):
        for s in range(S.size):
            if (g, s) in canon:
                continue
            i = len(reps)
            reps.append((g, s))
            for h in range(H.order):
                canon[(G.mul[g][G.inv[emb[h]]], S.action[h][s])] = i
    action = [[canon[(G.mul[x][g], s)] for g, s in reps] for x in range(G.order)]
    out = GSet(G, action, check=False)
    out.induced_reps = tuple(reps)
    return out


def induce_restrict(S: GSet, H, direction: str, G: FiniteGroup | None = None, emb=None):
    if direction == "restrict":
        return restrict(S, H)[0]
    if direction == "induce":
        if G is None:
            raise DomainError("induction needs the ambient group")
        if emb is None:
            emb = tuple(sorted(H))
        return induce(S, G, emb)
    raise DomainError(f"unknown direction {direction!r}")


def count_gmaps(X: GSet, T: GSet) -> int:
    """Number of G-maps X -> T: each orbit picks a point fixed by its stabilizer."""
    total = 1
    for stab in X.orbit_stabilizers:
        total *= len(T.fixed_point_set(stab))
    return total


@dataclass(frozen=True)
class DoubleCosetComponent:
    """One orbit G/H_s of (G/Hp) x_{G/H} (G/Hpp), H_s = Hp n x Hpp x^-1.

    ``left`` sends g H_s to g Hp and ``right`` sends g H_s to g x Hpp.
    """

    witness: int
    stabilizer: Subgroup
    class_index: int
    double_coset: frozenset
    orbit: GSet
    left: GMap
    right: GMap


def double_coset_reps(G: FiniteGroup, K, L, H) -> list[int]:
    """Minimal representatives of K\\H/L."""
    K, L = frozenset(K), frozenset(L)
    seen: set[int] = set()
    reps = []
    for x in sorted(H):
        if x in seen:
            continue
        reps.append(x)
        seen.update(G.mul[G.mul[k][x]][l] for k in K for l in L)
    return reps


def double_cosets(G: FiniteGroup, Hp, Hpp, H) -> list[DoubleCosetComponent]:
    Hp, Hpp, H = frozenset(Hp), frozenset(Hpp), frozenset(H)
    if not (Hp <= H and Hpp <= H):
        raise DomainError("double cosets need Hp and Hpp inside H")
    out = []
    A = coset_space(G, Hp)
    B = coset_space(G, Hpp)
    for x in double_coset_reps(G, Hp, Hpp, H):
        Hs = Hp & G.conjugate(x, Hpp)
        O = coset_space(G, Hs)
        left = GMap(O, A, [A.coset_index[r] for r in O.coset_reps], check=False)
        right = GMap(O, B, [B.coset_index[G.mul[r][x]] for r in O.coset_reps], check=False)
        dc = frozenset(G.mul[G.mul[k][x]][l] for k in Hp for l in Hpp)
        out.append(DoubleCosetComponent(x, Hs, G.class_of(Hs), dc, O, left, right))
    return out
