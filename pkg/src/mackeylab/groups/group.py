"""Finite groups given by multiplication tables, and their subgroup classes."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from ..errors import DomainError, SizeBoundError

DEFAULT_MAX_ORDER = 96


def max_group_order() -> int:
    raw = os.environ.get("MACKEYLAB_MAX_GROUP_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"MACKEYLAB_MAX_GROUP_ORDER must be an integer, got {raw!r}")


Subgroup = frozenset


class FiniteGroup:
    """A group on the elements 0..n-1 with 0 the identity."""

    def __init__(self, mul, name: str = "", generators=None, check: bool = True):
        self.mul = tuple(tuple(int(x) for x in row) for row in mul)
        n = len(self.mul)
        if n < 1:
            raise DomainError("a group has at least one element")
        if n > max_group_order():
            raise SizeBoundError(f"group order {n} exceeds bound {max_group_order()}")
        self.order = n
        self.name = name or f"group of order {n}"
        if check:
            self._validate()
        inv = [0] * n
        for a in range(n):
            row = self.mul[a]
            inv[a] = row.index(0)
        self.inv = tuple(inv)
        if generators is None:
            generators = self._greedy_generators()
        self.generators = tuple(generators)

    def _validate(self) -> None:
        n = self.order
        full = set(range(n))
        for a, row in enumerate(self.mul):
            if len(row) != n or set(row) != full:
                raise DomainError("multiplication table is not a Latin square")
            if row[0] != a or self.mul[0][a] != a:
                raise DomainError("0 is not a two-sided identity")
        for a, b, c in iproduct(range(n), repeat=3):
            if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                raise DomainError(f"multiplication is not associative at {(a, b, c)}")

    def _greedy_generators(self) -> list[int]:
        gens: list[int] = []
        span = frozenset([0])
        for g in range(self.order):
            if g not in span:
                gens.append(g)
                span = self.closure(gens)
        return gens

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    # -- elementwise helpers --------------------------------------------
    def m(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = self.mul[out][x]
        return out

    def conj_elt(self, x: int, h: int) -> int:
        return self.mul[self.mul[x][h]][self.inv[x]]

    def conjugate(self, x: int, H) -> Subgroup:
        """x H x^-1."""
        return frozenset(self.conj_elt(x, h) for h in H)

    def closure(self, gens) -> Subgroup:
        elems = {0}
        frontier = [0]
        gens = [g for g in gens if g != 0]
        while frontier:
            nxt = []
            for x in frontier:
                row = self.mul[x]
                for g in gens:
                    y = row[g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def is_subgroup(self, H) -> bool:
        H = frozenset(H)
        return 0 in H and all(self.mul[a][self.inv[b]] in H for a in H for b in H)

    def normalizer(self, H) -> Subgroup:
        H = frozenset(H)
        return frozenset(g for g in range(self.order) if self.conjugate(g, H) == H)

    def centralizer(self, H) -> Subgroup:
        return frozenset(g for g in range(self.order)
                         if all(self.mul[g][h] == self.mul[h][g] for h in H))

    def is_normal(self, H) -> bool:
        H = frozenset(H)
        return all(self.conjugate(g, H) == H for g in self.generators)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul[x][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in self.generators for b in self.generators)

    # -- subgroups --------------------------------------------------------
    @cached_property
    def subgroups(self) -> tuple[Subgroup, ...]:
        """All subgroups, ordered by (order, sorted element tuple)."""
        gens_of: dict[Subgroup, tuple[int, ...]] = {}
        cyclic = []
        for g in range(self.order):
            C = self.closure([g])
            if C not in gens_of:
                gens_of[C] = (g,)
                cyclic.append(C)
        queue = list(cyclic)
        while queue:
            nxt = []
            for A in queue:
                for C in cyclic:
                    if C <= A:
                        continue
                    gens = gens_of[A] + gens_of[C]
                    J = self.closure(gens)
                    if J not in gens_of:
                        gens_of[J] = gens
                        nxt.append(J)
            queue = nxt
        return tuple(sorted(gens_of, key=lambda H: (len(H), sorted(H))))

    @cached_property
    def subgroup_classes(self) -> tuple["SubgroupClass", ...]:
        seen: set[Subgroup] = set()
        raw = []
        for H in self.subgroups:
            if H in seen:
                continue
            conj = sorted({self.conjugate(g, H) for g in range(self.order)},
                          key=lambda K: sorted(K))
            seen.update(conj)
            raw.append(conj)
        raw.sort(key=lambda c: (len(c[0]), sorted(c[0])))
        return tuple(SubgroupClass.build(self, i, c[0], c) for i, c in enumerate(raw))

    @cached_property
    def _subgroup_index(self) -> dict[Subgroup, tuple[int, int]]:
        """subgroup -> (class index, minimal g with subgroup = g R g^-1)."""
        out: dict[Subgroup, tuple[int, int]] = {}
        for c in self.subgroup_classes:
            for g in range(self.order):
                S = self.conjugate(g, c.representative)
                if S not in out:
                    out[S] = (c.index, g)
        return out

    def class_of(self, H) -> int:
        try:
            return self._subgroup_index[frozenset(H)][0]
        except KeyError:
            raise DomainError("not a subgroup of this group") from None

    def witness(self, H) -> int:
        """Minimal g with H = g R g^-1, R the representative of H's class."""
        return self._subgroup_index[frozenset(H)][1]

    def subgroups_of(self, H) -> tuple[Subgroup, ...]:
        H = frozenset(H)
        return tuple(K for K in self.subgroups if K <= H)

    def class_label(self, i: int) -> str:
        return f"H{i}"

    # -- derived groups -------------------------------------------------------
    def quotient(self, N) -> tuple["FiniteGroup", tuple[int, ...]]:
        """G/N for a normal subgroup N, with the projection as a tuple."""
        N = frozenset(N)
        cache = self.__dict__.setdefault("_quotients", {})
        if N not in cache:
            if not self.is_subgroup(N) or not self.is_normal(N):
                raise DomainError("quotient by a subgroup that is not normal")
            cache[N] = _coset_group(self, range(self.order), N, f"{self.name}/N")
        return cache[N]

    def subgroup_group(self, H) -> tuple["FiniteGroup", tuple[int, ...]]:
        """H as a group in its own right, with the embedding into G."""
        H = frozenset(H)
        cache = self.__dict__.setdefault("_subgroup_groups", {})
        if H not in cache:
            if not self.is_subgroup(H):
                raise DomainError("not a subgroup")
            elems = sorted(H)
            pos = {x: i for i, x in enumerate(elems)}
            mul = [[pos[self.mul[a][b]] for b in elems] for a in elems]
            cache[H] = (FiniteGroup(mul, f"subgroup of order {len(elems)} in {self.name}", check=False),
                        tuple(elems))
        return cache[H]


def _coset_group(G: FiniteGroup, ambient, N: Subgroup, name: str):
    """ambient/N where N is normal in the subgroup ``ambient``; returns the
    quotient group and a dict-like tuple projection indexed by G elements
    (entries for elements outside ``ambient`` are -1)."""
    cosets: dict[frozenset, int] = {}
    reps = []
    proj = [-1] * G.order
    for g in sorted(ambient):
        if proj[g] >= 0:
            continue
        coset = frozenset(G.mul[g][h] for h in N)
        idx = len(reps)
        reps.append(g)
        for x in coset:
            proj[x] = idx
    k = len(reps)
    mul = [[proj[G.mul[a][b]] for b in reps] for a in reps]
    return FiniteGroup(mul, name, check=False), tuple(proj)


@dataclass(frozen=True, eq=False)
class SubgroupClass:
    """A conjugacy class of subgroups together with its normalizer data.

    ``weyl_map[g]`` is the image in W_H of g in N_H (-1 outside N_H) and
    ``weyl_lift[w]`` is the minimal element of N_H over w.
    """

    group: FiniteGroup
    index: int
    representative: Subgroup
    conjugates: tuple[Subgroup, ...]
    normalizer: Subgroup
    centralizer: Subgroup
    weyl: FiniteGroup
    weyl_map: tuple[int, ...]
    weyl_lift: tuple[int, ...]

    @classmethod
    def build(cls, G: FiniteGroup, index: int, rep: Subgroup, conj) -> "SubgroupClass":
        N = G.normalizer(rep)
        W, proj = _coset_group(G, N, rep, f"W(H{index})")
        lift = [0] * W.order
        for g in sorted(N, reverse=True):
            lift[proj[g]] = g
        return cls(G, index, rep, tuple(conj), N, G.centralizer(rep), W, proj, tuple(lift))

    @property
    def order(self) -> int:
        return len(self.representative)

    @property
    def label(self) -> str:
        return f"H{self.index}"

    def __repr__(self):
        return f"SubgroupClass(H{self.index}, order={self.order}, conjugates={len(self.conjugates)})"


def subgroup_classes(G: FiniteGroup) -> list[SubgroupClass]:
    return list(G.subgroup_classes)
