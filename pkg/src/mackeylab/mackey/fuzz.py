"""Seeded single-entry mutation fuzzing of the Mackey axiom checker."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .functor import MackeyFunctor, check_mackey_axioms, check_span_functoriality


@dataclass
class FuzzReport:
    total: int = 0
    rejected: int = 0
    pinpointed: int = 0
    undetected: list = field(default_factory=list)    # (kind, key, index) per case
    undetected_valid: list = field(default_factory=list)
    identities: dict = field(default_factory=dict)

    @property
    def rate(self) -> float:
        return self.rejected / self.total if self.total else 1.0

    @property
    def accounted(self) -> bool:
        """Every mutation is either rejected with a pinpointed identity or
        independently verified to still be a Mackey functor."""
        return self.pinpointed == self.rejected and all(self.undetected_valid)


def mutations(M: MackeyFunctor, rng: random.Random, count: int, delta: int = 1):
    entries = []
    stored = {}
    for kind, key, m in M.map_entries():
        stored[(kind, key)] = m
        for idx in np.ndindex(m.shape):
            entries.append((kind, key, idx))
    for _ in range(count):
        kind, key, idx = rng.choice(entries)
        m = stored[(kind, key)].copy()
        m[idx] = m[idx] + delta
        yield (kind, key, idx), M.replace(kind, key, m)


def mutation_fuzz(M: MackeyFunctor, count: int = 50, seed: int = 0) -> FuzzReport:
    rng = random.Random(seed)
    rep = FuzzReport()
    for desc, Mm in mutations(M, rng, count):
        rep.total += 1
        r = check_mackey_axioms(Mm, fail_fast=True)
        if r.passed:
            rep.undetected.append(desc)
            rep.undetected_valid.append(not check_span_functoriality(Mm))
            continue
        rep.rejected += 1
        v = r.first()
        if v is not None and v.identity and v.where is not None:
            rep.pinpointed += 1
            rep.identities[v.identity] = rep.identities.get(v.identity, 0) + 1
    return rep
