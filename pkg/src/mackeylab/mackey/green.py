"""Pairings of Mackey functors and the Green functor identities."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError
from ..groups import FiniteGroup
from ..groups.gsets import double_coset_reps
from ..modalg import CoeffRing, ZZ
from .constructions import burnside_mackey, local_classes
from .functor import MackeyFunctor, Violation


@dataclass
class GreenPairing:
    """mu[c][t, i, j] is the t-th coordinate of mu(e_i x e_j) at class c."""

    M1: MackeyFunctor
    M2: MackeyFunctor
    M: MackeyFunctor
    mu: list

    def pair(self, S, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """mu_S(a x b) for coordinate vectors a in M1(S), b in M2(S)."""
        c = self.M.group.class_of(S)
        T = self.mu[c]
        out = np.zeros(T.shape[0], dtype=object)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    out = out + x * y * T[:, i, j]
        return out


@dataclass
class GreenReport:
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed


def check_green(P: GreenPairing) -> GreenReport:
    """Check conjugation-equivariance of mu, multiplicativity of restriction
    and both projection formulas on every subgroup K of each class
    representative S, on basis elements."""
    M1, M2, M = P.M1, P.M2, P.M
    G = M.group
    rep = GreenReport()
    for c, T in enumerate(P.mu):
        want = (M.values[c].gens, M1.values[c].gens, M2.values[c].gens)
        if T.shape != want:
            raise DomainError(f"pairing at H{c} has shape {T.shape}, expected {want}")

    def basis(n):
        I = np.zeros((n, n), dtype=object)
        for i in range(n):
            I[i, i] = 1
        return [I[:, i] for i in range(n)]

    def same(v, w, S):
        return M.value(S).contains((v - w).reshape(-1, 1))

    for cls in G.subgroup_classes:
        S = cls.representative
        b1, b2 = basis(M1.dim(S)), basis(M2.dim(S))
        for n in sorted(cls.normalizer):
            for i, a in enumerate(b1):
                for j, b in enumerate(b2):
                    lhs = M.conj(n, S) @ P.pair(S, a, b)
                    rhs = P.pair(S, M1.conj(n, S) @ a, M2.conj(n, S) @ b)
                    if not same(lhs, rhs, S):
                        rep.violations.append(Violation("pairing_equivariance", (f"H{cls.index}",), f"n={n}"))
        for K in G.subgroups_of(S):
            if K == S:
                continue
            where = (f"H{G.class_of(K)}", f"H{cls.index}")
            k1, k2 = basis(M1.dim(K)), basis(M2.dim(K))
            for a in b1:
                for b in b2:
                    lhs = P.pair(K, M1.res_map(S, K) @ a, M2.res_map(S, K) @ b)
                    rhs = M.res_map(S, K) @ P.pair(S, a, b)
                    if not same(lhs, rhs, K):
                        rep.violations.append(Violation("res_multiplicative", where))
            for a in k1:
                for b in b2:
                    lhs = M.tr_map(S, K) @ P.pair(K, a, M2.res_map(S, K) @ b)
                    rhs = P.pair(S, M1.tr_map(S, K) @ a, b)
                    if not same(lhs, rhs, S):
                        rep.violations.append(Violation("projection_formula_left", where))
            for a in b1:
                for b in k2:
                    lhs = M.tr_map(S, K) @ P.pair(K, M1.res_map(S, K) @ a, b)
                    rhs = P.pair(S, a, M2.tr_map(S, K) @ b)
                    if not same(lhs, rhs, S):
                        rep.violations.append(Violation("projection_formula_right", where))
    return rep


def burnside_green_pairing(G: FiniteGroup, ring: CoeffRing = ZZ) -> GreenPairing:
    """The product of the Burnside functor:
    [H/K] x [H/L] -> sum over x in K\\H/L of [H/(K n xLx^-1)]."""
    A = burnside_mackey(G, ring)
    mu = []
    for cls in G.subgroup_classes:
        H = cls.representative
        reps, idx = local_classes(G, H)
        n = len(reps)
        T = np.zeros((n, n, n), dtype=object)
        for i, K in enumerate(reps):
            for j, L in enumerate(reps):
                for x in double_coset_reps(G, K, L, H):
                    T[idx[K & G.conjugate(x, L)], i, j] += 1
        mu.append(T)
    return GreenPairing(A, A, A, mu)
