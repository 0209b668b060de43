"""Homology and Tate cohomology of finite cyclic groups.

A module with a Z/n-action is given as an ``FpModule`` together with the
action of the generator, a ``ModuleMap`` sigma with sigma^n = 1.  Everything
is computed from the 2-periodic resolution built on sigma - 1 and the norm.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError
from .linalg import identity, zeros
from .modules import FpModule, ModuleMap, homology_at, map_cokernel
from .rings import CoeffRing, ZZ, is_prime


def _check_order(n: int, sigma: ModuleMap) -> None:
    if n < 1:
        raise DomainError("group order must be positive")
    if sigma.source is not sigma.target and sigma.source.gens != sigma.target.gens:
        raise DomainError("sigma must be an endomorphism")
    if not sigma.power(n).equals(ModuleMap.identity(sigma.source)):
        raise DomainError(f"sigma does not have order dividing {n}")


def norm_map(n: int, sigma: ModuleMap) -> ModuleMap:
    out = ModuleMap.zero(sigma.source, sigma.source)
    power = ModuleMap.identity(sigma.source)
    for _ in range(n):
        out = out + power
        power = sigma @ power
    return out


def augmentation_map(sigma: ModuleMap) -> ModuleMap:
    return sigma - ModuleMap.identity(sigma.source)


def cyclic_homology(n: int, M: FpModule, sigma: ModuleMap, degree: int) -> FpModule:
    """H_i(Z/n; M).

    H_0 is the coinvariants, odd degrees are ker(sigma - 1) / im N and even
    degrees >= 2 are ker N / im(sigma - 1).
    """
    if degree < 0:
        raise DomainError("degree must be non-negative")
    _check_order(n, sigma)
    T = augmentation_map(sigma)
    if degree == 0:
        return map_cokernel(T)[0]
    N = norm_map(n, sigma)
    if degree % 2:
        return homology_at(N, T)
    return homology_at(T, N)


@dataclass(frozen=True)
class TateResult:
    """2-periodic Tate cohomology of Z/n.  ``even`` is the value in every
    even degree, ``odd`` in every odd degree; multiplication by the
    periodicity class shifts degree by 2."""

    n: int
    even: FpModule
    odd: FpModule

    @property
    def periodicity_generator(self) -> str:
        return "u"

    def degree(self, i: int) -> FpModule:
        return self.even if i % 2 == 0 else self.odd

    def __str__(self):
        return f"even: {self.even}, odd: {self.odd}"


def cyclic_tate(n: int, M: FpModule, sigma: ModuleMap) -> TateResult:
    _check_order(n, sigma)
    T = augmentation_map(sigma)
    N = norm_map(n, sigma)
    return TateResult(n, homology_at(N, T), homology_at(T, N))


def maximal_tate(p: int, M: FpModule, sigma: ModuleMap) -> TateResult:
    """Maximal Tate cohomology; only prime order groups are supported."""
    if not is_prime(p):
        raise DomainError(f"maximal Tate cohomology is only implemented for prime order, got {p}")
    return cyclic_tate(p, M, sigma)


def trivial_module(ring: CoeffRing = ZZ, rank: int = 1) -> tuple[FpModule, ModuleMap]:
    M = FpModule.free(ring, rank)
    return M, ModuleMap.identity(M)


def regular_module(n: int, ring: CoeffRing = ZZ) -> tuple[FpModule, ModuleMap]:
    """The group ring R[Z/n] with sigma the cyclic shift."""
    M = FpModule.free(ring, n)
    S = zeros(n, n)
    for i in range(n):
        S[(i + 1) % n, i] = 1
    return M, ModuleMap(M, M, S, check=False)


def permutation_module(n: int, points: list[int], action, ring: CoeffRing = ZZ):
    """R[X] for a Z/n-set X given by the generator's action on indices."""
    k = len(points)
    M = FpModule.free(ring, k)
    S = zeros(k, k)
    for i in range(k):
        S[action(i), i] = 1
    return M, ModuleMap(M, M, S, check=False)
