"""Derived completed Burnside homology and the cyclic gluing law."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..errors import DomainError
from ..modalg import (FpModule, ModuleMap, TateResult, ZZ, cyclic_homology, cyclic_tate,
                      direct_sum, is_prime, trivial_module)
from .witt import lcm


def fixed_orbits(S, Sp, n: int) -> list[int]:
    """Orbit lengths of the Z/n-set (S x S')^{nZ^}.

    S and S' are multisets of levels a (orbits Z^/aZ^).  An orbit is fixed
    by nZ^ exactly when a | n, and then Z/a x Z/b splits into gcd(a, b)
    orbits of length lcm(a, b).
    """
    out = []
    for a in S:
        for b in Sp:
            if n % a == 0 and n % b == 0:
                out.extend([lcm(a, b)] * gcd(a, b))
    return sorted(out)


def derived_burnside_homology(S, Sp, degree: int, N: int) -> list[FpModule]:
    """H_i(Z/n; Z[(S x S')^{nZ^}]) for n = 1..N, via Shapiro's lemma:
    an orbit of length m has stabilizer of order n/m and contributes
    H_i(Z/(n/m); Z)."""
    if degree < 0:
        raise DomainError("degree must be non-negative")
    if any(int(a) < 1 for a in list(S) + list(Sp)):
        raise DomainError("levels must be positive")
    out = []
    for n in range(1, N + 1):
        parts = []
        for m in fixed_orbits(S, Sp, n):
            k = n // m
            X, s = trivial_module(ZZ)
            parts.append(cyclic_homology(k, X, s, degree))
        out.append(direct_sum(ZZ, parts) if parts else FpModule.zero(ZZ))
    return out


@dataclass
class GluingValue:
    case: str                       # "identity" | "tate" | "zero"
    payload: object                 # FpModule or TateResult
    multiplicity: tuple = (0,)      # the double quotient, a singleton here

    def __str__(self):
        return f"{self.case}: {self.payload}"


def gluing_value(n: int, l: int, M: FpModule, sigma: ModuleMap) -> GluingValue:
    """Value of the gluing data between levels n and l on a Z/n-module.

    l = n gives M; n = p l with p prime gives the Tate cohomology of the
    subgroup of order p, generated by sigma^l; everything else vanishes.
    """
    if n < 1 or l < 1:
        raise DomainError("levels must be positive")
    if not sigma.power(n).equals(ModuleMap.identity(M)):
        raise DomainError(f"sigma must have order dividing {n}")
    if l == n:
        return GluingValue("identity", M)
    if n % l == 0 and is_prime(n // l):
        return GluingValue("tate", cyclic_tate(n // l, M, sigma.power(l)))
    return GluingValue("zero", FpModule.zero(M.ring))
