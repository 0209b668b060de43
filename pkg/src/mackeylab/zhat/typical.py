"""p-typical decomposition of p-local truncated profunctors."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from ..errors import DomainError
from ..modalg import FpModule, modules_isomorphic
from ..modalg.linalg import hstack, identity, zeros
from ..modalg.modules import direct_sum, subquotient
from .profunctor import ZMackeyTrunc, eps_action
from .witt import WittElement, p_local_idempotent


def _require_plocal(M: ZMackeyTrunc, p: int) -> None:
    r = M.ring
    if not (r.kind == "Q" or (r.kind == "Z_(p)" and r.param == p)):
        raise DomainError(f"p-typical decomposition needs a {p}-local ring, got {r}")


def _idempotent(M: ZMackeyTrunc, p: int, l: int) -> WittElement:
    e = p_local_idempotent(p, l, M.N)
    return e if M.ring == e.ring else WittElement(M.ring, M.N, e.coeffs)


def idempotent_matrix(M: ZMackeyTrunc, p: int, l: int, n: int) -> np.ndarray:
    _require_plocal(M, p)
    return eps_action(M, _idempotent(M, p, l), n)


def p_typical_component(M: ZMackeyTrunc, p: int, l: int, n: int) -> FpModule:
    """Image of the type-l idempotent acting on M_n."""
    if l % p == 0:
        raise DomainError(f"level {l} must be prime to {p}")
    E = idempotent_matrix(M, p, l, n)
    return subquotient(M.modules[n], E, zeros(M.dim(n), 0))


@dataclass
class Decomposition:
    level: int
    components: dict                  # l -> image module
    idempotent: bool
    orthogonal: bool
    complete: bool

    @property
    def passed(self) -> bool:
        return self.idempotent and self.orthogonal and self.complete


def p_typical_decomposition(M: ZMackeyTrunc, p: int, n: int) -> Decomposition:
    _require_plocal(M, p)
    X = M.modules[n]
    ls = [l for l in range(1, M.N + 1) if l % p]
    E = {l: idempotent_matrix(M, p, l, n) for l in ls}
    idem = all(X.contains(E[l] @ E[l] - E[l]) for l in ls)
    orth = all(X.contains(E[a] @ E[b]) for a in ls for b in ls if a != b)
    total = sum((E[l] for l in ls), zeros(M.dim(n), M.dim(n)))
    complete = X.contains(total - identity(M.dim(n)))
    comps = {l: subquotient(X, E[l], zeros(M.dim(n), 0)) for l in ls}
    return Decomposition(n, comps, idem, orth, complete)


def coinvariants(X: FpModule, g: np.ndarray) -> FpModule:
    return FpModule(X.ring, X.gens, hstack(X.relations, g - identity(X.gens)))


def _is_p_power(j: int, p: int) -> bool:
    while j % p == 0:
        j //= p
    return j == 1


def prime_to_p_quotient(M: ZMackeyTrunc, p: int, t: int) -> FpModule:
    """M_t modulo transfers from levels tj, j > 1 not a power of p."""
    base = M.modules[t]
    cols = [M.v[(t * j, t)] for j in range(2, M.N // t + 1)
            if t * j in M.modules and not _is_p_power(j, p)]
    return FpModule(M.ring, base.gens, hstack(base.relations, *cols))


@dataclass
class TypicalCheck:
    p: int
    level: int
    l: int
    summands: dict = field(default_factory=dict)      # l' -> coinvariant module
    components: dict = field(default_factory=dict)    # l' -> matches the type-(l l') image
    isomorphic: bool = False
    exact: bool = True

    @property
    def passed(self) -> bool:
        return self.isomorphic and all(self.components.values())


def p_typical_reconstruct_check(M: ZMackeyTrunc, p: int, n: int) -> TypicalCheck:
    """Compare M_n with the sum over l' prime to p of the coinvariants of
    sigma^n on M_{nl'} modulo prime-to-p transfers.  The summand at l' is
    also compared with the type-(l l') image on M_n, where n = l p^m."""
    _require_plocal(M, p)
    if n not in M.modules:
        raise DomainError(f"level {n} outside the truncation")
    l = n
    while l % p == 0:
        l //= p
    out = TypicalCheck(p, n, l, exact=M.finitely_supported)
    parts = []
    for lp in range(1, M.N // n + 1):
        if lp % p == 0 or n * lp not in M.modules:
            continue
        t = n * lp
        Q = prime_to_p_quotient(M, p, t)
        C = coinvariants(Q, M.sigma_pow(t, n))
        out.summands[lp] = C
        parts.append(C)
        out.components[lp] = modules_isomorphic(C, p_typical_component(M, p, l * lp, n))
    total = direct_sum(M.ring, parts) if parts else FpModule.zero(M.ring)
    out.isomorphic = modules_isomorphic(total, M.modules[n])
    return out
