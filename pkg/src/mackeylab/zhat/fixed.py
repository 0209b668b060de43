"""Level fixed points, the canonical filtration and normal systems.

F^{nZ^} M_l is the sum of the images of v_{k,l} over levels k in L with
l | k and k not dividing n; it is all of M_l when l does not divide n.
The fixed points at nZ^ form a Mackey functor over Z/n whose value at the
subgroup dZ/nZ is M_d / F^{nZ^} M_d.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError
from ..groups import cyclic
from ..mackey import MackeyFunctor, check_mackey_axioms, from_natural, geometric_fixed_points
from ..mackey.functor import _lift
from ..modalg import FpModule, ModuleMap, direct_sum
from ..modalg.linalg import column_span_basis, hstack, identity, kernel, vstack, zeros
from ..modalg.modules import subquotient
from .profunctor import ZMackeyTrunc, check_zmackey


@dataclass
class Filtration:
    level: int
    gens: np.ndarray          # columns in the coordinates of M_level
    module: FpModule          # the submodule as an abstract module
    exact: bool

    @property
    def rank(self) -> int:
        return self.module.invariant_factors()[1]


def _filtration_gens(M: ZMackeyTrunc, n: int, l: int) -> np.ndarray:
    cols = [M.v[(k, l)] for k in M.levels if k % l == 0 and n % k]
    return hstack(*cols) if cols else zeros(M.dim(l), 0)


def canonical_filtration(M: ZMackeyTrunc, n: int, l: int) -> Filtration:
    if l not in M.modules:
        raise DomainError(f"level {l} outside the truncation")
    if n < 1:
        raise DomainError("n must be positive")
    G = _filtration_gens(M, n, l)
    exact = M.finitely_supported or n % l != 0
    return Filtration(l, G, subquotient(M.modules[l], G, zeros(M.dim(l), 0)), exact)


def _intersect(ambient: FpModule, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Generators of (span A + R) meet (span B + R) inside the free cover."""
    R = ambient.full_relations
    ring = ambient.lift_ring
    SA = hstack(A, R)
    SB = hstack(B, R)
    K = kernel(hstack(SA, -SB), ring)
    if K.shape[1] == 0:
        return zeros(ambient.gens, 0)
    return column_span_basis(SA @ K[:SA.shape[1], :], ring)


def filtration_F(M: ZMackeyTrunc, l: int, level: int) -> Filtration:
    """F^l M at the given level: the intersection of F^{nZ^} over n <= l."""
    if level not in M.modules:
        raise DomainError(f"level {level} outside the truncation")
    cur = None
    exact = True
    for n in range(1, l + 1):
        F = canonical_filtration(M, n, level)
        exact = exact and F.exact
        cur = F.gens if cur is None else _intersect(M.modules[level], cur, F.gens)
    return Filtration(level, cur, subquotient(M.modules[level], cur, zeros(M.dim(level), 0)), exact)


def level_quotient(M: ZMackeyTrunc, n: int, d: int) -> FpModule:
    base = M.modules[d]
    return FpModule(M.ring, base.gens, hstack(base.relations, _filtration_gens(M, n, d)))


def level_fixed_points(M: ZMackeyTrunc, n: int) -> MackeyFunctor:
    """Fixed points at nZ^ as a Mackey functor over the cyclic group Z/n."""
    if n not in M.modules:
        raise DomainError(f"level {n} outside the truncation")
    G = cyclic(n)

    def lev(H):
        return n // len(H)

    vals: dict = {}

    def value(H):
        d = lev(H)
        if d not in vals:
            vals[d] = level_quotient(M, n, d)
        return vals[d]

    out = from_natural(
        G, M.ring, value,
        lambda H, K: M.f[(lev(K), lev(H))],
        lambda H, K: M.v[(lev(K), lev(H))],
        lambda x, H: M.sigma_pow(lev(H), -x),
        f"Phi^{n}({M.name})")
    out.exact = M.finitely_supported
    out.level = n
    return out


# -- normal systems ---------------------------------------------------------------

@dataclass
class NormalSystemTrunc:
    components: dict              # n -> Mackey functor over Z/n
    transitions: dict             # (n, n') -> True when Phi(M_{n'}) = M_n on generators
    report: dict = field(default_factory=dict)

    @property
    def coherent(self) -> bool:
        return all(self.transitions.values()) and all(self.report.get("axioms", {}).values())


@dataclass
class RoundtripReport:
    surjective: dict
    injective: dict
    reconstruction_check: object
    system_coherent: bool

    @property
    def all_surjective(self) -> bool:
        return all(self.surjective.values())

    @property
    def separated(self) -> bool:
        return self.all_surjective and all(self.injective.values())


def _same_quotient(A: FpModule, B: FpModule) -> bool:
    return A.gens == B.gens and A.contains(B.relations) and B.contains(A.relations)


def normal_system(M: ZMackeyTrunc, check_axioms: bool = True) -> NormalSystemTrunc:
    comps = {n: level_fixed_points(M, n) for n in M.levels}
    trans = {}
    for n in M.levels:
        for n2 in M.levels:
            if n2 % n or n2 == n:
                continue
            P = comps[n2]
            Nsub = frozenset(range(0, n2, n))
            Phi = geometric_fixed_points(P, Nsub)
            ok = True
            for Hb in Phi.group.subgroups:
                d = n // len(Hb)
                if not _same_quotient(Phi.value(Hb), comps[n].value(frozenset(range(0, n, d)))):
                    ok = False
            trans[(n, n2)] = ok
    report = {}
    if check_axioms:
        report["axioms"] = {n: check_mackey_axioms(P).passed for n in comps}
    return NormalSystemTrunc(comps, trans, report)


def _is_prime(q: int) -> bool:
    return q > 1 and all(q % r for r in range(2, int(q ** 0.5) + 1))


@dataclass
class _Limit:
    """lim over P_l = {n in L : l | n} of M_l / F^{nZ^} M_l, computed inside
    the sum of minimal presentations of the quotients."""
    P: list
    to: list            # M_l -> Q_n (minimal coordinates)
    back: list          # Q_n -> M_l
    ambient: FpModule   # direct sum of the Q_n
    inclusion: np.ndarray
    module: FpModule
    diagonal: np.ndarray


def _inverse_limit(M: ZMackeyTrunc, l: int) -> _Limit:
    P = [n for n in M.levels if n % l == 0]
    simp = [level_quotient(M, n, l).simplify() for n in P]
    Q = [q for q, _, _ in simp]
    to = [t for _, t, _ in simp]
    back = [b for _, _, b in simp]
    S = direct_sum(M.ring, Q)
    offs = [0]
    for q in Q:
        offs.append(offs[-1] + q.gens)
    # one difference block per covering pair n | n2 with n2 / n prime
    blocks, targets = [], []
    for i, n in enumerate(P):
        for j, n2 in enumerate(P):
            if n2 % n or not _is_prime(n2 // n) or Q[i].gens == 0:
                continue
            blk = zeros(Q[i].gens, S.gens)
            blk[:, offs[j]:offs[j + 1]] = to[i] @ back[j]
            blk[:, offs[i]:offs[i + 1]] = -identity(Q[i].gens)
            blocks.append(blk)
            targets.append(Q[i])
    Delta = vstack(*to) if to else zeros(0, M.dim(l))
    if blocks:
        D = ModuleMap(S, direct_sum(M.ring, targets), vstack(*blocks), check=False)
        K, inc = D.kernel()
        Pinc = inc.matrix
    else:
        K, Pinc = S, identity(S.gens)
    return _Limit(P, to, back, S, Pinc, K, Delta)


def normal_system_roundtrip(M: ZMackeyTrunc, check_axioms: bool = True):
    """Build the normal system of M, reconstruct its inflation levelwise as
    inverse limits over all n in L divisible by the level, and compare with
    M through the canonical map."""
    system = normal_system(M, check_axioms)
    lims = {l: _inverse_limit(M, l) for l in M.levels}
    surj, inj = {}, {}
    for l, lim in lims.items():
        can = ModuleMap(M.modules[l], lim.ambient, lim.diagonal, check=False)
        inj[l] = can.is_injective()
        surj[l] = _solvable(lim.diagonal, lim.ambient, lim.inclusion)
    rec = _reconstruct(M, lims)
    rep = RoundtripReport(surj, inj, check_zmackey(rec), system.coherent)
    return system, rec, rep


def _solvable(A, S: FpModule, B) -> bool:
    """Every column of B is A x modulo the relations of S."""
    try:
        _lift(A, S, B)
        return True
    except DomainError:
        return False


def _reconstruct(M: ZMackeyTrunc, lims: dict) -> ZMackeyTrunc:
    modules = {l: lims[l].module for l in M.levels}

    def componentwise(src: int, tgt: int, mat):
        A, B = lims[src], lims[tgt]
        out = zeros(B.ambient.gens, A.ambient.gens)
        ra = ca = 0
        col = {}
        for j, n in enumerate(A.P):
            col[n] = (ca, A.back[j])
            ca += A.back[j].shape[1]
        for i, n in enumerate(B.P):
            h = B.to[i].shape[0]
            if n in col:
                c0, bk = col[n]
                out[ra:ra + h, c0:c0 + bk.shape[1]] = B.to[i] @ mat @ bk
            ra += h
        return _lift(B.inclusion, B.ambient, out @ A.inclusion)

    sigma, v, f = {}, {}, {}
    for l in M.levels:
        sigma[l] = componentwise(l, l, M.sigma[l])
    for (a, b) in M.v:
        v[(a, b)] = componentwise(a, b, M.v[(a, b)])
        f[(a, b)] = componentwise(b, a, M.f[(a, b)])
    return ZMackeyTrunc(M.ring, M.N, modules, sigma, v, f, M.levels, M.support_bounded,
                        M.finitely_supported, f"Infl Phi({M.name})")
