"""Geometric fixed points, categorical fixed points and inflation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..groups import FiniteGroup
from ..modalg import FpModule, ModuleMap, modules_isomorphic
from ..modalg.linalg import hstack, zeros
from .functor import (MackeyFunctor, MackeyMorphism, check_mackey_axioms, from_natural)


def _lift_table(proj) -> dict[int, int]:
    lift: dict[int, int] = {}
    for g, w in enumerate(proj):
        if w >= 0 and w not in lift:
            lift[w] = g
    return lift


def geometric_fixed_points(M: MackeyFunctor, N) -> MackeyFunctor:
    """Phi^N M over W = G/N.

    At the subgroup H/N the value is M(H) modulo the images of the
    transfers tr^H_K over all K inside H that do not contain N.
    """
    G = M.group
    N = frozenset(N)
    if not G.is_subgroup(N) or not G.is_normal(N):
        raise DomainError("geometric fixed points need a normal subgroup")
    W, proj = G.quotient(N)
    lift = _lift_table(proj)
    pre_cache: dict = {}

    def pre(Hb):
        Hb = frozenset(Hb)
        if Hb not in pre_cache:
            pre_cache[Hb] = frozenset(g for g in range(G.order) if proj[g] in Hb)
        return pre_cache[Hb]

    val_cache: dict = {}

    def value(Hb):
        H = pre(Hb)
        if H not in val_cache:
            base = M.value(H)
            images = [M.tr_map(H, K) for K in G.subgroups_of(H) if not N <= K]
            rel = hstack(base.relations, *images) if images else base.relations
            val_cache[H] = FpModule(M.ring, base.gens, rel)
        return val_cache[H]

    out = from_natural(
        W, M.ring, value,
        lambda Hb, Kb: M.res_map(pre(Hb), pre(Kb)),
        lambda Hb, Kb: M.tr_map(pre(Hb), pre(Kb)),
        lambda x, Hb: M.conj(lift[x], pre(Hb)),
        f"Phi({M.name})")
    out.parent = M
    out.normal_subgroup = N
    out.projection = proj
    return out


@dataclass
class CategoricalFixedPoints:
    """Psi^H M over H, with the action of the centralizer Z_H recorded as
    per-class matrices ``centralizer_action[c][z]``."""

    functor: MackeyFunctor
    embedding: tuple[int, ...]
    centralizer_action: dict


def categorical_fixed_points(M: MackeyFunctor, H) -> CategoricalFixedPoints:
    """Psi^H M: the value at an H-orbit H/K is M(G/K) = M(G x_H H/K)."""
    G = M.group
    H = frozenset(H)
    Hg, emb = G.subgroup_group(H)

    def up(K):
        return frozenset(emb[k] for k in K)

    F = from_natural(
        Hg, M.ring,
        lambda K: M.value(up(K)),
        lambda S, K: M.res_map(up(S), up(K)),
        lambda S, K: M.tr_map(up(S), up(K)),
        lambda x, S: M.conj(emb[x], up(S)),
        f"Psi({M.name})")
    Z = sorted(G.centralizer(H))
    action = {}
    for c in Hg.subgroup_classes:
        R = up(c.representative)
        action[c.index] = {z: M.conj(z, R) for z in Z}
    return CategoricalFixedPoints(F, emb, action)


def inflation(Mbar: MackeyFunctor, G: FiniteGroup, N) -> MackeyFunctor:
    """Infl^N Mbar over G: M(G/H) = Mbar(H/N) when N is inside H, else 0."""
    N = frozenset(N)
    W, proj = G.quotient(N)
    if Mbar.group is not W:
        raise DomainError("the functor must live over the quotient group G.quotient(N)")

    def img(H):
        return frozenset(proj[h] for h in H)

    def value(H):
        if N <= H:
            return Mbar.value(img(H))
        return FpModule.zero(Mbar.ring)

    def dim(H):
        return value(H).gens

    def res(H, K):
        if N <= K:
            return Mbar.res_map(img(H), img(K))
        return zeros(0, dim(H))

    def tr(H, K):
        if N <= K:
            return Mbar.tr_map(img(H), img(K))
        return zeros(dim(H), 0)

    def conj(x, H):
        if N <= H:
            return Mbar.conj(proj[x], img(H))
        return zeros(0, 0)

    out = from_natural(G, Mbar.ring, value, res, tr, conj, f"Infl({Mbar.name})")
    out.normal_subgroup = N
    return out


def phi_infl_comparison(Mbar: MackeyFunctor, G: FiniteGroup, N) -> MackeyMorphism:
    """The comparison Mbar -> Phi^N Infl^N Mbar, classwise over W.

    Both sides have the same generators at each class of W; the comparison
    at the class of Hbar = R/N is conjugation by the image of the witness of
    the preimage of Hbar.
    """
    N = frozenset(N)
    W, proj = G.quotient(N)
    I = inflation(Mbar, G, N)
    P = geometric_fixed_points(I, N)
    maps = []
    for c in W.subgroup_classes:
        Rb = c.representative
        H = frozenset(g for g in range(G.order) if proj[g] in Rb)
        gH = G.witness(H)
        maps.append(Mbar.conj(proj[G.inv[gH]], Rb))
    return MackeyMorphism(Mbar, P, maps)


def phi_infl_is_identity(Mbar: MackeyFunctor, G: FiniteGroup, N) -> bool:
    """True if Phi^N Infl^N Mbar is isomorphic to Mbar via the comparison map."""
    f = phi_infl_comparison(Mbar, G, N)
    return f.is_morphism() and f.is_iso()


def unit_map(M: MackeyFunctor, N) -> MackeyMorphism:
    """The unit M -> Infl^N Phi^N M, classwise over G."""
    G = M.group
    N = frozenset(N)
    P = geometric_fixed_points(M, N)
    W, proj = G.quotient(N)
    lift = _lift_table(proj)
    I = inflation(P, G, N)
    maps = []
    for c in G.subgroup_classes:
        R = c.representative
        if N <= R:
            Rb = frozenset(proj[r] for r in R)
            gb = W.witness(Rb)
            maps.append(M.conj(lift[W.inv[gb]], R))
        else:
            maps.append(zeros(0, M.values[c.index].gens))
    return MackeyMorphism(M, I, maps)


def unit_is_surjective(M: MackeyFunctor, N) -> bool:
    f = unit_map(M, N)
    return f.is_morphism() and f.is_surjective()


# -- Phi / Psi commutation -------------------------------------------------------------

@dataclass
class PhiPsiReport:
    ok: bool
    mismatches: list

    def __bool__(self):
        return self.ok


def _map_invariants(mat, src: FpModule, tgt: FpModule):
    f = ModuleMap(src, tgt, mat, check=False)
    return f.kernel()[0], f.cokernel()[0]


def phi_psi_commute_check(M: MackeyFunctor, Hp, H) -> PhiPsiReport:
    """Compare Phi^{H'} Psi^H M with Psi^{H/H'} Phi^{H'} Psi^{N(H')} M.

    Both sides are functors over H/H'.  They are compared on every pair of
    subgroups K inside S of H/H': values, and kernels and cokernels of
    restriction and transfer, up to isomorphism.  Both sides and M must
    also pass the Mackey axioms.
    """
    G = M.group
    Hp, H = frozenset(Hp), frozenset(H)
    if not (G.is_subgroup(H) and G.is_subgroup(Hp) and Hp <= H):
        raise DomainError("need subgroups H' inside H")
    if any(G.conjugate(h, Hp) != Hp for h in H):
        raise DomainError("H' must be normal in H")
    mism = []
    if not check_mackey_axioms(M, fail_fast=True).passed:
        return PhiPsiReport(False, ["input is not a Mackey functor"])

    # left side
    PsiH = categorical_fixed_points(M, H)
    Hg, embH = PsiH.functor.group, PsiH.embedding
    posH = {g: i for i, g in enumerate(embH)}
    HpH = frozenset(posH[g] for g in Hp)
    left = geometric_fixed_points(PsiH.functor, HpH)
    QL, projL = Hg.quotient(HpH)

    # right side
    NG = G.normalizer(Hp)
    PsiN = categorical_fixed_points(M, NG)
    Ng, embN = PsiN.functor.group, PsiN.embedding
    posN = {g: i for i, g in enumerate(embN)}
    HpN = frozenset(posN[g] for g in Hp)
    mid = geometric_fixed_points(PsiN.functor, HpN)
    WN, projN = Ng.quotient(HpN)
    Hbar = frozenset(projN[posN[g]] for g in H)
    right_psi = categorical_fixed_points(mid, Hbar)
    right = right_psi.functor
    QR = right.group
    posR = {w: i for i, w in enumerate(right_psi.embedding)}

    # identify QL with QR through H
    phi = {}
    for g in H:
        phi[projL[posH[g]]] = posR[projN[posN[g]]]
    if len(set(phi.values())) != QL.order or any(
            phi[QL.mul[a][b]] != QR.mul[phi[a]][phi[b]] for a in phi for b in phi):
        return PhiPsiReport(False, ["quotient groups do not match"])

    def tr_sub(K):
        return frozenset(phi[k] for k in K)

    for side in (left, right):
        rep = check_mackey_axioms(side, fail_fast=True)
        if not rep.passed:
            mism.append(f"side fails Mackey axioms: {rep.first()}")
    for S in QL.subgroups:
        SR = tr_sub(S)
        if not modules_isomorphic(left.value(S), right.value(SR)):
            mism.append(f"value at {sorted(S)}")
            continue
        for K in QL.subgroups_of(S):
            if K == S:
                continue
            KR = tr_sub(K)
            a = _map_invariants(left.res_map(S, K), left.value(S), left.value(K))
            b = _map_invariants(right.res_map(SR, KR), right.value(SR), right.value(KR))
            if not all(modules_isomorphic(x, y) for x, y in zip(a, b)):
                mism.append(f"res {sorted(S)} -> {sorted(K)}")
            a = _map_invariants(left.tr_map(S, K), left.value(K), left.value(S))
            b = _map_invariants(right.tr_map(SR, KR), right.value(KR), right.value(SR))
            if not all(modules_isomorphic(x, y) for x, y in zip(a, b)):
                mism.append(f"tr {sorted(K)} -> {sorted(S)}")
    return PhiPsiReport(not mism, mism)
