"""Standard Mackey functors: Burnside, fixed-point and coinduced."""

from __future__ import annotations

from ..errors import DomainError
from ..groups import FiniteGroup
from ..groups.gsets import double_coset_reps
from ..modalg import CoeffRing, FpModule, ZZ
from ..modalg.linalg import as_matrix, hstack, identity, kernel, solve, vstack, zeros
from .functor import MackeyFunctor, from_natural


def local_classes(G: FiniteGroup, H) -> tuple[tuple, dict]:
    """H-conjugacy classes of subgroups of H: (representatives, index map).

    Representatives are the minimal members in the global subgroup order.
    """
    H = frozenset(H)
    cache = G.__dict__.setdefault("_local_classes", {})
    if H not in cache:
        reps = []
        index = {}
        for K in G.subgroups_of(H):
            if K in index:
                continue
            i = len(reps)
            reps.append(K)
            for h in H:
                index[G.conjugate(h, K)] = i
        cache[H] = (tuple(reps), index)
    return cache[H]


def burnside_mackey(G: FiniteGroup, ring: CoeffRing = ZZ) -> MackeyFunctor:
    """The Burnside functor: A(G/H) has basis [H/L] over H-classes of L."""

    def value(H):
        return FpModule.free(ring, len(local_classes(G, H)[0]))

    def res(H, K):
        hreps, _ = local_classes(G, H)
        _, kidx = local_classes(G, K)
        out = zeros(len(local_classes(G, K)[0]), len(hreps))
        for j, L in enumerate(hreps):
            for x in double_coset_reps(G, K, L, H):
                out[kidx[K & G.conjugate(x, L)], j] += 1
        return out

    def tr(H, K):
        kreps, _ = local_classes(G, K)
        hreps, hidx = local_classes(G, H)
        out = zeros(len(hreps), len(kreps))
        for j, L in enumerate(kreps):
            out[hidx[L], j] += 1
        return out

    def conj(x, H):
        hreps, _ = local_classes(G, H)
        _, xidx = local_classes(G, G.conjugate(x, H))
        out = zeros(len(hreps), len(hreps))
        for j, L in enumerate(hreps):
            out[xidx[G.conjugate(x, L)], j] += 1
        return out

    return from_natural(G, ring, value, res, tr, conj, f"A_{G.name}")


def _fixed_cosets(G: FiniteGroup, J, H) -> list[int]:
    """Minimal representatives g of the cosets gH fixed by J."""
    J, H = frozenset(J), frozenset(H)
    seen = set()
    out = []
    for g in range(G.order):
        if g in seen:
            continue
        coset = {G.mul[g][h] for h in H}
        seen |= coset
        if J <= G.conjugate(g, H):
            out.append(g)
    return out


def fixed_point_mackey(G: FiniteGroup, J, ring: CoeffRing = ZZ) -> MackeyFunctor:
    """T_J with T_J(S) the free module on S^J."""
    J = frozenset(J)
    if not G.is_subgroup(J):
        raise DomainError("fixed_point_mackey needs a subgroup")

    def basis(H):
        H = frozenset(H)
        reps = _fixed_cosets(G, J, H)
        index = {}
        for i, g in enumerate(reps):
            for h in H:
                index[G.mul[g][h]] = i
        return reps, index

    def value(H):
        return FpModule.free(ring, len(basis(H)[0]))

    def res(H, K):
        hreps, hidx = basis(H)
        kreps, kidx = basis(K)
        out = zeros(len(kreps), len(hreps))
        for i, g in enumerate(kreps):
            out[i, hidx[g]] = 1
        return out

    def tr(H, K):
        hreps, hidx = basis(H)
        kreps, _ = basis(K)
        out = zeros(len(hreps), len(kreps))
        for i, g in enumerate(kreps):
            out[hidx[g], i] += 1
        return out

    def conj(x, H):
        hreps, _ = basis(H)
        _, xidx = basis(G.conjugate(x, H))
        out = zeros(len(hreps), len(hreps))
        for i, g in enumerate(hreps):
            out[xidx[G.mul[g][G.inv[x]]], i] = 1
        return out

    return from_natural(G, ring, value, res, tr, conj, f"T_{sorted(J)}")


def coinduced_mackey(G: FiniteGroup, rho) -> MackeyFunctor:
    """The fixed-point functor of a Z[G]-lattice: H -> M^H, restriction is
    inclusion, transfer is the relative norm, conjugation is the action.

    ``rho[g]`` is the integer matrix of g.
    """
    rho = [as_matrix(m) for m in rho]
    r = rho[0].shape[0]
    cache = {}

    def fixed_basis(H):
        H = frozenset(H)
        if H not in cache:
            gens = [h for h in sorted(H) if h]
            if not gens:
                B = identity(r)
            else:
                B = kernel(vstack(*[rho[h] - identity(r) for h in gens]))
            cache[H] = B
        return cache[H]

    def value(H):
        return FpModule.free(ZZ, fixed_basis(H).shape[1])

    def express(B, V):
        X = solve(B, V)
        if X is None:
            raise DomainError("vector outside the fixed lattice")
        return X

    def res(H, K):
        return express(fixed_basis(K), fixed_basis(H))

    def tr(H, K):
        H, K = frozenset(H), frozenset(K)
        seen = set()
        N = zeros(r, r)
        for h in sorted(H):
            if h in seen:
                continue
            seen |= {G.mul[h][k] for k in K}
            N = N + rho[h]
        return express(fixed_basis(H), N @ fixed_basis(K))

    def conj(x, H):
        return express(fixed_basis(G.conjugate(x, H)), rho[x] @ fixed_basis(H))

    return from_natural(G, ZZ, value, res, tr, conj, "coinduced")


def cyclic_action_matrices(n: int, sigma) -> list:
    """rho[k] = sigma^k for the cyclic group of order n."""
    sigma = as_matrix(sigma)
    out = [identity(sigma.shape[0])]
    for _ in range(1, n):
        out.append(sigma @ out[-1])
    return out
