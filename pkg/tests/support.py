"""Shared instance generators for the test suites."""

import random

import numpy as np

from mackeylab.groups import coset_space, cyclic, dihedral, klein, quaternion, symmetric
from mackeylab.mackey import (burnside_mackey, coinduced_mackey, cyclic_action_matrices,
                              direct_sum_functor, fixed_point_mackey)
from mackeylab.modalg import ZZ, FpModule, ModuleMap

CORPUS = [cyclic(n) for n in range(1, 9)] + [dihedral(3), dihedral(4), symmetric(3), quaternion(), klein()]


def permutation_rep(G, K):
    """Integer matrices of G acting on the cosets G/K."""
    X = coset_space(G, K)
    n = len(X)
    out = []
    for g in range(G.order):
        P = np.zeros((n, n), dtype=object)
        for x in range(n):
            P[X.act(g, x), x] = 1
        out.append(P)
    return out


def random_functor(G, rng: random.Random):
    classes = G.subgroup_classes
    kind = rng.choice(["burnside", "fixed", "coinduced", "sum"])
    if kind == "burnside":
        return burnside_mackey(G)
    if kind == "fixed":
        return fixed_point_mackey(G, rng.choice(classes).representative)
    if kind == "coinduced":
        return coinduced_mackey(G, permutation_rep(G, rng.choice(classes).representative))
    return direct_sum_functor(burnside_mackey(G),
                              fixed_point_mackey(G, rng.choice(classes).representative))


def normal_pairs(G):
    """All (H', H) with H' normal in H, H running over class representatives."""
    out = []
    for c in G.subgroup_classes:
        H = c.representative
        for Hp in G.subgroups_of(H):
            if all(G.conjugate(h, Hp) == Hp for h in H):
                out.append((Hp, H))
    return out


def random_cyclic_lattice(n: int, rng: random.Random):
    """A Z[Z/n]-lattice: a sum of permutation modules Z[Z/d] for d | n,
    possibly twisted by a sign when n is even."""
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    blocks = [rng.choice(divisors) for _ in range(rng.randint(1, 2))]
    size = sum(blocks)
    S = np.zeros((size, size), dtype=object)
    off = 0
    sign = -1 if (n % 2 == 0 and rng.random() < 0.3) else 1
    for d in blocks:
        for i in range(d):
            S[off + (i + 1) % d, off + i] = sign if d == 1 else 1
        off += d
    X = FpModule.free(ZZ, size)
    return X, ModuleMap(X, X, S)


def coinduced_cyclic(n: int, sigma: ModuleMap):
    return coinduced_mackey(cyclic(n), cyclic_action_matrices(n, sigma.matrix))


def phi_psi_instance(seed: int):
    """A seeded (M, H', H) with 1 < H' < H whenever the group allows it."""
    rng = random.Random(seed)
    G = rng.choice([G for G in CORPUS if G.order >= 4])
    M = random_functor(G, rng)
    pairs = normal_pairs(G)
    proper = [(a, b) for a, b in pairs if 1 < len(a) < len(b)]
    Hp, H = rng.choice(proper or pairs)
    return M, Hp, H

# every group of order at most 16 named by the acceptance corpus
ACCEPT_CORPUS = ([cyclic(n) for n in range(1, 17)] + [dihedral(n) for n in range(3, 9)]
                 + [symmetric(3), quaternion(), klein()])

# one line per acceptance criterion, printed in the terminal summary
RESULTS: list = []
