import json
import random

import numpy as np
import pytest

from mackeylab.burnside import burnside_element, burnside_product, orbit_gset
from mackeylab.errors import DomainError
from mackeylab.groups import coset_space, cyclic, disjoint_union, klein, point, symmetric
from mackeylab.mackey import (GreenPairing, MackeyMorphism, apply_span, burnside_action,
                              burnside_green_pairing, burnside_mackey, categorical_fixed_points,
                              check_green, check_mackey_axioms, check_span_functoriality,
                              coinduced_mackey, direct_sum_functor, edges_of, evaluate,
                              fixed_point_mackey, functors_isomorphic_classwise,
                              geometric_fixed_points, morphism_cokernel, morphism_kernel,
                              mutation_fuzz, phi_infl_is_identity, phi_psi_commute_check,
                              unit_is_surjective, zero_functor)
from mackeylab.modalg import ZZ, FpModule, modules_isomorphic
from mackeylab.serialize import mackey_from_json, mackey_to_json

from support import CORPUS, permutation_rep, phi_psi_instance

ids = lambda G: G.name


@pytest.mark.parametrize("G", CORPUS, ids=ids)
def test_burnside_and_fixed_point_functors_pass(G):
    assert check_mackey_axioms(burnside_mackey(G)).passed
    for c in G.subgroup_classes:
        assert check_mackey_axioms(fixed_point_mackey(G, c.representative)).passed


@pytest.mark.parametrize("G", [cyclic(4), symmetric(3), klein()], ids=ids)
def test_coinduced_ranks_are_orbit_counts(G):
    for c in G.subgroup_classes:
        K = c.representative
        M = coinduced_mackey(G, permutation_rep(G, K))
        assert check_mackey_axioms(M).passed
        X = coset_space(G, K)
        for d in G.subgroup_classes:
            H = d.representative
            orbits = {frozenset(X.act(h, x) for h in H) for x in range(len(X))}
            assert M.value(H).gens == len(orbits)


def test_mutated_transfer_is_pinpointed():
    G = cyclic(4)
    A = burnside_mackey(G)
    e = next(e for e in edges_of(G) if (e.upper, e.lower) == (2, 1))
    m = A.tr[e].copy()
    m[0, 0] += 1
    rep = check_mackey_axioms(A.replace("tr", e, m))
    assert not rep.passed
    assert {v.identity for v in rep.violations} == {"tr_transitivity", "double_coset"}


def test_zero_functor_passes():
    assert check_mackey_axioms(zero_functor(symmetric(3), ZZ)).passed


@pytest.mark.parametrize("G", [cyclic(4), symmetric(3), klein()], ids=ids)
def test_fuzzer_accounts_for_every_mutant(G):
    rep = mutation_fuzz(burnside_mackey(G), count=30, seed=1)
    assert rep.accounted
    assert rep.rejected == rep.pinpointed
    # anything not rejected must really be a Mackey functor
    assert len(rep.undetected) == len(rep.undetected_valid) == rep.total - rep.rejected
    assert all(rep.undetected_valid)


def test_fuzzer_undetected_mutants_on_prime_order_are_valid():
    rep = mutation_fuzz(burnside_mackey(cyclic(2)), count=50, seed=0)
    assert rep.undetected and all(rep.undetected_valid)
    assert rep.rate >= 0.85


def test_geometric_fixed_points_of_burnside_z4():
    P = geometric_fixed_points(burnside_mackey(cyclic(4)), frozenset({0, 2}))
    assert P.group.order == 2
    assert check_mackey_axioms(P).passed
    assert [str(v) for v in P.values] == ["Z", "Z^2"]
    assert functors_isomorphic_classwise(P, burnside_mackey(cyclic(2)))


def test_geometric_fixed_points_needs_normal():
    with pytest.raises(DomainError):
        geometric_fixed_points(burnside_mackey(symmetric(3)), symmetric(3).subgroup_classes[1].representative)


@pytest.mark.parametrize("G", CORPUS, ids=ids)
def test_phi_of_inflation_is_identity(G):
    for c in G.subgroup_classes:
        N = c.representative
        if not G.is_normal(N):
            continue
        W, _ = G.quotient(N)
        assert phi_infl_is_identity(burnside_mackey(W), G, N)
        assert phi_infl_is_identity(fixed_point_mackey(W, frozenset({0})), G, N)
        assert unit_is_surjective(burnside_mackey(G), N)


def test_categorical_fixed_points_restrict_values():
    A = burnside_mackey(cyclic(4))
    C = categorical_fixed_points(A, frozenset({0, 2}))
    assert C.functor.group.order == 2
    assert [str(v) for v in C.functor.values] == ["Z", "Z^2"]
    assert check_mackey_axioms(C.functor).passed


@pytest.mark.parametrize("seed", range(8))
def test_phi_psi_commute_on_seeded_instances(seed):
    M, Hp, H = phi_psi_instance(seed)
    rep = phi_psi_commute_check(M, Hp, H)
    assert rep.ok, rep.mismatches


def test_phi_psi_rejects_broken_input_and_bad_pairs():
    G = cyclic(4)
    A = burnside_mackey(G)
    e = edges_of(G)[0]
    m = A.res[e].copy()
    m[0, 0] += 1
    assert not phi_psi_commute_check(A.replace("res", e, m), frozenset({0, 2}), frozenset(range(4))).ok
    with pytest.raises(DomainError):
        phi_psi_commute_check(A, frozenset(range(4)), frozenset({0, 2}))
    S3 = symmetric(3)
    C2 = S3.subgroup_classes[1].representative
    with pytest.raises(DomainError):
        phi_psi_commute_check(burnside_mackey(S3), C2, frozenset(range(6)))


@pytest.mark.parametrize("G", CORPUS, ids=ids)
def test_burnside_green_functor(G):
    assert check_green(burnside_green_pairing(G)).passed


def test_green_check_catches_bad_product():
    P = burnside_green_pairing(cyclic(4))
    mu = [T.copy() for T in P.mu]
    mu[1][0, 0, 0] += 1
    assert not check_green(GreenPairing(P.M1, P.M2, P.M, mu)).passed


@pytest.mark.parametrize("G", [cyclic(3), cyclic(4), symmetric(3)], ids=ids)
def test_span_functoriality(G):
    assert check_span_functoriality(burnside_mackey(G)) == []
    assert check_span_functoriality(fixed_point_mackey(G, frozenset({0}))) == []


def test_burnside_action_is_ring_multiplication():
    G = symmetric(3)
    A = burnside_mackey(G)
    pt = point(G)
    n = len(G.subgroup_classes)
    rng = random.Random(3)
    for _ in range(5):
        a = [rng.randint(-2, 2) for _ in range(n)]
        b = [rng.randint(-2, 2) for _ in range(n)]
        act = burnside_action(A, burnside_element(G, a), pt)
        got = list(act.matrix @ np.array(b, dtype=object))
        want = burnside_product(burnside_element(G, a), burnside_element(G, b)).class_vector()
        assert got == want


def test_evaluate_is_additive():
    G = cyclic(4)
    A = burnside_mackey(G)
    S = disjoint_union(orbit_gset(G, 0), orbit_gset(G, 1), point(G))
    assert evaluate(A, S).gens == sum(v.gens for v in A.values)


def test_apply_span_identity():
    from mackeylab.burnside import identity_span
    G = cyclic(4)
    A = burnside_mackey(G)
    S = disjoint_union(orbit_gset(G, 1), point(G))
    f = apply_span(A, identity_span(S))
    assert (f.matrix == np.identity(f.matrix.shape[0], dtype=object)).all()


def test_serialize_roundtrip():
    M = direct_sum_functor(burnside_mackey(symmetric(3)), fixed_point_mackey(symmetric(3), frozenset({0})))
    J = json.loads(json.dumps(mackey_to_json(M)))
    M2 = mackey_from_json(J)
    assert check_mackey_axioms(M2).passed
    assert mackey_to_json(M2) == J
    with pytest.raises(DomainError):
        mackey_from_json({"group": "cyclic:2"})


def test_morphism_kernel_and_cokernel_of_doubling():
    A = burnside_mackey(cyclic(4))
    f = MackeyMorphism(A, A, [2 * np.identity(v.gens, dtype=object) for v in A.values])
    assert f.is_morphism()
    assert all(v.is_zero() for v in morphism_kernel(f).values)
    Q = morphism_cokernel(f)
    assert check_mackey_axioms(Q).passed
    for v, w in zip(Q.values, A.values):
        two = FpModule(ZZ, w.gens, 2 * np.identity(w.gens, dtype=object))
        assert modules_isomorphic(v, two)


def test_non_natural_map_is_not_a_morphism():
    A = burnside_mackey(cyclic(2))
    maps = [np.identity(v.gens, dtype=object) for v in A.values]
    maps[0] = 2 * maps[0]
    assert not MackeyMorphism(A, A, maps).is_morphism()
