import random

import pytest
from hypothesis import given, settings, strategies as st

from mackeylab.burnside import (BurnsideElement, basis_element, burnside_element, burnside_product,
                                burnside_ring_constants, format_ring_element, hom_basis,
                                hom_basis_orbit_count, identity_span, span_compose, table_of_marks)
from mackeylab.errors import DomainError
from mackeylab.groups import (coset_space, cyclic, dihedral, disjoint_union, from_orbit_form,
                              klein, point, quaternion, symmetric)

CORPUS = [cyclic(n) for n in range(1, 9)] + [dihedral(3), dihedral(4), symmetric(3), quaternion(), klein()]


def brute_class(G, S):
    for c in G.subgroup_classes:
        R = c.representative
        if len(R) == len(S) and any(
                frozenset(G.mul[G.mul[g][r]][G.inv[g]] for r in R) == S for g in range(G.order)):
            return c.index
    raise AssertionError("subgroup not found")


def brute_constants(G, h, k):
    """[G/H][G/K] by explicit left cosets: orbits of G on pairs of cosets
    and the class of each orbit's stabilizer."""
    H = G.subgroup_classes[h].representative
    K = G.subgroup_classes[k].representative

    def cosets(S):
        out = []
        for g in range(G.order):
            c = frozenset(G.mul[g][s] for s in S)
            if c not in out:
                out.append(c)
        return out

    A, B = cosets(H), cosets(K)
    pairs = {(a, b) for a in A for b in B}
    counts = [0] * len(G.subgroup_classes)
    while pairs:
        a, b = next(iter(sorted(pairs, key=lambda p: (sorted(p[0]), sorted(p[1])))))
        orbit = {(frozenset(G.mul[g][x] for x in a), frozenset(G.mul[g][x] for x in b)) for g in range(G.order)}
        pairs -= orbit
        stab = frozenset(g for g in range(G.order)
                         if frozenset(G.mul[g][x] for x in a) == a and frozenset(G.mul[g][x] for x in b) == b)
        counts[brute_class(G, stab)] += 1
    return counts


@pytest.mark.parametrize("G", CORPUS, ids=lambda G: G.name)
def test_structure_constants_three_routes(G):
    C = burnside_ring_constants(G)
    n = len(G.subgroup_classes)
    for h in range(n):
        for k in range(n):
            a = burnside_element(G, {h: 1})
            b = burnside_element(G, {k: 1})
            via_orbits = burnside_product(a, b).class_vector()
            assert via_orbits == [int(C[h, k, l]) for l in range(n)]
            assert via_orbits == brute_constants(G, h, k)
            assert span_compose(a, b).class_vector() == via_orbits


@pytest.mark.parametrize("G", CORPUS, ids=lambda G: G.name)
def test_ghost_is_injective_ring_map(G):
    T = table_of_marks(G)
    n = T.size
    rng = random.Random(G.order)
    for _ in range(10):
        a = [rng.randint(-3, 3) for _ in range(n)]
        b = [rng.randint(-3, 3) for _ in range(n)]
        ab = burnside_product(burnside_element(G, a), burnside_element(G, b)).class_vector()
        assert T.ghost(ab) == [x * y for x, y in zip(T.ghost(a), T.ghost(b))]
        assert T.from_ghost(T.ghost(a)) == a
    # lower-triangular with nonzero diagonal, hence injective
    for k in range(n):
        assert T.marks[k, k] != 0
        assert all(T.marks[k, h] == 0 for h in range(k + 1, n))


def test_marks_cyclic4():
    assert table_of_marks(cyclic(4)).rows() == [[4, 0, 0], [2, 2, 0], [1, 1, 1]]


def test_product_examples():
    G = cyclic(4)
    x = burnside_element(G, [0, 1, 0])
    assert burnside_product(x, x).class_vector() == [0, 2, 0]
    one = burnside_element(G, [0, 0, 1])
    assert burnside_product(one, x).class_vector() == [0, 1, 0]
    assert format_ring_element([0, 2, -1]) == "2*[G/H1] - [G/H2]"


@pytest.mark.parametrize("G", [cyclic(3), cyclic(4), symmetric(3), klein()], ids=lambda G: G.name)
def test_hom_basis_rank_matches_orbit_count(G):
    n = len(G.subgroup_classes)
    for counts in ([1] + [0] * (n - 1), [0] * (n - 1) + [1], [1] * n):
        S1 = from_orbit_form(G, dict(enumerate(counts)))
        for S2 in (point(G), S1):
            assert len(hom_basis(S1, S2)) == hom_basis_orbit_count(S1, S2)


def test_span_composition_unit_and_example():
    G = cyclic(3)
    X = coset_space(G, frozenset({0}))
    pt = point(G)
    basis = hom_basis(pt, X)
    for key in basis:
        a = basis_element(pt, X, key)
        assert span_compose(identity_span(pt), a) == a
        assert span_compose(a, identity_span(X)) == a
    # pt <- Z/3 -> pt composed with itself is 3 copies of Z/3
    b = basis_element(pt, pt, hom_basis(pt, pt)[0])
    assert hom_basis(pt, pt)[0].cls == 0
    assert span_compose(b, b).class_vector() == [3, 0]


def test_span_composition_associative_s3():
    G = symmetric(3)
    pt = point(G)
    X = disjoint_union(coset_space(G, G.subgroup_classes[1].representative), pt)
    A = [basis_element(pt, X, k) for k in hom_basis(pt, X)]
    B = [basis_element(X, X, k) for k in hom_basis(X, X)][:4]
    C = [basis_element(X, pt, k) for k in hom_basis(X, pt)]
    for a in A[:2]:
        for b in B:
            for c in C[:2]:
                assert span_compose(span_compose(a, b), c) == span_compose(a, span_compose(b, c))


def test_mismatched_groups_rejected():
    with pytest.raises(DomainError):
        burnside_product(burnside_element(cyclic(2), [1, 0]), burnside_element(cyclic(3), [1, 0]))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3),
       st.lists(st.integers(-4, 4), min_size=3, max_size=3),
       st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_burnside_ring_associative_commutative(a, b, c):
    G = cyclic(4)
    A, B, C = (burnside_element(G, v) for v in (a, b, c))
    assert burnside_product(A, B).class_vector() == burnside_product(B, A).class_vector()
    lhs = burnside_product(burnside_product(A, B), C).class_vector()
    rhs = burnside_product(A, burnside_product(B, C)).class_vector()
    assert lhs == rhs
