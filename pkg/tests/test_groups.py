from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from mackeylab.errors import DomainError, SizeBoundError
from mackeylab.groups import (build_group, coset_space, count_gmaps, cyclic, dihedral,
                              direct_product, disjoint_union, double_cosets, fibered_product,
                              fixed_points, from_orbit_form, klein, parse_group, perm_group,
                              point, product, quaternion, symmetric)
from mackeylab.groups.gsets import GMap

SMALL = [cyclic(1), cyclic(2), cyclic(4), cyclic(6), symmetric(3), dihedral(4), quaternion(), klein()]


def brute_subgroups(G):
    """All subsets containing 0 and closed under multiplication."""
    rest = list(range(1, G.order))
    out = set()
    for r in range(len(rest) + 1):
        for c in combinations(rest, r):
            S = frozenset((0,) + c)
            if G.order % len(S):
                continue
            if all(G.mul[a][b] in S for a in S for b in S):
                out.add(S)
    return out


def brute_classes(G, subs):
    classes = set()
    for S in subs:
        classes.add(frozenset(frozenset(G.mul[G.mul[g][s]][G.inv[g]] for s in S) for g in range(G.order)))
    return classes


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_subgroup_lattice_matches_brute_force(G):
    subs = brute_subgroups(G)
    assert set(G.subgroups) == subs
    assert {frozenset(c.conjugates) for c in G.subgroup_classes} == brute_classes(G, subs)


def test_known_lattice_sizes():
    assert len(dihedral(8).subgroups) == 19
    assert len(dihedral(4).subgroup_classes) == 8
    assert len(quaternion().subgroups) == 6
    assert len(symmetric(3).subgroup_classes) == 4


def test_class_order_and_witness():
    G = symmetric(3)
    orders = [c.order for c in G.subgroup_classes]
    assert orders == sorted(orders)
    for c in G.subgroup_classes:
        for S in c.conjugates:
            assert G.conjugate(G.witness(S), c.representative) == S


def test_cyclic_table():
    G = build_group({"kind": "cyclic", "n": 4})
    assert all(G.mul[i][j] == (i + j) % 4 for i in range(4) for j in range(4))


def test_build_from_perm_and_table():
    G = build_group({"kind": "perm", "degree": 3, "gens": [[1, 0, 2], [1, 2, 0]]})
    assert G.order == 6 and not G.is_abelian()
    H = build_group({"kind": "table", "mul": [list(r) for r in G.mul]})
    assert len(H.subgroups) == 6


def test_bad_table_rejected():
    with pytest.raises(DomainError):
        build_group({"kind": "table", "mul": [[0, 1], [0, 1]]})
    with pytest.raises(DomainError):
        parse_group("cyclic:x")


def test_size_bound(monkeypatch):
    monkeypatch.setenv("MACKEYLAB_MAX_GROUP_ORDER", "4")
    with pytest.raises(SizeBoundError):
        perm_group(4, [[1, 2, 3, 0], [1, 0, 2, 3]])


def test_quotient_and_product():
    G = dihedral(4)
    Z = G.centralizer(frozenset(range(G.order)))
    assert len(Z) == 2
    W, proj = G.quotient(Z)
    assert W.order == 4 and W.is_abelian()
    P = direct_product(cyclic(2), cyclic(3))
    assert P.order == 6 and P.is_abelian()


# -- G-sets ---------------------------------------------------------------------------------

@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_coset_spaces_orbit_stabilizer(G):
    for c in G.subgroup_classes:
        S = coset_space(G, c.representative)
        assert len(S) * c.order == G.order
        assert len(S.orbits) == 1
        assert S.orbit_classes == (c.index,)


def test_product_orbit_counting_s3():
    G = symmetric(3)
    C2 = next(c for c in G.subgroup_classes if c.order == 2).representative
    X = coset_space(G, C2)
    P = product(X, X)
    assert len(P) == 9
    assert sorted(len(o) for o in P.orbits) == [3, 6]


def test_fibered_product_and_double_cosets():
    G = symmetric(3)
    C2 = next(c for c in G.subgroup_classes if c.order == 2).representative
    comps = double_cosets(G, C2, C2, frozenset(range(6)))
    assert sorted(len(c.double_coset) for c in comps) == [2, 4]
    assert sorted(len(c.orbit) for c in comps) == [3, 6]
    X = coset_space(G, C2)
    pt = point(G)
    f = GMap(X, pt, [0] * 3)
    P, p1, p2 = fibered_product(f, f)
    assert len(P) == 9


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=2), st.lists(st.integers(0, 2), min_size=2, max_size=2))
def test_gmap_count_matches_enumeration(a, b):
    from itertools import product as cartesian
    G = cyclic(2)
    X = from_orbit_form(G, dict(enumerate(a)))
    T = from_orbit_form(G, dict(enumerate(b)))
    brute = 0
    for f in cartesian(range(len(T)), repeat=len(X)):
        if all(f[X.act(g, x)] == T.act(g, f[x]) for g in range(2) for x in range(len(X))):
            brute += 1
    assert count_gmaps(X, T) == brute


def test_fixed_points_carry_weyl_action():
    G = cyclic(4)
    S = disjoint_union(coset_space(G, frozenset({0, 2})), coset_space(G, frozenset({0})))
    F, pts, W = fixed_points(S, frozenset({0, 2}))
    assert len(pts) == 2 and W.order == 2
