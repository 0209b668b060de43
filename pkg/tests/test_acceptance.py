"""Acceptance suite: one test per criterion, each reporting PASS or FAIL."""

import random
import subprocess
import sys
from pathlib import Path

import numpy as np

from mackeylab.burnside import burnside_element, burnside_product, burnside_ring_constants, table_of_marks
from mackeylab.groups import cyclic
from mackeylab.mackey import (burnside_mackey, check_mackey_axioms, coinduced_mackey,
                              fixed_point_mackey, functors_isomorphic_classwise,
                              geometric_fixed_points, mutation_fuzz, phi_infl_is_identity,
                              phi_psi_commute_check, unit_is_surjective)
from mackeylab.modalg import (ZZ, FpModule, PLocal, cyclic_tate,
                              modules_isomorphic, regular_module, trivial_module)
from mackeylab.modalg.linalg import hstack, solve
from mackeylab.zhat import (WittElement, broken_truncation, burnside_truncation, change_ring,
                            check_zmackey, constant_truncation, derived_burnside_homology,
                            filtration_F, gluing_value, inflate_finite, level_fixed_points,
                            level_quotient, normal_system_roundtrip, p_local_idempotents,
                            p_typical_component, zero_truncation)

from support import (ACCEPT_CORPUS, RESULTS, coinduced_cyclic, permutation_rep, phi_psi_instance,
                     random_cyclic_lattice)
from test_burnside import brute_constants
from test_zhat import core, direct_homology, fixed_count, zhat_set_product

GOLDEN = Path(__file__).parent / "golden"


def report(k, title, failures, detail=""):
    ok = not failures
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} {title}" + (f" [{detail}]" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, failures[:5]


def cyclic_module(n):
    return FpModule(ZZ, 1, np.array([[n]], dtype=object))


def test_criterion_01_burnside_ring():
    bad = []
    for G in ACCEPT_CORPUS:
        n = len(G.subgroup_classes)
        C = burnside_ring_constants(G)
        T = table_of_marks(G)
        for h in range(n):
            for k in range(n):
                a, b = burnside_element(G, {h: 1}), burnside_element(G, {k: 1})
                ab = burnside_product(a, b).class_vector()
                if ab != brute_constants(G, h, k) or ab != [int(C[h, k, l]) for l in range(n)]:
                    bad.append((G.name, "constants", h, k))
                if T.ghost(ab) != [x * y for x, y in zip(T.ghost(a.class_vector()), T.ghost(b.class_vector()))]:
                    bad.append((G.name, "ghost product", h, k))
        # unit goes to the all-ones vector
        if T.ghost(burnside_element(G, {n - 1: 1}).class_vector()) != [1] * n:
            bad.append((G.name, "ghost unit"))
        # triangular with nonzero diagonal, so injective
        if any(T.marks[k, k] == 0 for k in range(n)) or any(
                T.marks[k, h] != 0 for k in range(n) for h in range(k + 1, n)):
            bad.append((G.name, "ghost injectivity"))
    report(1, "Burnside ring: ghost injective ring map, constants match orbit oracle",
           bad, f"{len(ACCEPT_CORPUS)} groups")


def test_criterion_02_double_coset_formula():
    bad = []
    total = rejected = 0
    for G in ACCEPT_CORPUS:
        A = burnside_mackey(G)
        if not check_mackey_axioms(A).passed:
            bad.append((G.name, "burnside fails"))
        for c in G.subgroup_classes:
            if not check_mackey_axioms(fixed_point_mackey(G, c.representative)).passed:
                bad.append((G.name, "fixed-point functor fails", c.index))
        rep = mutation_fuzz(A, count=50, seed=G.order)
        total += rep.total
        rejected += rep.rejected
        if rep.rejected != rep.pinpointed:
            bad.append((G.name, "rejection without a named identity"))
        if not all(rep.undetected_valid) or len(rep.undetected_valid) != len(rep.undetected):
            bad.append((G.name, "undetected mutant is not a Mackey functor"))
    rate = rejected / total
    if rate < 0.95:
        bad.append(("rate", rate))
    report(2, "double coset formula: axioms pass, mutations pinpointed",
           bad, f"{rejected}/{total} rejected = {rate:.1%}; every other mutant verified valid")


def test_criterion_03_fixed_point_calculus():
    bad = []
    for G in ACCEPT_CORPUS:
        for c in G.subgroup_classes:
            N = c.representative
            if not G.is_normal(N):
                continue
            W, _ = G.quotient(N)
            for Mbar in (burnside_mackey(W), fixed_point_mackey(W, frozenset({0}))):
                if not phi_infl_is_identity(Mbar, G, N):
                    bad.append((G.name, "phi infl", c.index))
            for M in (burnside_mackey(G), coinduced_mackey(G, permutation_rep(G, frozenset({0})))):
                if not unit_is_surjective(M, N):
                    bad.append((G.name, "unit", c.index))
    P = geometric_fixed_points(burnside_mackey(cyclic(4)), frozenset({0, 2}))
    if not (P.group.order == 2 and check_mackey_axioms(P).passed
            and functors_isomorphic_classwise(P, burnside_mackey(cyclic(2)))):
        bad.append("Phi^C2(A_Z/4)")
    for seed in range(20):
        M, Hp, H = phi_psi_instance(seed)
        rep = phi_psi_commute_check(M, Hp, H)
        if not rep.ok:
            bad.append(("phi psi", seed, rep.mismatches[:2]))
    report(3, "fixed-point calculus: Phi Infl = Id, unit onto, Phi^C2(A_Z/4) = A_Z/2, Phi/Psi commute",
           bad, "20 seeded Phi/Psi instances")


def test_criterion_04_completed_burnside_arithmetic():
    bad = []
    e = WittElement.basis
    if e(2, 12) * e(3, 12) != e(6, 12):
        bad.append("e2 e3")
    if e(2, 12) * e(4, 12) != e(4, 12).scale(2):
        bad.append("e2 e4")
    for i in range(1, 13):
        if e(i, 12) * e(i, 12) != e(i, 12).scale(i):
            bad.append(("square", i))
    N = 24
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            prod = e(i, N) * e(j, N)
            want = {}
            for m in zhat_set_product(i, j):
                if m <= N:
                    want[m] = want.get(m, 0) + 1
            if prod.coeffs != want:
                bad.append(("product", i, j))
            for n in range(1, N + 1):
                if prod.ghost(n) != e(i, N).ghost(n) * e(j, N).ghost(n) or prod.ghost(n) != fixed_count(i, j, n):
                    bad.append(("ghost", i, j, n))
    report(4, "completed Burnside arithmetic: product relations, ghost compatibility at N=24", bad)


def test_criterion_05_p_typical_idempotents():
    bad = []
    N = 12
    for p in (2, 3):
        R = PLocal(p)
        E = p_local_idempotents(p, N)
        total = WittElement.zero(N, R)
        for l, x in E.items():
            if x * x != x:
                bad.append((p, l, "idempotent"))
            if any(not (x * y).is_zero() for k, y in E.items() if k != l):
                bad.append((p, l, "orthogonal"))
            if x.ghost_vector() != [1 if core(n, p) == l else 0 for n in range(1, N + 1)]:
                bad.append((p, l, "ghost indicator"))
            total = total + x
        if total != WittElement.one(N, R):
            bad.append((p, "sum"))
    A = change_ring(burnside_truncation(6), PLocal(2))
    ranks = [p_typical_component(A, 2, l, 1).invariant_factors()[1] for l in (1, 3, 5)]
    if ranks != [3, 2, 1] or sum(ranks) != 6:
        bad.append(("ranks", ranks))
    report(5, "p-typical idempotents: idempotent, orthogonal, complete; ranks (3,2,1)", bad)


def test_criterion_06_zhat_mackey_relations():
    bad = []
    rep = check_zmackey(burnside_truncation(12), general=True)
    if not rep.passed or not rep.checked.get("double_coset"):
        bad.append(str(rep))
    for M in (constant_truncation(12), constant_truncation(12, dual=True), zero_truncation(12)):
        if not check_zmackey(M).passed:
            bad.append(M.name)
    if check_zmackey(broken_truncation(12)).passed:
        bad.append("broken control passed")
    A = burnside_truncation(12)
    m = A.v[(4, 2)].copy()
    m[0, 0] += 1
    if check_zmackey(A.replace("v", (4, 2), m)).passed:
        bad.append("mutated control passed")
    report(6, "Z^-Mackey relations Z1-Z6 and the general double coset identity", bad)


def test_criterion_07_level_fixed_points():
    bad = []
    A = burnside_truncation(12)
    for n in range(1, 9):
        Phi = level_fixed_points(A, n)
        B = burnside_mackey(cyclic(n))
        if not check_mackey_axioms(Phi).passed:
            bad.append((n, "axioms"))
        if [x.invariant_factors() for x in Phi.values] != [y.invariant_factors() for y in B.values]:
            bad.append((n, "values"))
    for n in range(1, 13):
        d = sum(1 for k in range(1, n + 1) if n % k == 0)
        if level_quotient(A, n, 1).invariant_factors() != ([], d):
            bad.append((n, "quotient rank"))
    X = A.modules[1]
    stages = [filtration_F(A, l, 1) for l in range(1, 13)]
    for big, small in zip(stages, stages[1:]):
        if solve(hstack(big.gens, X.full_relations), small.gens, X.lift_ring) is None:
            bad.append((small.level, "not decreasing"))
    if stages[-1].rank != 0:
        bad.append("intersection nonzero")
    report(7, "level fixed points of A^ are Burnside functors; filtration decreasing to zero", bad)


def test_criterion_08_normal_system_roundtrip():
    bad = []
    cases = [zero_truncation(6)]
    for n in (2, 4, 6, 8):
        G = cyclic(n)
        cases += [inflate_finite(burnside_mackey(G), n),
                  inflate_finite(fixed_point_mackey(G, frozenset({0})), n),
                  inflate_finite(coinduced_mackey(G, permutation_rep(G, frozenset({0}))), n)]
    for M in cases:
        _, rec, rep = normal_system_roundtrip(M)
        if not rep.separated:
            bad.append((M.name, "not separated"))
        elif any(not modules_isomorphic(rec.modules[l], M.modules[l]) for l in M.levels):
            bad.append((M.name, "reconstruction differs"))
    _, _, rep = normal_system_roundtrip(burnside_truncation(12))
    if not rep.all_surjective:
        bad.append("A^ not surjective")
    report(8, "normal systems: finitely supported cases separated, A^ surjective at N=12",
           bad, f"{len(cases)} finitely supported cases")


def test_criterion_09_tate_suite():
    bad = []
    X, s = trivial_module()
    for n in range(1, 13):
        T = cyclic_tate(n, X, s)
        if not modules_isomorphic(T.even, cyclic_module(n)) or not T.odd.is_zero():
            bad.append((n, "trivial"))
        if not (modules_isomorphic(T.degree(2), T.degree(0)) and modules_isomorphic(T.degree(-1), T.degree(1))
                and modules_isomorphic(T.degree(4), T.degree(-2))):
            bad.append((n, "periodicity"))
        R, r = regular_module(n)
        TR = cyclic_tate(n, R, r)
        if not (TR.even.is_zero() and TR.odd.is_zero()):
            bad.append((n, "free"))
    rng = random.Random(9)
    checked = 0
    for n in range(1, 13):
        Y, t = random_cyclic_lattice(n, rng)
        for l in range(1, 13):
            g = gluing_value(n, l, Y, t)
            if l == n:
                want = "identity"
            elif n % l == 0 and sum(1 for k in range(2, n // l + 1) if (n // l) % k == 0) == 1:
                want = "tate"
            else:
                want = "zero"
            if g.case != want:
                bad.append((n, l, "case"))
                continue
            if want == "zero":
                if not g.payload.is_zero():
                    bad.append((n, l, "zero"))
                continue
            expect = g.payload if want == "identity" else g.payload.even
            P = geometric_fixed_points(coinduced_cyclic(n, t), frozenset(range(0, n, l)))
            checked += 1
            if not modules_isomorphic(P.values[0], expect):
                bad.append((n, l, "cross-check"))
    report(9, "Tate suite: Z/n and 0, free vanishing, periodicity, gluing law with cross-check",
           bad, f"{checked} cross-checked gluing values")


def test_criterion_10_derived_burnside_homology():
    bad = []
    N = 12
    d0 = derived_burnside_homology([1], [1], 0, N)
    d1 = derived_burnside_homology([1], [1], 1, N)
    d2 = derived_burnside_homology([1], [1], 2, N)
    for n in range(1, N + 1):
        if str(d0[n - 1]) != "Z":
            bad.append((n, 0))
        if not modules_isomorphic(d1[n - 1], cyclic_module(n)):
            bad.append((n, 1))
        if not d2[n - 1].is_zero():
            bad.append((n, 2))
    for deg in (0, 1, 2, 3):
        ours = derived_burnside_homology([2], [2], deg, N)
        for n in range(1, N + 1):
            if not modules_isomorphic(ours[n - 1], direct_homology([2], [2], deg, n)):
                bad.append(("S=S'=2", deg, n))
    report(10, "derived Burnside homology: Z, Z/n, 0 at (pt, pt); level-2 sets match direct oracle", bad)


def test_criterion_11_cli_determinism():
    cases = {
        "marks_cyclic4.txt": ["marks", "cyclic:4"],
        "zhat_idem_p2_l1_N5.txt": ["zhat", "idem", "-p", "2", "-l", "1", "-N", "5"],
        "dbh_N6_deg1.txt": ["dbh", "-N", "6", "--deg", "1"],
    }
    bad = []
    for name, args in cases.items():
        runs = [subprocess.run([sys.executable, "-m", "mackeylab", *args], capture_output=True).stdout
                for _ in range(2)]
        if runs[0] != (GOLDEN / name).read_bytes() or runs[0] != runs[1]:
            bad.append(name)
    if (GOLDEN / "zhat_idem_p2_l1_N5.txt").read_text() != "1 - 1/3*e3 - 1/5*e5\n":
        bad.append("idempotent golden text")
    report(11, "CLI golden files byte-stable", bad)
