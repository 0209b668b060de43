"""Mackey functors for a finite group.

Storage is per subgroup class c with representative R_c:

* ``values[c]``: the module M(G/R_c);
* ``weyl[c][w]``: the action of w in W(R_c) = N(R_c)/R_c, i.e. conjugation
  c_n for any n over w;
* one ``Edge(h, k, w)`` per N(R_h)-orbit of proper subgroups K of R_h, where
  K = w R_k w^-1 is the minimal member of its orbit and w its minimal
  conjugating witness.  ``res[e]`` represents c_{w^-1} o res^{R_h}_K and
  ``tr[e]`` represents tr^{R_h}_K o c_w, both as maps between M_h and M_k.

Every other subgroup S is identified with its representative through the
witness g_S (S = g_S R g_S^-1), which yields restriction, transfer and
conjugation between arbitrary subgroups (the "full view").  The convention
for conjugation is that c_x is the pushforward along gH -> g x^-1 (xHx^-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError
from ..groups import FiniteGroup, GMap, GSet, coset_space, product
from ..groups.gsets import double_coset_reps
from ..modalg import CoeffRing, FpModule, ModuleMap
from ..modalg.linalg import as_matrix, block_diag, identity, zeros
from ..modalg.modules import direct_sum


@dataclass(frozen=True, order=True)
class Edge:
    upper: int
    lower: int
    witness: int


def edge_data(G: FiniteGroup):
    """Canonical edges of G and, per class h, the lookup
    K' -> (edge, n) with K' = n K'' n^-1, n in N(R_h)."""
    cached = G.__dict__.get("_mackey_edges")
    if cached is not None:
        return cached
    classes = G.subgroup_classes
    edges: list[Edge] = []
    lookup: list[dict] = []
    for h, cls in enumerate(classes):
        R = cls.representative
        N = sorted(cls.normalizer)
        table: dict = {}
        for K in G.subgroups_of(R):
            if K == R or K in table:
                continue
            e = Edge(h, G.class_of(K), G.witness(K))
            edges.append(e)
            for n in N:
                K2 = G.conjugate(n, K)
                if K2 not in table:
                    table[K2] = (e, n)
        lookup.append(table)
    out = (tuple(edges), tuple(lookup))
    G.__dict__["_mackey_edges"] = out
    return out


def edges_of(G: FiniteGroup) -> tuple[Edge, ...]:
    return edge_data(G)[0]


class MackeyFunctor:
    def __init__(self, group: FiniteGroup, ring: CoeffRing, values, weyl, res, tr, name: str = ""):
        self.group = group
        self.ring = ring
        self.values: tuple[FpModule, ...] = tuple(values)
        self.weyl = tuple(tuple(as_matrix(m, v.gens, v.gens) for m in ws)
                          for ws, v in zip(weyl, self.values))
        self.res = {e: as_matrix(m) for e, m in res.items()}
        self.tr = {e: as_matrix(m) for e, m in tr.items()}
        self.name = name
        self._cache: dict = {}
        classes = group.subgroup_classes
        if len(self.values) != len(classes) or len(self.weyl) != len(classes):
            raise DomainError("need one value and one Weyl action per subgroup class")
        for c, cls in enumerate(classes):
            if len(self.weyl[c]) != cls.weyl.order:
                raise DomainError(f"class H{c} needs {cls.weyl.order} Weyl matrices")
            if self.values[c].ring != ring:
                raise DomainError("value module over the wrong ring")
        edges = set(edges_of(group))
        if set(self.res) != edges or set(self.tr) != edges:
            raise DomainError("res and tr must be given on exactly the canonical edges")

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values)
        return f"MackeyFunctor({self.name or self.group.name}; {vals})"

    # -- full view ------------------------------------------------------
    def value(self, S) -> FpModule:
        return self.values[self.group.class_of(S)]

    def dim(self, S) -> int:
        return self.value(S).gens

    def weyl_matrix(self, c: int, n: int) -> np.ndarray:
        cls = self.group.subgroup_classes[c]
        w = cls.weyl_map[n]
        if w < 0:
            raise DomainError("element does not normalize the representative")
        return self.weyl[c][w]

    def conj(self, x: int, S) -> np.ndarray:
        """c_x : M(S) -> M(x S x^-1)."""
        G = self.group
        S = frozenset(S)
        key = ("c", x, S)
        if key not in self._cache:
            T = G.conjugate(x, S)
            c = G.class_of(S)
            z = G.m(G.inv[G.witness(T)], x, G.witness(S))
            self._cache[key] = self.weyl_matrix(c, z)
        return self._cache[key]

    def _locate(self, S, K):
        G = self.group
        h = G.class_of(S)
        gS = G.witness(S)
        Kp = G.conjugate(G.inv[gS], K)
        e, n = edge_data(G)[1][h][Kp]
        z = G.m(G.inv[G.witness(K)], gS, n, e.witness)
        return h, e, n, z

    def res_map(self, S, K) -> np.ndarray:
        """res^S_K : M(S) -> M(K) for K inside S."""
        S, K = frozenset(S), frozenset(K)
        key = ("r", S, K)
        if key not in self._cache:
            if K == S:
                out = identity(self.dim(S))
            else:
                G = self.group
                h, e, n, z = self._locate(S, K)
                out = self.weyl_matrix(e.lower, z) @ self.res[e] @ self.weyl_matrix(h, G.inv[n])
            self._cache[key] = out
        return self._cache[key]

    def tr_map(self, S, K) -> np.ndarray:
        """tr^S_K : M(K) -> M(S) for K inside S."""
        S, K = frozenset(S), frozenset(K)
        key = ("t", S, K)
        if key not in self._cache:
            if K == S:
                out = identity(self.dim(S))
            else:
                G = self.group
                h, e, n, z = self._locate(S, K)
                out = self.weyl_matrix(h, n) @ self.tr[e] @ self.weyl_matrix(e.lower, G.inv[z])
            self._cache[key] = out
        return self._cache[key]

    def equal_maps(self, A: np.ndarray, B: np.ndarray, target) -> bool:
        return self.value(target).contains(A - B)

    # -- evaluation -------------------------------------------------------
    def evaluate(self, S: GSet) -> FpModule:
        return evaluate(self, S)

    def to_json(self) -> dict:
        from ..serialize import mackey_to_json
        return mackey_to_json(self)

    def map_entries(self):
        """All stored matrices as (kind, key, matrix), in a fixed order."""
        out = []
        for c, ws in enumerate(self.weyl):
            for w, m in enumerate(ws):
                out.append(("weyl", (c, w), m))
        for e in sorted(self.res):
            out.append(("res", e, self.res[e]))
        for e in sorted(self.tr):
            out.append(("tr", e, self.tr[e]))
        return out

    def replace(self, kind: str, key, matrix) -> "MackeyFunctor":
        weyl = [list(ws) for ws in self.weyl]
        res, tr = dict(self.res), dict(self.tr)
        if kind == "weyl":
            weyl[key[0]][key[1]] = matrix
        elif kind == "res":
            res[key] = matrix
        else:
            tr[key] = matrix
        return MackeyFunctor(self.group, self.ring, self.values, weyl, res, tr, self.name)


def from_natural(G: FiniteGroup, ring: CoeffRing, value, res, tr, conj, name: str = "") -> MackeyFunctor:
    """Build class data from a description valid on all subgroups:
    value(S), res(S, K), tr(S, K) and conj(x, S) as matrices."""
    classes = G.subgroup_classes
    values = [value(c.representative) for c in classes]
    weyl = [[as_matrix(conj(c.weyl_lift[w], c.representative), values[i].gens, values[i].gens)
             for w in range(c.weyl.order)] for i, c in enumerate(classes)]
    R, T = {}, {}
    for e in edges_of(G):
        Rk = classes[e.lower].representative
        Rh = classes[e.upper].representative
        K = G.conjugate(e.witness, Rk)
        dk, dh = values[e.lower].gens, values[e.upper].gens
        R[e] = as_matrix(conj(G.inv[e.witness], K), dk, dk) @ as_matrix(res(Rh, K), dk, dh)
        T[e] = as_matrix(tr(Rh, K), dh, dk) @ as_matrix(conj(e.witness, Rk), dk, dk)
    return MackeyFunctor(G, ring, values, weyl, R, T, name)


# -- axiom checking ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    identity: str
    where: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.identity} at {self.where}" + (f": {self.detail}" if self.detail else "")


@dataclass
class MackeyReport:
    violations: list = field(default_factory=list)
    malformed: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.malformed

    def __bool__(self):
        return self.passed

    def first(self):
        return (self.malformed or self.violations or [None])[0]

    def __str__(self):
        if self.passed:
            return "pass"
        return "\n".join(str(v) for v in self.malformed + self.violations)


class _Stop(Exception):
    pass


def _label(G: FiniteGroup, S) -> str:
    return f"H{G.class_of(S)}"


def check_mackey_axioms(M: MackeyFunctor, fail_fast: bool = False) -> MackeyReport:
    """Check the Mackey axioms on the full view of M.

    Identities checked: Weyl actions are homomorphisms, every matrix is a
    well-defined module map, restriction and transfer commute with
    conjugation, both are transitive, and the double coset formula
    res^S_K tr^S_L = sum_x tr^K_{K n xLx^-1} c_x res^L_{L n x^-1Kx}
    holds for all K, L inside each class representative S.  Violations name
    the identity and the subgroup classes (K, L, S) involved.
    """
    G = M.group
    rep = MackeyReport()
    classes = G.subgroup_classes

    def fail(kind, where, detail=""):
        rep.violations.append(Violation(kind, where, detail))
        if fail_fast:
            raise _Stop

    # well-formedness
    for c, ws in enumerate(M.weyl):
        V = M.values[c]
        for w, m in enumerate(ws):
            if not ModuleMap(V, V, m, check=False).well_defined():
                rep.malformed.append(Violation("malformed", ("weyl", f"H{c}", w), "not a module map"))
    for kind, table in (("res", M.res), ("tr", M.tr)):
        for e, m in sorted(table.items()):
            src, tgt = (M.values[e.upper], M.values[e.lower]) if kind == "res" else \
                (M.values[e.lower], M.values[e.upper])
            if m.shape != (tgt.gens, src.gens):
                rep.malformed.append(Violation("malformed", (kind, f"H{e.upper}", f"H{e.lower}"),
                                               f"shape {m.shape}, expected {(tgt.gens, src.gens)}"))
            elif not ModuleMap(src, tgt, m, check=False).well_defined():
                rep.malformed.append(Violation("malformed", (kind, f"H{e.upper}", f"H{e.lower}"),
                                               "not a module map"))
    if rep.malformed:
        return rep

    try:
        # Weyl actions are group homomorphisms
        for c, cls in enumerate(classes):
            W = cls.weyl
            V = M.values[c]
            if not V.contains(M.weyl[c][0] - identity(V.gens)):
                fail("weyl_identity", (f"H{c}",))
            for a in range(W.order):
                for b in range(W.order):
                    if not V.contains(M.weyl[c][a] @ M.weyl[c][b] - M.weyl[c][W.mul[a][b]]):
                        fail("weyl_homomorphism", (f"H{c}", a, b))
        # compatibility with conjugation
        for S in G.subgroups:
            for K in G.subgroups_of(S):
                if K == S:
                    continue
                for x in G.generators:
                    xS, xK = G.conjugate(x, S), G.conjugate(x, K)
                    lhs = M.conj(x, K) @ M.res_map(S, K)
                    rhs = M.res_map(xS, xK) @ M.conj(x, S)
                    if not M.equal_maps(lhs, rhs, xK):
                        fail("res_conjugation", (_label(G, K), _label(G, S)), f"x={x}")
                    lhs = M.conj(x, S) @ M.tr_map(S, K)
                    rhs = M.tr_map(xS, xK) @ M.conj(x, K)
                    if not M.equal_maps(lhs, rhs, xS):
                        fail("tr_conjugation", (_label(G, K), _label(G, S)), f"x={x}")
        for cls in classes:
            S = cls.representative
            subs = G.subgroups_of(S)
            # transitivity along chains L < K < S
            for K in subs:
                if K == S:
                    continue
                for L in G.subgroups_of(K):
                    if L == K:
                        continue
                    if not M.equal_maps(M.res_map(K, L) @ M.res_map(S, K), M.res_map(S, L), L):
                        fail("res_transitivity", (_label(G, L), _label(G, K), _label(G, S)))
                    if not M.equal_maps(M.tr_map(S, K) @ M.tr_map(K, L), M.tr_map(S, L), S):
                        fail("tr_transitivity", (_label(G, L), _label(G, K), _label(G, S)))
            # double coset formula
            for K in subs:
                for L in subs:
                    lhs = M.res_map(S, K) @ M.tr_map(S, L)
                    rhs = zeros(M.dim(K), M.dim(L))
                    for x in double_coset_reps(G, K, L, S):
                        A = L & G.conjugate(G.inv[x], K)
                        B = K & G.conjugate(x, L)
                        rhs = rhs + M.tr_map(K, B) @ M.conj(x, A) @ M.res_map(L, A)
                    if not M.equal_maps(lhs, rhs, K):
                        fail("double_coset", (_label(G, K), _label(G, L), _label(G, S)))
    except _Stop:
        pass
    return rep


# -- evaluation and spans ------------------------------------------------------------

def evaluation_layout(M: MackeyFunctor, S: GSet):
    """(module, offsets): M(S) as the sum over orbits of M(stabilizer)."""
    mods = [M.value(st) for st in S.orbit_stabilizers]
    offsets = []
    o = 0
    for m in mods:
        offsets.append(o)
        o += m.gens
    return direct_sum(M.ring, mods), offsets


def evaluate(M: MackeyFunctor, S: GSet) -> FpModule:
    return evaluation_layout(M, S)[0]


def _pullback(M: MackeyFunctor, S: GSet, t: int, stab_x) -> tuple[int, np.ndarray]:
    """f^*: M(orbit of t) -> M(St_x) for the orbit map G/St_x -> S sending
    the base coset to t.  Returns (orbit index, matrix)."""
    G = M.group
    i = S.quotient[t]
    o_stab = S.orbit_stabilizers[i]
    y = S.transporters[t]
    big = G.conjugate(y, o_stab)
    return i, M.res_map(big, stab_x) @ M.conj(y, o_stab)


def _pushforward(M: MackeyFunctor, S: GSet, t: int, stab_x) -> tuple[int, np.ndarray]:
    G = M.group
    i = S.quotient[t]
    o_stab = S.orbit_stabilizers[i]
    y = S.transporters[t]
    big = G.conjugate(y, o_stab)
    return i, M.conj(G.inv[y], big) @ M.tr_map(big, stab_x)


def apply_span(M: MackeyFunctor, a) -> ModuleMap:
    """The map M(S) -> M(S') induced by a Burnside element a: S -> S'.

    A transitive span S <- G/R -> S' acts by restriction along the left leg
    followed by transfer along the right leg.
    """
    if a.group is not M.group:
        raise DomainError("span and functor over different groups")
    G = M.group
    S, T = a.source, a.target
    src, so = evaluation_layout(M, S)
    tgt, to = evaluation_layout(M, T)
    out = zeros(tgt.gens, src.gens)
    for key, coeff in a.coeffs.items():
        R = G.subgroup_classes[key.cls].representative
        i, pull = _pullback(M, S, key.left, R)
        j, push = _pushforward(M, T, key.right, R)
        block = push @ pull
        if block.shape != (M.values[T.orbit_classes[j]].gens, M.values[S.orbit_classes[i]].gens):
            raise DomainError("dimension mismatch while applying a span")
        r0, c0 = to[j], so[i]
        out[r0:r0 + block.shape[0], c0:c0 + block.shape[1]] += coeff * block
    return ModuleMap(src, tgt, out, check=False)


def burnside_action(M: MackeyFunctor, a, S: GSet) -> ModuleMap:
    """Action of a in A^G on M(S) through the span S <- S x S0 -> S."""
    from ..burnside import orbit_gset, span_element
    G = M.group
    src = evaluate(M, S)
    total = ModuleMap.zero(src, src)
    for c, coeff in enumerate(a.class_vector()):
        if not coeff:
            continue
        X = product(S, orbit_gset(G, c))
        n0 = orbit_gset(G, c).size
        proj = GMap(X, S, [p // n0 for p in range(X.size)], check=False)
        total = total + apply_span(M, span_element(X, proj, proj)).scale(coeff)
    return total


# -- morphisms ------------------------------------------------------------------------

class MackeyMorphism:
    """Per-class module maps source_c -> target_c."""

    def __init__(self, source: MackeyFunctor, target: MackeyFunctor, maps):
        if source.group is not target.group:
            raise DomainError("morphism between functors over different groups")
        self.source = source
        self.target = target
        self.maps = tuple(as_matrix(m, t.gens, s.gens)
                          for m, s, t in zip(maps, source.values, target.values))

    def check(self) -> list[Violation]:
        out = []
        S, T = self.source, self.target
        for c, f in enumerate(self.maps):
            if not ModuleMap(S.values[c], T.values[c], f, check=False).well_defined():
                out.append(Violation("malformed", (f"H{c}",)))
                continue
            for w in range(len(S.weyl[c])):
                if not T.values[c].contains(f @ S.weyl[c][w] - T.weyl[c][w] @ f):
                    out.append(Violation("weyl_equivariance", (f"H{c}", w)))
        if out:
            return out
        for e in edges_of(S.group):
            fh, fk = self.maps[e.upper], self.maps[e.lower]
            if not T.values[e.lower].contains(fk @ S.res[e] - T.res[e] @ fh):
                out.append(Violation("res_naturality", (f"H{e.upper}", f"H{e.lower}")))
            if not T.values[e.upper].contains(fh @ S.tr[e] - T.tr[e] @ fk):
                out.append(Violation("tr_naturality", (f"H{e.upper}", f"H{e.lower}")))
        return out

    def is_morphism(self) -> bool:
        return not self.check()

    def module_map(self, c: int) -> ModuleMap:
        return ModuleMap(self.source.values[c], self.target.values[c], self.maps[c], check=False)

    def is_iso(self) -> bool:
        return all(self.module_map(c).is_iso() for c in range(len(self.maps)))

    def is_surjective(self) -> bool:
        return all(self.module_map(c).is_surjective() for c in range(len(self.maps)))


def _lift(P: np.ndarray, ambient: FpModule, B: np.ndarray) -> np.ndarray:
    """X with P X = B modulo the relations of ambient."""
    from ..modalg.linalg import hstack, solve
    big = hstack(P, ambient.full_relations)
    sol = solve(big, B, ambient.lift_ring)
    if sol is None:
        raise DomainError("map does not restrict to the kernel")
    return sol[:P.shape[1], :]


def morphism_kernel(f: MackeyMorphism) -> MackeyFunctor:
    S = f.source
    kers = [f.module_map(c).kernel() for c in range(len(f.maps))]
    values = [k[0] for k in kers]
    P = [k[1].matrix for k in kers]
    weyl = [[_lift(P[c], S.values[c], S.weyl[c][w] @ P[c]) for w in range(len(S.weyl[c]))]
            for c in range(len(values))]
    res = {e: _lift(P[e.lower], S.values[e.lower], S.res[e] @ P[e.upper]) for e in S.res}
    tr = {e: _lift(P[e.upper], S.values[e.upper], S.tr[e] @ P[e.lower]) for e in S.tr}
    return MackeyFunctor(S.group, S.ring, values, weyl, res, tr, "kernel")


def morphism_cokernel(f: MackeyMorphism) -> MackeyFunctor:
    T = f.target
    values = [f.module_map(c).cokernel()[0] for c in range(len(f.maps))]
    return MackeyFunctor(T.group, T.ring, values, T.weyl, T.res, T.tr, "cokernel")


def direct_sum_functor(*Ms: MackeyFunctor) -> MackeyFunctor:
    G = Ms[0].group
    n = len(G.subgroup_classes)
    values = [direct_sum(Ms[0].ring, [M.values[c] for M in Ms]) for c in range(n)]
    weyl = [[block_diag(*[M.weyl[c][w] for M in Ms]) for w in range(len(Ms[0].weyl[c]))]
            for c in range(n)]
    res = {e: block_diag(*[M.res[e] for M in Ms]) for e in Ms[0].res}
    tr = {e: block_diag(*[M.tr[e] for M in Ms]) for e in Ms[0].tr}
    return MackeyFunctor(G, Ms[0].ring, values, weyl, res, tr, "sum")


def zero_functor(G: FiniteGroup, ring: CoeffRing) -> MackeyFunctor:
    classes = G.subgroup_classes
    values = [FpModule.zero(ring) for _ in classes]
    weyl = [[zeros(0, 0)] * c.weyl.order for c in classes]
    E = edges_of(G)
    return MackeyFunctor(G, ring, values, weyl, {e: zeros(0, 0) for e in E},
                         {e: zeros(0, 0) for e in E}, "zero")


def functors_isomorphic_classwise(A: MackeyFunctor, B: MackeyFunctor) -> bool:
    from ..modalg import modules_isomorphic
    return len(A.values) == len(B.values) and all(
        modules_isomorphic(x, y) for x, y in zip(A.values, B.values))


def check_span_functoriality(M: MackeyFunctor, gsets=None, triples=None) -> list[str]:
    """Check identity and composition laws of apply_span on basis spans.

    ``gsets`` defaults to all orbits G/H; ``triples`` optionally restricts
    the composable triples (S1, S2, S3) to check.  Composition goes through
    fibered products, independently of the double coset formula.
    """
    from ..burnside import basis_element, hom_basis, identity_span, orbit_gset, span_compose
    G = M.group
    if gsets is None:
        gsets = [orbit_gset(G, c) for c in range(len(G.subgroup_classes))]
    problems = []
    for i, S in enumerate(gsets):
        f = apply_span(M, identity_span(S))
        if not f.equals(ModuleMap.identity(f.source)):
            problems.append(f"identity on set {i}")
    if triples is None:
        triples = [(a, b, c) for a in range(len(gsets)) for b in range(len(gsets))
                   for c in range(len(gsets))]
    for i, j, k in triples:
        S1, S2, S3 = gsets[i], gsets[j], gsets[k]
        for k1 in hom_basis(S1, S2):
            a = basis_element(S1, S2, k1)
            fa = apply_span(M, a)
            for k2 in hom_basis(S2, S3):
                b = basis_element(S2, S3, k2)
                lhs = apply_span(M, b) @ fa
                rhs = apply_span(M, span_compose(a, b))
                if not lhs.equals(rhs):
                    problems.append(f"composition {k1} then {k2} on sets {(i, j, k)}")
    return problems
