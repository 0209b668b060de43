"""Truncated Mackey profunctors for the profinite integers.

Data per level l in a divisor-closed set L: a module M_l with an
automorphism sigma_l of order dividing l, and for b | a in L maps
v_{a,b}: M_a -> M_b (pushforward along Z/a -> Z/b) and
f_{a,b}: M_b -> M_a (pullback).  Matrices act on columns.

Relations checked by ``check_zmackey``:

Z1  v_{a,b} sigma_a^b = v_{a,b}
Z2  sigma_a^b f_{a,b} = f_{a,b}
Z3  transitivity of v and f, identities on the diagonal
Z4  v and f commute with sigma
Z5  f_{y,b} v_{x,b} = v_{m,y} f_{m,x}, m = xy/b, when x/b and y/b are coprime
Z6  f_{a,b} v_{a,b} = sum_{j < a/b} sigma_a^{jb}

plus the general double coset identity
f_{y,b} v_{x,b} = sum_{j < g/b} v_{m,y} sigma_m^{jb} f_{m,x}, g = gcd, m = lcm,
which follows from the six relations and is checked as a redundant test.

The action of e_k on M_l comes from the orbit decomposition of
(Z/l) x (Z/k): gcd(k, l) orbits, each Z/lcm(k, l) with both legs equal to
the projection, so e_k acts by gcd(k, l) v_{m,l} f_{m,l}.  At l = 1 this
is the bare composite v f.  For l > 1 the bare composite differs by the
factor gcd(k, l).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from ..errors import DomainError
from ..modalg import CoeffRing, FpModule, ModuleMap, ZZ
from ..modalg.linalg import as_matrix, identity, zeros
from .witt import WittElement, lcm


def divisor_closed(levels) -> tuple[int, ...]:
    L = sorted(set(int(x) for x in levels))
    if not L or L[0] < 1:
        raise DomainError("levels must be positive")
    S = set(L)
    for a in L:
        for d in range(1, a + 1):
            if a % d == 0 and d not in S:
                raise DomainError(f"level set is not divisor-closed: {d} divides {a}")
    return tuple(L)


def _mpow(A: np.ndarray, k: int) -> np.ndarray:
    out = identity(A.shape[0])
    for _ in range(k):
        out = A @ out
    return out


class ZMackeyTrunc:
    """A truncated Mackey profunctor.

    ``support_bounded``: levels outside L are treated as zero, so any
    composite through them vanishes.  ``finitely_supported``: the object
    genuinely vanishes outside L, so truncated limits and filtrations are
    exact rather than approximations.
    """

    def __init__(self, ring: CoeffRing, N: int, modules, sigma, v, f, levels=None,
                 support_bounded: bool = False, finitely_supported: bool = False, name: str = ""):
        self.ring = ring
        self.N = int(N)
        self.levels = divisor_closed(levels if levels is not None else range(1, self.N + 1))
        if max(self.levels) > self.N:
            raise DomainError("levels exceed the truncation bound")
        self.modules = {l: modules[l] for l in self.levels}
        for l, Mod in self.modules.items():
            if Mod.ring != ring:
                raise DomainError(f"module at level {l} is over {Mod.ring}, expected {ring}")
        self.sigma = {l: as_matrix(sigma[l], self.dim(l), self.dim(l)) for l in self.levels}
        self.v, self.f = {}, {}
        for a in self.levels:
            for b in self.levels:
                if a % b:
                    continue
                dv = v.get((a, b)) if a != b else v.get((a, b), identity(self.dim(a)))
                df = f.get((a, b)) if a != b else f.get((a, b), identity(self.dim(a)))
                if dv is None or df is None:
                    raise DomainError(f"missing v or f for the pair ({a}, {b})")
                self.v[(a, b)] = as_matrix(dv, self.dim(b), self.dim(a))
                self.f[(a, b)] = as_matrix(df, self.dim(a), self.dim(b))
        self.support_bounded = support_bounded or finitely_supported
        self.finitely_supported = finitely_supported
        self.name = name

    def dim(self, l: int) -> int:
        return self.modules[l].gens

    def __contains__(self, l: int) -> bool:
        return l in self.modules

    def __repr__(self):
        vals = ", ".join(f"{l}: {self.modules[l]}" for l in self.levels)
        return f"ZMackeyTrunc({self.name or 'M'}; N={self.N}; {vals})"

    def sigma_pow(self, l: int, k: int) -> np.ndarray:
        return _mpow(self.sigma[l], k % l)

    def module_map(self, kind: str, a: int, b: int) -> ModuleMap:
        if kind == "v":
            return ModuleMap(self.modules[a], self.modules[b], self.v[(a, b)], check=False)
        return ModuleMap(self.modules[b], self.modules[a], self.f[(a, b)], check=False)

    def replace(self, kind: str, key, matrix) -> "ZMackeyTrunc":
        sigma, v, f = dict(self.sigma), dict(self.v), dict(self.f)
        {"sigma": sigma, "v": v, "f": f}[kind][key] = matrix
        return ZMackeyTrunc(self.ring, self.N, self.modules, sigma, v, f, self.levels,
                            self.support_bounded, self.finitely_supported, self.name)

    def to_json(self) -> dict:
        from ..serialize import matrix_to_json
        return {
            "ring": self.ring.name, "N": self.N, "levels": list(self.levels),
            "support_bounded": self.support_bounded,
            "finitely_supported": self.finitely_supported,
            "modules": {str(l): self.modules[l].to_json() for l in self.levels},
            "sigma": {str(l): matrix_to_json(self.sigma[l]) for l in self.levels},
            "v": [{"a": a, "b": b, "matrix": matrix_to_json(m)} for (a, b), m in sorted(self.v.items())],
            "f": [{"a": a, "b": b, "matrix": matrix_to_json(m)} for (a, b), m in sorted(self.f.items())],
        }


# -- relation checker -------------------------------------------------------------

@dataclass(frozen=True)
class ZViolation:
    relation: str
    levels: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.relation} at {self.levels}" + (f": {self.detail}" if self.detail else "")


@dataclass
class ZReport:
    violations: list = field(default_factory=list)
    checked: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def failed_relations(self) -> set:
        return {v.relation for v in self.violations}

    def __str__(self):
        if self.passed:
            return "pass (" + ", ".join(f"{k}: {n}" for k, n in sorted(self.checked.items())) + ")"
        return "\n".join(str(v) for v in self.violations)


def check_zmackey(M: ZMackeyTrunc, general: bool = True) -> ZReport:
    rep = ZReport()
    L = M.levels

    def same(A, B, level, rel, where, detail=""):
        rep.checked[rel] = rep.checked.get(rel, 0) + 1
        if not M.modules[level].contains(A - B):
            rep.violations.append(ZViolation(rel, where, detail))

    # well-definedness and the order of sigma
    for l in L:
        Mod = M.modules[l]
        s = ModuleMap(Mod, Mod, M.sigma[l], check=False)
        if not s.well_defined():
            rep.violations.append(ZViolation("malformed", (l,), "sigma"))
            return rep
        same(M.sigma_pow(l, 0) if l == 1 else _mpow(M.sigma[l], l), identity(M.dim(l)), l,
             "sigma_order", (l,))
    for (a, b) in M.v:
        if not M.module_map("v", a, b).well_defined():
            rep.violations.append(ZViolation("malformed", (a, b), "v"))
        if not M.module_map("f", a, b).well_defined():
            rep.violations.append(ZViolation("malformed", (a, b), "f"))
    if rep.violations:
        return rep

    pairs = sorted(M.v)
    for (a, b) in pairs:
        V, F = M.v[(a, b)], M.f[(a, b)]
        if a == b:
            same(V, identity(M.dim(a)), a, "Z3", (a, a), "v_{a,a} = id")
            same(F, identity(M.dim(a)), a, "Z3", (a, a), "f_{a,a} = id")
            continue
        same(V @ _mpow(M.sigma[a], b), V, b, "Z1", (a, b))
        same(_mpow(M.sigma[a], b) @ F, F, a, "Z2", (a, b))
        same(V @ M.sigma[a], M.sigma[b] @ V, b, "Z4", (a, b), "v")
        same(F @ M.sigma[b], M.sigma[a] @ F, a, "Z4", (a, b), "f")
        t = zeros(M.dim(a), M.dim(a))
        for j in range(a // b):
            t = t + M.sigma_pow(a, j * b)
        same(F @ V, t, a, "Z6", (a, b))
    for (a, b) in pairs:
        for (b2, c) in pairs:
            if b2 != b or a == b or b == c:
                continue
            same(M.v[(b, c)] @ M.v[(a, b)], M.v[(a, c)], c, "Z3", (a, b, c), "v")
            same(M.f[(a, b)] @ M.f[(b, c)], M.f[(a, c)], a, "Z3", (a, b, c), "f")
    for b in L:
        for x in L:
            if x % b:
                continue
            for y in L:
                if y % b:
                    continue
                m = lcm(x, y)
                if m not in M.modules:
                    continue
                g = gcd(x, y)
                lhs = M.f[(y, b)] @ M.v[(x, b)]
                if g == b:
                    same(lhs, M.v[(m, y)] @ M.f[(m, x)], y, "Z5", (x, y, b))
                elif general:
                    rhs = zeros(M.dim(y), M.dim(x))
                    for j in range(g // b):
                        rhs = rhs + M.v[(m, y)] @ M.sigma_pow(m, j * b) @ M.f[(m, x)]
                    same(lhs, rhs, y, "double_coset", (x, y, b))
    return rep


# -- Burnside truncation and examples ------------------------------------------------

def burnside_truncation(N: int, ring: CoeffRing = ZZ) -> ZMackeyTrunc:
    """The representable profunctor A^ truncated at N.

    Level l has basis b_m for l | m <= N (the orbit Z/m over Z/l).  sigma is
    trivial, v_{a,b} re-reads b_m over Z/b, and f_{a,b} pulls b_m back to
    gcd(m, a)/b copies of b_lcm(m, a), dropped when lcm(m, a) > N.
    """
    levels = list(range(1, N + 1))
    basis = {l: [m for m in range(l, N + 1, l)] for l in levels}
    modules = {l: FpModule.free(ring, len(basis[l])) for l in levels}
    sigma = {l: identity(len(basis[l])) for l in levels}
    v, f = {}, {}
    for a in levels:
        for b in levels:
            if a % b:
                continue
            V = zeros(len(basis[b]), len(basis[a]))
            for j, m in enumerate(basis[a]):
                V[basis[b].index(m), j] = 1
            F = zeros(len(basis[a]), len(basis[b]))
            for j, m in enumerate(basis[b]):
                k = lcm(m, a)
                if k <= N:
                    F[basis[a].index(k), j] = gcd(m, a) // b
            v[(a, b)], f[(a, b)] = V, F
    out = ZMackeyTrunc(ring, N, modules, sigma, v, f, levels, support_bounded=True,
                       name="A^")
    out.basis = basis
    return out


def constant_truncation(N: int, ring: CoeffRing = ZZ, dual: bool = False) -> ZMackeyTrunc:
    """M_l = R with trivial sigma; v_{a,b} = a/b and f = id, or the dual
    choice v = id and f_{a,b} = a/b."""
    levels = list(range(1, N + 1))
    modules = {l: FpModule.free(ring, 1) for l in levels}
    sigma = {l: identity(1) for l in levels}
    v, f = {}, {}
    for a in levels:
        for b in levels:
            if a % b == 0:
                k = as_matrix([[a // b]])
                v[(a, b)], f[(a, b)] = (identity(1), k) if dual else (k, identity(1))
    return ZMackeyTrunc(ring, N, modules, sigma, v, f, levels, name="dual-constant" if dual else "constant")


def broken_truncation(N: int, ring: CoeffRing = ZZ) -> ZMackeyTrunc:
    """Negative control: M_l = R, v = f = id.  Violates Z6 whenever a/b > 1."""
    levels = list(range(1, N + 1))
    modules = {l: FpModule.free(ring, 1) for l in levels}
    sigma = {l: identity(1) for l in levels}
    v = {(a, b): identity(1) for a in levels for b in levels if a % b == 0}
    return ZMackeyTrunc(ring, N, modules, sigma, v, dict(v), levels, name="broken")


def zero_truncation(N: int, ring: CoeffRing = ZZ) -> ZMackeyTrunc:
    levels = list(range(1, N + 1))
    modules = {l: FpModule.zero(ring) for l in levels}
    sigma = {l: zeros(0, 0) for l in levels}
    v = {(a, b): zeros(0, 0) for a in levels for b in levels if a % b == 0}
    return ZMackeyTrunc(ring, N, modules, sigma, v, dict(v), levels,
                        finitely_supported=True, name="zero")


def inflate_finite(Mbar, N: int) -> ZMackeyTrunc:
    """Inflate a Mackey functor over the cyclic group Z/n to a profunctor.

    Level k | n carries the value at the subgroup kZ/nZ, sigma_k is
    conjugation by -1, v is transfer and f is restriction.  Levels not
    dividing n carry zero.
    """
    G = Mbar.group
    n = G.order
    if n > N:
        raise DomainError(f"group order {n} exceeds truncation {N}")
    if any(G.mul[1 % n][i] != (i + 1) % n for i in range(n)):
        raise DomainError("inflation expects the cyclic group with generator 1")
    ring = Mbar.ring
    levels = list(range(1, N + 1))

    def sub(k):
        return frozenset(range(0, n, k))

    modules, sigma = {}, {}
    for k in levels:
        if n % k == 0:
            modules[k] = Mbar.value(sub(k))
            sigma[k] = Mbar.conj((n - 1) % n, sub(k))
        else:
            modules[k] = FpModule.zero(ring)
            sigma[k] = zeros(0, 0)
    v, f = {}, {}
    for a in levels:
        for b in levels:
            if a % b:
                continue
            if n % a == 0:
                v[(a, b)] = Mbar.tr_map(sub(b), sub(a))
                f[(a, b)] = Mbar.res_map(sub(b), sub(a))
            else:
                v[(a, b)] = zeros(modules[b].gens, 0)
                f[(a, b)] = zeros(0, modules[b].gens)
    return ZMackeyTrunc(ring, N, modules, sigma, v, f, levels, finitely_supported=True,
                        name=f"Infl({Mbar.name or G.name})")


def change_ring(M: ZMackeyTrunc, ring: CoeffRing) -> ZMackeyTrunc:
    """Base change of a profunctor presented over Z (free levels only)."""
    modules = {}
    for l in M.levels:
        src = M.modules[l]
        modules[l] = FpModule(ring, src.gens, src.relations)
    return ZMackeyTrunc(ring, M.N, modules, M.sigma, M.v, M.f, M.levels,
                        M.support_bounded, M.finitely_supported, M.name)


# -- action of the completed Burnside ring ---------------------------------------------

def eps_action(M: ZMackeyTrunc, a: WittElement, l: int) -> np.ndarray:
    """Matrix of the action of ``a`` on M_l."""
    if l not in M.modules:
        raise DomainError(f"level {l} outside the truncation")
    out = zeros(M.dim(l), M.dim(l))
    for k, c in a.coeffs.items():
        m = lcm(k, l)
        if m not in M.modules:
            if M.support_bounded:
                continue
            raise DomainError(f"e{k} on level {l} needs level {m}, outside the truncation")
        term = M.v[(m, l)] @ M.f[(m, l)]
        out = out + term * (M.ring(c) * gcd(k, l))
    return out
