"""Finitely presented modules and maps between them.

A module is given by a number of generators and a relation matrix whose
columns are relations.  Over Z/m the relations m*e_i are implicit and all
computations are done over Z.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import DomainError
from .linalg import (as_matrix, column_span_basis, hstack, identity, in_span,
                     kernel, normalize_entries, snf, zeros)
from .rings import CoeffRing, ZZ


def _coerce(ring: CoeffRing, A: np.ndarray) -> np.ndarray:
    out = A.copy()
    for idx, x in np.ndenumerate(out):
        out[idx] = ring(x)
    return out


def _lift_ring(ring: CoeffRing) -> CoeffRing:
    """The ring in which linear algebra is actually carried out."""
    return ZZ if ring.kind == "Z/m" else ring


class FpModule:
    """Module over ``ring`` generated by ``gens`` elements modulo the columns
    of ``relations``."""

    __slots__ = ("ring", "gens", "relations", "_inv")

    def __init__(self, ring: CoeffRing, gens: int, relations=None):
        self.ring = ring
        self.gens = int(gens)
        if relations is None:
            rel = zeros(self.gens, 0)
        else:
            rel = as_matrix(relations, self.gens, None)
            if rel.shape[0] != self.gens:
                if rel.size == 0:
                    rel = zeros(self.gens, 0)
                else:
                    raise DomainError(f"relations must have {self.gens} rows, got {rel.shape[0]}")
        self.relations = _coerce(ring, rel)
        self._inv = None

    @classmethod
    def free(cls, ring: CoeffRing, n: int) -> "FpModule":
        return cls(ring, n)

    @classmethod
    def zero(cls, ring: CoeffRing) -> "FpModule":
        return cls(ring, 0)

    @property
    def lift_ring(self) -> CoeffRing:
        return _lift_ring(self.ring)

    @property
    def full_relations(self) -> np.ndarray:
        """Relations including the implicit m*I over Z/m."""
        if self.ring.kind == "Z/m":
            return hstack(self.relations, identity(self.gens) * self.ring.param)
        return self.relations

    def invariant_factors(self) -> tuple[list, int]:
        """(torsion factors d1 | d2 | ..., free rank)."""
        if self._inv is None:
            R = self.full_relations
            if R.shape[1] == 0 or self.gens == 0:
                self._inv = ([], self.gens)
            else:
                s = snf(R, self.lift_ring)
                tors = [d for d in s.diagonal if not self.ring.is_unit(d) and d != 1]
                self._inv = (tors, self.gens - s.rank)
        return self._inv

    def simplify(self) -> tuple["FpModule", np.ndarray, np.ndarray]:
        """Minimal presentation (S, to, back): ``to`` sends old generators to
        S and ``back`` sends the generators of S to old ones; both are
        mutually inverse isomorphisms."""
        R = self.full_relations
        if R.shape[1] == 0 or self.gens == 0:
            return self, identity(self.gens), identity(self.gens)
        s = snf(R, self.lift_ring)
        keep = [i for i in range(self.gens)
                if i >= s.rank or not self.ring.is_unit(s.D[i, i])]
        rel = zeros(len(keep), 0)
        cols = []
        for k, i in enumerate(keep):
            if i < s.rank and not (self.ring.kind == "Z/m" and s.D[i, i] == self.ring.param):
                c = zeros(len(keep), 1)
                c[k, 0] = s.D[i, i]
                cols.append(c)
        if cols:
            rel = hstack(*cols)
        return (FpModule(self.ring, len(keep), rel),
                normalize_entries(s.U[keep, :]), normalize_entries(s.Uinv[:, keep]))

    def is_zero(self) -> bool:
        tors, free = self.invariant_factors()
        return not tors and free == 0

    def contains(self, vecs) -> bool:
        """True if each column of ``vecs`` is zero in the module."""
        return in_span(self.full_relations, as_matrix(vecs, self.gens, None), self.lift_ring)

    def __str__(self):
        tors, free = self.invariant_factors()
        r = self.ring.name
        parts = []
        if free:
            parts.append(r if free == 1 else f"{r}^{free}")
        for d in tors:
            d = Fraction(d)
            if self.ring.kind in ("Z", "Z/m"):
                parts.append(f"Z/{d.numerator}")
            else:
                parts.append(f"{r}/{self.ring.fmt(d)}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FpModule({self.ring.name}, gens={self.gens}, {self})"

    def to_json(self) -> dict:
        return {"ring": self.ring.name, "gens": self.gens,
                "relations": [[self.ring.fmt(x) if isinstance(x, Fraction) else int(x)
                               for x in self.relations[:, j]]
                              for j in range(self.relations.shape[1])]}

    @classmethod
    def from_json(cls, data: dict) -> "FpModule":
        ring = CoeffRing.parse(data.get("ring", "Z"))
        gens = int(data["gens"])
        rels = [[Fraction(x) for x in col] for col in data.get("relations", [])]
        for col in rels:
            if len(col) != gens:
                raise DomainError("each relation must have one entry per generator")
        mat = zeros(gens, len(rels))
        for j, col in enumerate(rels):
            for i, x in enumerate(col):
                mat[i, j] = x
        return cls(ring, gens, normalize_entries(mat))


def direct_sum(ring: CoeffRing, mods: list[FpModule]) -> FpModule:
    gens = sum(m.gens for m in mods)
    blocks = []
    row = 0
    for m in mods:
        b = zeros(gens, m.relations.shape[1])
        b[row:row + m.gens, :] = m.relations
        blocks.append(b)
        row += m.gens
    rel = hstack(*blocks) if blocks else zeros(0, 0)
    return FpModule(ring, gens, rel)


class ModuleMap:
    """A map source -> target given by a matrix of shape
    (target.gens, source.gens).  Well-definedness is checked on creation
    unless ``check=False``."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FpModule, target: FpModule, matrix, check: bool = True):
        if source.ring != target.ring:
            raise DomainError("module map between different rings")
        self.source = source
        self.target = target
        self.matrix = _coerce(source.ring, as_matrix(matrix, target.gens, source.gens))
        if check and not self.well_defined():
            raise DomainError("matrix does not map relations into relations")

    @property
    def ring(self) -> CoeffRing:
        return self.source.ring

    def well_defined(self) -> bool:
        R = self.source.full_relations
        if R.shape[1] == 0:
            return True
        return self.target.contains(self.matrix @ R)

    @classmethod
    def identity(cls, M: FpModule) -> "ModuleMap":
        return cls(M, M, identity(M.gens), check=False)

    @classmethod
    def zero(cls, A: FpModule, B: FpModule) -> "ModuleMap":
        return cls(A, B, zeros(B.gens, A.gens), check=False)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix - other.matrix, check=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix * c, check=False)

    def power(self, k: int) -> "ModuleMap":
        out = ModuleMap.identity(self.source)
        for _ in range(k):
            out = self @ out
        return out

    def is_zero(self) -> bool:
        return self.target.contains(self.matrix)

    def equals(self, other: "ModuleMap") -> bool:
        return (self - other).is_zero()

    def kernel(self) -> tuple[FpModule, "ModuleMap"]:
        return map_kernel(self)

    def cokernel(self) -> tuple[FpModule, "ModuleMap"]:
        return map_cokernel(self)

    def image(self) -> FpModule:
        return subquotient(self.target, self.matrix, zeros(self.target.gens, 0))

    def is_injective(self) -> bool:
        return self.kernel()[0].is_zero()

    def is_surjective(self) -> bool:
        return self.cokernel()[0].is_zero()

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()


def _preimage_lattice(F: np.ndarray, target: FpModule, ring: CoeffRing) -> np.ndarray:
    """Columns spanning {x : F x lies in the relations of target}."""
    n = F.shape[1]
    big = hstack(F, target.full_relations)
    K = kernel(big, ring)
    return column_span_basis(K[:n, :], ring) if K.shape[1] else zeros(n, 0)


def subquotient(ambient: FpModule, gens, denom) -> FpModule:
    """Submodule generated by the columns of ``gens`` modulo the submodule
    generated by the columns of ``denom`` (taken inside ``ambient``)."""
    ring = ambient.lift_ring
    G = as_matrix(gens, ambient.gens, None)
    D = as_matrix(denom, ambient.gens, None)
    k = G.shape[1]
    big = hstack(G, D, ambient.full_relations)
    K = kernel(big, ring)
    rel = column_span_basis(K[:k, :], ring) if K.shape[1] else zeros(k, 0)
    if ambient.ring.kind == "Z/m":
        rel = rel % ambient.ring.param if rel.size else rel
    return FpModule(ambient.ring, k, rel)


def map_kernel(f: ModuleMap) -> tuple[FpModule, ModuleMap]:
    """Kernel of f together with its inclusion into the source."""
    ring = f.source.lift_ring
    P = _preimage_lattice(f.matrix, f.target, ring)
    src = f.source
    k = P.shape[1]
    big = hstack(P, src.full_relations)
    K = kernel(big, ring)
    rel = column_span_basis(K[:k, :], ring) if K.shape[1] else zeros(k, 0)
    if src.ring.kind == "Z/m" and rel.size:
        rel = rel % src.ring.param
    mod = FpModule(src.ring, k, rel)
    return mod, ModuleMap(mod, src, P, check=False)


def map_cokernel(f: ModuleMap) -> tuple[FpModule, ModuleMap]:
    """Cokernel of f together with the projection from the target."""
    T = f.target
    mod = FpModule(T.ring, T.gens, hstack(T.relations, f.matrix))
    return mod, ModuleMap(T, mod, identity(T.gens), check=False)


def homology_at(f_in: ModuleMap, f_out: ModuleMap) -> FpModule:
    """ker(f_out) / im(f_in) for composable maps f_out o f_in = 0."""
    K, inc = map_kernel(f_out)
    return subquotient(f_out.source, inc.matrix, f_in.matrix)


def modules_isomorphic(A: FpModule, B: FpModule) -> bool:
    if A.ring != B.ring:
        raise DomainError(f"cannot compare modules over {A.ring} and {B.ring}")
    ta, fa = A.invariant_factors()
    tb, fb = B.invariant_factors()
    return fa == fb and [Fraction(x) for x in ta] == [Fraction(x) for x in tb]
