"""Exact matrix algebra over the supported principal ideal domains.

Matrices are numpy arrays with ``dtype=object`` holding ``int`` or
``Fraction`` entries, so every operation is exact.  Arithmetic over Z/m is
done by lifting to Z; callers append the relations m*I where needed.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .rings import CoeffRing, ZZ, valuation


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def as_matrix(data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce nested lists (or an array) into a 2-d object array."""
    if isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
        out = data.copy()
    else:
        out = np.array(data, dtype=object)
        if out.size == 0:
            out = zeros(rows or 0, cols or 0)
        elif out.ndim == 1:
            out = out.reshape(-1, 1) if rows is None or rows == out.shape[0] else out.reshape(1, -1)
    if rows is not None and cols is not None and out.shape != (rows, cols):
        if out.size == 0 and rows * cols == 0:
            return zeros(rows, cols)
        raise ValueError(f"matrix has shape {out.shape}, expected {(rows, cols)}")
    return out


def hstack(*blocks: np.ndarray) -> np.ndarray:
    rows = blocks[0].shape[0]
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    j = 0
    for b in blocks:
        out[:, j:j + b.shape[1]] = b
        j += b.shape[1]
    return out


def vstack(*blocks: np.ndarray) -> np.ndarray:
    return hstack(*[b.T for b in blocks]).T.copy()


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def _clean(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def normalize_entries(A: np.ndarray) -> np.ndarray:
    out = A.copy()
    for idx, x in np.ndenumerate(out):
        out[idx] = _clean(x)
    return out


# -- Euclidean structure of each domain --------------------------------------

class _Domain:
    """Euclidean data: a size to minimize and a division with remainder."""

    def size(self, a) -> int:
        raise NotImplementedError

    def divmod(self, a, b):
        raise NotImplementedError

    def normalizer(self, a):
        """A unit u with u*a in normal form."""
        raise NotImplementedError


class _Integers(_Domain):
    def size(self, a):
        return abs(a)

    def divmod(self, a, b):
        return divmod(a, b)

    def normalizer(self, a):
        return -1 if a < 0 else 1


class _Field(_Domain):
    def size(self, a):
        return 0

    def divmod(self, a, b):
        return Fraction(a) / b, 0

    def normalizer(self, a):
        return Fraction(1) / a


class _Local(_Domain):
    def __init__(self, p):
        self.p = p

    def size(self, a):
        return valuation(a, self.p)

    def divmod(self, a, b):
        if valuation(a, self.p) >= valuation(b, self.p):
            return Fraction(a) / b, 0
        return 0, a

    def normalizer(self, a):
        v = valuation(a, self.p)
        return Fraction(self.p) ** v / a


def domain_for(ring: CoeffRing) -> _Domain:
    if ring.kind == "Q":
        return _Field()
    if ring.kind == "Z_(p)":
        return _Local(ring.param)
    return _Integers()


# -- Smith normal form --------------------------------------------------------

class SNF:
    """Result of a Smith normal form computation: U @ A @ V == D.

    ``Uinv`` is the inverse of ``U``; ``diagonal`` lists the nonzero
    invariant factors d1 | d2 | ... ; ``rank`` is their number.
    """

    __slots__ = ("U", "Uinv", "D", "V", "rank")

    def __init__(self, U, Uinv, D, V, rank):
        self.U, self.Uinv, self.D, self.V, self.rank = U, Uinv, D, V, rank

    @property
    def diagonal(self) -> list:
        return [self.D[i, i] for i in range(self.rank)]


def snf(A, ring: CoeffRing = ZZ) -> SNF:
    dom = domain_for(ring)
    A = as_matrix(A)
    A = A.copy()
    m, n = A.shape
    U, Uinv, V = identity(m), identity(m), identity(n)

    def swap_rows(i, j):
        if i != j:
            A[[i, j]] = A[[j, i]]
            U[[i, j]] = U[[j, i]]
            Uinv[:, [i, j]] = Uinv[:, [j, i]]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]

    def row_sub(i, t, q):
        # row_i -= q * row_t
        A[i] = A[i] - q * A[t]
        U[i] = U[i] - q * U[t]
        Uinv[:, t] = Uinv[:, t] + q * Uinv[:, i]

    def col_sub(j, t, q):
        A[:, j] = A[:, j] - q * A[:, t]
        V[:, j] = V[:, j] - q * V[:, t]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i, j]
                if a != 0:
                    s = dom.size(a)
                    if best is None or s < best[0]:
                        best = (s, i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            piv = A[t, t]
            dirty = False
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    q, r = dom.divmod(A[i, t], piv)
                    if q != 0:
                        row_sub(i, t, q)
                    dirty |= r != 0
            for j in range(t + 1, n):
                if A[t, j] != 0:
                    q, r = dom.divmod(A[t, j], piv)
                    if q != 0:
                        col_sub(j, t, q)
                    dirty |= r != 0
            if dirty:
                cand = [(dom.size(A[i, t]), i, t) for i in range(t + 1, m) if A[i, t] != 0]
                cand += [(dom.size(A[t, j]), t, j) for j in range(t + 1, n) if A[t, j] != 0]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i, j] != 0 and dom.divmod(A[i, j], piv)[1] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # row_t += row_bad, then re-clear
            row_sub(t, bad, -1)
        u = dom.normalizer(A[t, t])
        if u != 1:
            A[t] = A[t] * u
            U[t] = U[t] * u
            Uinv[:, t] = Uinv[:, t] / Fraction(u) if not isinstance(u, int) else Uinv[:, t] * u
        t += 1
    return SNF(normalize_entries(U), normalize_entries(Uinv), normalize_entries(A),
               normalize_entries(V), t)


def smith_normal_form(A, ring: CoeffRing = ZZ):
    """Return (U, D, V) with U @ A @ V == D and d1 | d2 | ... on the diagonal."""
    s = snf(A, ring)
    return s.U, s.D, s.V


def rank(A, ring: CoeffRing = ZZ) -> int:
    A = as_matrix(A)
    if A.size == 0:
        return 0
    return snf(A, ring).rank


def kernel(A, ring: CoeffRing = ZZ) -> np.ndarray:
    """Basis of {x : A x = 0} as columns."""
    A = as_matrix(A)
    n = A.shape[1]
    if A.shape[0] == 0:
        return identity(n)
    s = snf(A, ring)
    return s.V[:, s.rank:].copy()


def column_span_basis(A, ring: CoeffRing = ZZ) -> np.ndarray:
    """A basis (as columns) of the submodule spanned by the columns of A."""
    A = as_matrix(A)
    m = A.shape[0]
    if A.shape[1] == 0 or m == 0:
        return zeros(m, 0)
    s = snf(A, ring)
    out = zeros(m, s.rank)
    for i in range(s.rank):
        out[:, i] = s.Uinv[:, i] * s.D[i, i]
    return normalize_entries(out)


def solve(A, B, ring: CoeffRing = ZZ):
    """Some X with A @ X == B over the ring, or None if none exists."""
    A = as_matrix(A)
    B = as_matrix(B)
    m, n = A.shape
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    k = B.shape[1]
    if m == 0:
        return zeros(n, k)
    if n == 0:
        return zeros(0, k) if all(x == 0 for x in B.flat) else None
    s = snf(A, ring)
    C = s.U @ B
    Y = zeros(n, k)
    for i in range(m):
        for j in range(k):
            c = C[i, j]
            if i < s.rank:
                q = Fraction(c) / s.D[i, i]
                if not ring.contains(q) and ring.kind != "Z/m":
                    return None
                if ring.kind == "Z/m" and q.denominator != 1:
                    return None
                Y[i, j] = _clean(q)
            elif c != 0:
                return None
    return normalize_entries(s.V @ Y)


def in_span(A, B, ring: CoeffRing = ZZ) -> bool:
    """True if every column of B lies in the column span of A."""
    B = as_matrix(B)
    if B.size == 0 or all(x == 0 for x in B.flat):
        return True
    return solve(A, B, ring) is not None
