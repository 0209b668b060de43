"""Truncated completed Burnside ring of the profinite integers.

Elements are finite sums of basis classes e_i (the orbit Z^/iZ^) with
e_i * e_j = (ij / lcm(i, j)) e_lcm(i, j).  Levels above the truncation
bound N form an ideal and are dropped, so the truncated ring is a quotient
ring and identities proven there are exact modulo levels > N.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from ..errors import DomainError
from ..modalg.rings import CoeffRing, PLocal, QQ, is_prime


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class WittElement:
    __slots__ = ("ring", "N", "coeffs")

    def __init__(self, ring: CoeffRing, N: int, coeffs=None):
        if N < 1:
            raise DomainError("truncation bound must be at least 1")
        self.ring = ring
        self.N = int(N)
        out = {}
        for i, c in (coeffs or {}).items():
            i = int(i)
            if i < 1:
                raise DomainError(f"level must be positive, got {i}")
            c = ring(c)
            if i <= self.N and c != 0:
                out[i] = c
        self.coeffs = dict(sorted(out.items()))

    @classmethod
    def basis(cls, i: int, N: int, ring: CoeffRing = QQ) -> "WittElement":
        return cls(ring, N, {i: 1})

    @classmethod
    def one(cls, N: int, ring: CoeffRing = QQ) -> "WittElement":
        return cls(ring, N, {1: 1})

    @classmethod
    def zero(cls, N: int, ring: CoeffRing = QQ) -> "WittElement":
        return cls(ring, N, {})

    def _check(self, other: "WittElement") -> None:
        if self.ring != other.ring:
            raise DomainError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.N != other.N:
            raise DomainError(f"truncation mismatch: {self.N} vs {other.N}")

    def _lift(self, other) -> "WittElement":
        if isinstance(other, WittElement):
            self._check(other)
            return other
        return WittElement(self.ring, self.N, {1: other})

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return WittElement(self.ring, self.N, out)

    __radd__ = __add__

    def __neg__(self):
        return WittElement(self.ring, self.N, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "WittElement":
        c = self.ring(c)
        return WittElement(self.ring, self.N, {i: c * x for i, x in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, WittElement):
            return witt_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        return self.ring == other.ring and self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.N, tuple(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def ghost(self, n: int):
        return ghost_components(self, n)

    def ghost_vector(self) -> list:
        return [ghost_components(self, n) for n in range(1, self.N + 1)]

    def __str__(self):
        return format_witt(self)

    def __repr__(self):
        return f"WittElement({self.ring.name}, N={self.N}, {self})"

    def to_json(self) -> dict:
        return {"ring": self.ring.name, "N": self.N,
                "coeffs": {str(i): self.ring.fmt(c) for i, c in self.coeffs.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "WittElement":
        try:
            ring = CoeffRing.parse(data.get("ring", "Q"))
            coeffs = {int(i): Fraction(c) for i, c in data.get("coeffs", {}).items()}
            return cls(ring, int(data["N"]), coeffs)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed Witt element: {exc}") from exc


def witt_product(a: WittElement, b: WittElement) -> WittElement:
    a._check(b)
    out: dict = {}
    for i, x in a.coeffs.items():
        for j, y in b.coeffs.items():
            m = lcm(i, j)
            if m <= a.N:
                out[m] = out.get(m, 0) + x * y * (i * j // m)
    return WittElement(a.ring, a.N, out)


def ghost_components(a: WittElement, n: int):
    """Mark of the fixed points of nZ^: g_n(e_i) = i if i | n, else 0."""
    if not 1 <= n <= a.N:
        raise DomainError(f"ghost level {n} outside 1..{a.N}")
    return a.ring(sum((i * c for i, c in a.coeffs.items() if n % i == 0), Fraction(0)))


def _fmt_coeff(ring: CoeffRing, c) -> str:
    return ring.fmt(c)


def format_witt(a: WittElement) -> str:
    if not a.coeffs:
        return "0"
    parts = []
    for k, (i, c) in enumerate(a.coeffs.items()):
        neg = c < 0
        mag = -c if neg else c
        body = a.ring.fmt(mag)
        if i != 1:
            body = f"e{i}" if mag == 1 else f"{body}*e{i}"
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|e(\d+)|(.))")


def parse_witt(text: str, N: int, ring: CoeffRing = QQ) -> WittElement:
    """Parse expressions such as ``3*e2 - 1/3*e6`` or ``(1 - e3/3)*e2``.

    Numbers are scalars; ``e<i>`` is a basis class.  Division is only by
    scalars.
    """
    tokens = []
    for m in _TOKEN.finditer(text):
        num, lev, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif lev is not None:
            tokens.append(("e", int(lev)))
        elif op is not None and op.strip():
            if op not in "+-*/()":
                raise DomainError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    # values are Fraction (scalar) or WittElement
    def atom():
        kind, val = take()
        if kind == "num":
            return Fraction(val)
        if kind == "e":
            if val < 1:
                raise DomainError("basis level must be positive")
            return WittElement(ring, N, {val: 1})
        if (kind, val) == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise DomainError(f"unbalanced parentheses in {text!r}")
            return v
        if (kind, val) == ("op", "-"):
            return -atom()
        if (kind, val) == ("op", "+"):
            return atom()
        raise DomainError(f"cannot parse {text!r}")

    def term():
        v = atom()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            w = atom()
            if op == "*":
                v = _mul(v, w)
            else:
                if isinstance(w, WittElement):
                    raise DomainError("can only divide by a scalar")
                if w == 0:
                    raise DomainError("division by zero")
                v = v / w if isinstance(v, Fraction) else v.scale(Fraction(1) / w)
        return v

    def expr():
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            w = term()
            v = _as_elt(v) + _as_elt(w) if op == "+" else _as_elt(v) - _as_elt(w)
        return v

    def _as_elt(v):
        return v if isinstance(v, WittElement) else WittElement(ring, N, {1: v})

    def _mul(v, w):
        if isinstance(v, WittElement) and isinstance(w, WittElement):
            return witt_product(v, w)
        if isinstance(v, WittElement):
            return v.scale(w)
        if isinstance(w, WittElement):
            return w.scale(v)
        return v * w

    if not tokens:
        raise DomainError("empty expression")
    out = expr()
    if pos != len(tokens):
        raise DomainError(f"trailing input in {text!r}")
    return _as_elt(out)


def p_local_idempotent(p: int, l: int, N: int) -> WittElement:
    """The type-l idempotent (1/l) e_l * prod (1 - e_i / i) over i > 1
    prime to p with i not dividing l, truncated at N."""
    if not is_prime(p):
        raise DomainError(f"{p} is not a prime")
    if l < 1 or l % p == 0:
        raise DomainError(f"level {l} must be positive and prime to {p}")
    ring = PLocal(p)
    if l > N:
        return WittElement.zero(N, ring)
    out = WittElement(ring, N, {l: Fraction(1, l)})
    for i in range(2, N + 1):
        if i % p and l % i:
            out = out * WittElement(ring, N, {1: 1, i: Fraction(-1, i)})
    return out


def p_local_idempotents(p: int, N: int) -> dict[int, WittElement]:
    """All nonzero type idempotents at truncation N, keyed by l."""
    return {l: p_local_idempotent(p, l, N) for l in range(1, N + 1) if l % p}
