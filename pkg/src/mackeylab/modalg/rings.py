"""Exact coefficient rings.

Four kinds are supported: the integers, the integers modulo m, the
rationals, and the rationals localized at a prime p.  Elements are plain
Python ``int`` or ``fractions.Fraction`` values; the ring object knows how
to normalize and print them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import DomainError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero int or Fraction."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class CoeffRing:
    kind: str  # "Z", "Z/m", "Q", "Z_(p)"
    param: int = 0

    def __post_init__(self):
        if self.kind == "Z/m" and self.param < 2:
            raise DomainError("IntegersMod needs m >= 2")
        if self.kind == "Z_(p)" and not is_prime(self.param):
            raise DomainError(f"{self.param} is not prime")
        if self.kind not in ("Z", "Z/m", "Q", "Z_(p)"):
            raise DomainError(f"unknown ring kind {self.kind!r}")

    # -- naming -----------------------------------------------------------
    @property
    def name(self) -> str:
        if self.kind == "Z/m":
            return f"Z/{self.param}"
        if self.kind == "Z_(p)":
            return f"Z_({self.param})"
        return self.kind

    def __str__(self):
        return self.name

    @staticmethod
    def parse(text: str) -> "CoeffRing":
        t = text.strip()
        if t == "Z":
            return ZZ
        if t == "Q":
            return QQ
        m = re.fullmatch(r"Z/(\d+)", t)
        if m:
            return IntegersMod(int(m.group(1)))
        m = re.fullmatch(r"Z_\((\d+)\)", t)
        if m:
            return PLocal(int(m.group(1)))
        raise DomainError(f"cannot parse ring {text!r}")

    # -- element handling -------------------------------------------------
    @property
    def is_field(self) -> bool:
        return self.kind == "Q"

    @property
    def modulus(self) -> int | None:
        return self.param if self.kind == "Z/m" else None

    @property
    def prime(self) -> int | None:
        return self.param if self.kind == "Z_(p)" else None

    def __call__(self, x):
        """Coerce x into a normalized element of the ring."""
        x = Fraction(x)
        if self.kind in ("Z", "Z/m"):
            if x.denominator != 1:
                if self.kind == "Z/m" and gcd(x.denominator, self.param) == 1:
                    return (x.numerator * pow(x.denominator, -1, self.param)) % self.param
                raise DomainError(f"{x} is not an element of {self.name}")
            v = x.numerator
            return v % self.param if self.kind == "Z/m" else v
        if self.kind == "Z_(p)" and x.denominator % self.param == 0:
            raise DomainError(f"{x} is not an element of {self.name}")
        return x.numerator if x.denominator == 1 else x

    def contains(self, x) -> bool:
        try:
            self(x)
        except DomainError:
            return False
        return True

    def is_unit(self, x) -> bool:
        x = Fraction(x)
        if x == 0:
            return False
        if self.kind == "Z":
            return abs(x) == 1
        if self.kind == "Z/m":
            return x.denominator == 1 and gcd(x.numerator, self.param) == 1
        if self.kind == "Z_(p)":
            return valuation(x, self.param) == 0
        return True

    def fmt(self, x) -> str:
        """Exact text form: integers, or reduced a/b with b > 0."""
        x = Fraction(self(x))
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"


def IntegersMod(m: int) -> CoeffRing:
    return CoeffRing("Z/m", m)


def PLocal(p: int) -> CoeffRing:
    return CoeffRing("Z_(p)", p)


ZZ = CoeffRing("Z")
QQ = CoeffRing("Q")
