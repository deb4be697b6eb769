"""Exact rationals, prime-field elements, p-adic valuations and Bernoulli numbers.

Rationals are :class:`fractions.Fraction` throughout; it already keeps
numerator and denominator reduced with a positive denominator.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import isprime, primerange

from .errors import DenominatorDivisibleByP

BigRational = Fraction
Rational = Union[int, Fraction]

#: valuation of zero
INFINITY = math.inf


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi."""
    return list(primerange(lo, hi + 1))


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not isprime(p) or p < 5:
        raise ValueError(f"expected a prime p >= 5, got {p!r}")
    return p


def mod_p(x: Rational, p: int) -> int:
    """Image of a p-integral rational in [0, p)."""
    if isinstance(x, FpElement):
        return x.value
    x = Fraction(x)
    if x.denominator % p == 0:
        raise DenominatorDivisibleByP(f"{x} has a denominator divisible by {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


@dataclass(frozen=True, slots=True)
class FpElement:
    """An element of the prime field F_p, p >= 5."""

    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            object.__setattr__(self, "value", self.value % self.p)

    @classmethod
    def of(cls, x: Rational, p: int) -> "FpElement":
        return cls(mod_p(x, p), p)

    def _other(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return mod_p(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElement((self.value + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElement((self.value - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElement((o - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value * o % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value % self.p, self.p)

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * FpElement(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FpElement(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FpElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def ord_p(x: Rational, p: int) -> int | float:
    """p-adic valuation of a rational; ``INFINITY`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INFINITY

    def val(n: int) -> int:
        n = abs(n)
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        return k

    return val(x.numerator) - val(x.denominator)


class _BernoulliCache:
    # readers see a list that only ever grows; fills are serialized
    def __init__(self):
        self._values = [Fraction(1)]
        self._lock = threading.Lock()

    def get(self, k: int) -> Fraction:
        values = self._values
        if k < len(values):
            return values[k]
        with self._lock:
            values = list(self._values)
            for n in range(len(values), k + 1):
                # sum_{j=0}^{n} C(n+1, j) B_j = 0
                acc = Fraction(0)
                for j in range(n):
                    if values[j]:
                        acc += math.comb(n + 1, j) * values[j]
                values.append(-acc / (n + 1))
            self._values = values
        return values[k]


_bernoulli = _BernoulliCache()


def bernoulli(k: int) -> Fraction:
    """B_k with the convention B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k >= 3 and k % 2:
        return Fraction(0)
    return _bernoulli.get(k)


def von_staudt_primes(k: int) -> list[int]:
    """Primes p with (p - 1) | k, found by trial over the divisors of k."""
    return [d + 1 for d in range(1, k + 1) if k % d == 0 and isprime(d + 1)]


def check_von_staudt_clausen(k: int) -> bool:
    """True iff B_k + sum_{(p-1)|k} 1/p is an integer."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and >= 2")
    total = bernoulli(k) + sum(Fraction(1, p) for p in von_staudt_primes(k))
    return total.denominator == 1


def check_kummer(k: int, k2: int, p: int) -> bool:
    """Kummer's congruence B_k/k == B_k2/k2 (mod p) for p-integral quotients.

    Raises ``ValueError`` when the inputs violate the theorem's hypotheses.
    """
    if k <= 0 or k2 <= 0 or k % 2 or k2 % 2:
        raise ValueError("k and k2 must be positive and even")
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if k % (p - 1) == 0 or k2 % (p - 1) == 0:
        raise ValueError("(p - 1) must not divide k or k2")
    if (k - k2) % (p - 1):
        raise ValueError("k and k2 must agree mod p - 1")
    x = bernoulli(k) / k
    y = bernoulli(k2) / k2
    if ord_p(x, p) < 0 or ord_p(y, p) < 0:
        return False
    return mod_p(x, p) == mod_p(y, p)
