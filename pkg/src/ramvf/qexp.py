"""Truncated q-series, Eisenstein expansions and isobaric representations."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from sympy import divisor_sigma

from .errors import DenominatorDivisibleByP, NonzeroResidual, NotACuspForm
from .exactnum import bernoulli, mod_p
from .mpoly.poly import MPoly, Ring, lift
from .normalization import Normalization, eisenstein_factors

#: ring of isobaric polynomials, u <-> E4 (weight 4), v <-> E6 (weight 6)
UV = Ring(("u", "v"))
UV_WEIGHTS = (4, 6)


class QSeries:
    """Coefficients of q^0 .. q^(N-1) over Q (``modulus=None``) or F_p.

    Arithmetic truncates to the smaller of the operands' orders.
    """

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs: Sequence, modulus: int | None = None):
        if modulus is None:
            self.coeffs = tuple(c if isinstance(c, (int, Fraction)) else Fraction(c) for c in coeffs)
        else:
            self.coeffs = tuple(mod_p(c, modulus) for c in coeffs)
        self.modulus = modulus

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    @classmethod
    def constant(cls, c, N: int, modulus: int | None = None) -> "QSeries":
        return cls([c] + [0] * (N - 1), modulus)

    def _coerce(self, other):
        if isinstance(other, QSeries):
            if other.modulus != self.modulus:
                raise ValueError("series over different coefficient fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.constant(other, self.N, self.modulus)
        return NotImplemented

    def _wrap(self, coeffs) -> "QSeries":
        s = QSeries.__new__(QSeries)
        p = self.modulus
        s.coeffs = tuple(coeffs) if p is None else tuple(c % p for c in coeffs)
        s.modulus = p
        return s

    def truncate(self, N: int) -> "QSeries":
        return self._wrap(self.coeffs[:N])

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if self.modulus is not None:
                other = mod_p(other, self.modulus)
            return self._wrap(a * other for a in self.coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        N = min(len(a), len(b))
        out = [0] * N
        for i in range(N):
            ai = a[i]
            if not ai:
                continue
            for j in range(N - i):
                out[i + j] += ai * b[j]
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = QSeries.constant(1, self.N, self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "QSeries":
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        p = self.modulus
        inv0 = pow(a[0], -1, p) if p is not None else 1 / Fraction(a[0])
        out = [inv0]
        for n in range(1, self.N):
            acc = sum(a[j] * out[n - j] for j in range(1, n + 1))
            out.append(-acc * inv0)
        return self._wrap(out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if self.modulus is not None:
                return self * pow(mod_p(other, self.modulus), -1, self.modulus)
            return self._wrap(a / Fraction(other) for a in self.coeffs)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.modulus == other.modulus and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.modulus))

    def reduce_mod_p(self, p: int) -> "QSeries":
        if self.modulus is not None:
            raise ValueError("series is already over F_p")
        out = []
        for n, c in enumerate(self.coeffs):
            c = Fraction(c)
            if c.denominator % p == 0:
                raise DenominatorDivisibleByP(f"coefficient of q^{n} is {c}")
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
        s = QSeries.__new__(QSeries)
        s.coeffs, s.modulus = tuple(out), p
        return s

    def __str__(self):
        parts = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            neg = self.modulus is None and c < 0
            mag = -c if neg else c
            mono = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        head = "".join(parts) if parts else "0"
        return f"{head} + O(q^{self.N})"

    def __repr__(self):
        return f"QSeries({str(self)!r})"


def sigma(k: int, n: int) -> int:
    """Divisor power sum sum_{d | n} d^k."""
    if n < 1:
        raise ValueError("n must be positive")
    return int(divisor_sigma(n, k))


@lru_cache(maxsize=None)
def eisenstein(k: int, N: int) -> QSeries:
    """E_k = 1 - (2k / B_k) sum_{n>=1} sigma_{k-1}(n) q^n, truncated at q^N."""
    if k < 2 or k % 2:
        raise ValueError("weight must be even and >= 2")
    c = Fraction(-2 * k) / bernoulli(k)
    if c.denominator == 1:
        c = c.numerator
    return QSeries([1] + [c * sigma(k - 1, n) for n in range(1, N)])


def theta(s: QSeries, sign: int = 1) -> QSeries:
    """``sign * q d/dq``; ``sign=-1`` is the operator paired with the scaled field."""
    return s._wrap(sign * n * c for n, c in enumerate(s.coeffs))


@lru_cache(maxsize=None)
def delta_series(N: int) -> QSeries:
    """(E4^3 - E6^2) / 1728 = q - 24 q^2 + 252 q^3 - ..."""
    e4, e6 = eisenstein(4, N), eisenstein(6, N)
    d = e4 ** 3 - e6 ** 2
    return QSeries([c // 1728 if isinstance(c, int) else c / 1728 for c in d.coeffs])


def divide_by_delta(s: QSeries) -> QSeries:
    """s / Delta for a cusp form s; the result has one fewer known coefficient."""
    if s.coeffs[0]:
        raise NotACuspForm(f"constant term {s.coeffs[0]} is nonzero")
    N = s.N
    d = delta_series(N + 1)
    if s.modulus is not None:
        d = d.reduce_mod_p(s.modulus)
    # Delta = q * u(q) with u(0) = 1
    u = d._wrap(d.coeffs[1:N])
    shifted = s._wrap(s.coeffs[1:])
    return shifted * u.inverse()


def default_truncation(k: int) -> int:
    return max(40, k // 12 + 5)


def _delta_uv() -> MPoly:
    u, v = UV.gens()
    return (u ** 3 - v ** 2) * Fraction(1, 1728)


def isobaric_representation(k: int, f: QSeries) -> MPoly:
    """The polynomial P(u, v), isobaric of weight k, with P(E4, E6) = f to truncation.

    Raises :class:`NonzeroResidual` when no such polynomial reproduces ``f``.
    """
    if f.modulus is not None:
        raise ValueError("isobaric_representation works over Q")
    if k < 0:
        raise ValueError("weight must be nonnegative")
    if f.N < k // 12 + 2:
        raise NonzeroResidual(f"need at least {k // 12 + 2} coefficients, got {f.N}")
    u, v = UV.gens()
    dpoly = _delta_uv()
    P = UV.zero()
    mult = UV.one()
    cur = f
    weight = k
    while weight >= 0:
        if weight == 0:
            c = cur.coeffs[0]
            P = P + mult * c
            cur = cur - c
            break
        if weight % 2 or weight == 2:
            break
        b = 0 if weight % 4 == 0 else 1
        a = (weight - 6 * b) // 4
        c = cur.coeffs[0]
        if c:
            N = cur.N
            base = eisenstein(4, N) ** a * eisenstein(6, N) ** b
            P = P + mult * (u ** a * v ** b) * c
            cur = cur - base * c
        if weight < 12:
            break
        cur = divide_by_delta(cur)
        mult = mult * dpoly
        weight -= 12
    if not cur.is_zero():
        n = next(i for i, c in enumerate(cur.coeffs) if c)
        raise NonzeroResidual(f"weight {k}: residual coefficient {cur.coeffs[n]} at q^{n}")
    return P


def minimal_integral_multiplier(k: int) -> int:
    """Least a > 0 with a * E_k in Z[E4, E6]: lcm of the isobaric coefficient denominators."""
    if k < 4 or k % 2:
        raise ValueError("weight must be even and >= 4")
    P = isobaric_representation(k, eisenstein(k, default_truncation(k)))
    return math.lcm(*(Fraction(c).denominator for c in P.terms.values()))


def eisenstein_triple(norm: Normalization, N: int) -> tuple[QSeries, QSeries, QSeries]:
    a1, a2, a3 = eisenstein_factors(norm)
    return (eisenstein(2, N) * a1, eisenstein(4, N) * a2, eisenstein(6, N) * a3)


def eval_at_eisenstein(P: MPoly, norm: Normalization | str, N: int) -> QSeries:
    """Image of P under t -> (a1 E2, a2 E4, a3 E6) (scaled) or (E2, E4, E6) (classical).

    A polynomial over F_p is evaluated through its representatives and the
    resulting series is reduced mod p.
    """
    norm = Normalization.parse(norm)
    p = P.ring.modulus
    Q = lift(P) if p is not None else P
    if Q.ring.nvars != 3:
        raise ValueError("expected a polynomial in t_1, t_2, t_3")
    point = eisenstein_triple(norm, N)
    if Q.is_zero():
        s = QSeries([0] * N)
    else:
        val = Q.evaluate(point)
        s = val if isinstance(val, QSeries) else QSeries.constant(val, N)
    return s.reduce_mod_p(p) if p is not None else s


def isobaric_to_t(P: MPoly, ring: Ring) -> MPoly:
    """Rename u -> t_2, v -> t_3 inside the trivariate ring (over Q)."""
    out = {(0, e[0], e[1]): c for e, c in P.terms.items()}
    return MPoly(ring, out)
