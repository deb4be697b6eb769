"""Sparse multivariate polynomials over Q or F_p.

Coefficients are stored as :class:`fractions.Fraction` over Q and as ints in
``[0, p)`` over F_p.  Polynomials are treated as immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import DenominatorDivisibleByP, RingMismatch
from ..exactnum import FpElement, mod_p

DEFAULT_WEIGHTS = (2, 4, 6)


@dataclass(frozen=True)
class Ring:
    """Polynomial ring: variable names plus coefficient field (``modulus=None`` is Q)."""

    names: tuple[str, ...] = ("t_1", "t_2", "t_3")
    modulus: int | None = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None

    def coerce(self, c):
        if self.modulus is None:
            if isinstance(c, FpElement):
                raise RingMismatch("F_p element used over Q")
            return Fraction(c)
        if isinstance(c, FpElement) and c.p != self.modulus:
            raise RingMismatch(f"F_{c.p} element used over F_{self.modulus}")
        return mod_p(c, self.modulus)

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise IndexError(var)
            return var
        return self.names.index(var)

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self.const(1)

    def const(self, c) -> "MPoly":
        return MPoly(self, {(0,) * self.nvars: c})

    def gen(self, var) -> "MPoly":
        i = self.index(var)
        e = [0] * self.nvars
        e[i] = 1
        return MPoly(self, {tuple(e): 1})

    def gens(self) -> tuple["MPoly", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def mod(self, p: int) -> "Ring":
        return Ring(self.names, p)

    def over_q(self) -> "Ring":
        return Ring(self.names, None)

    def with_prefix(self, name: str) -> "Ring":
        """Same field, one extra variable placed first."""
        return Ring((name,) + self.names, self.modulus)

    def __str__(self):
        field = "Q" if self.modulus is None else f"F_{self.modulus}"
        return f"{field}[{', '.join(self.names)}]"


T = Ring()


def grevlex_key(e: Sequence[int]):
    """Sort key; larger key means larger monomial in grevlex with x_0 > x_1 > ..."""
    return (sum(e), tuple(-x for x in reversed(e)))


class MPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], object] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            n = ring.nvars
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent {e} for {ring}")
                clean[e] = clean.get(e, 0) + ring.coerce(c)
            if ring.modulus is not None:
                clean = {e: c % ring.modulus for e, c in clean.items() if c % ring.modulus}
            else:
                clean = {e: c for e, c in clean.items() if c}
        self.terms = clean

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "MPoly":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.coerce(0))

    def coeff(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.ring.coerce(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def degree_in(self, var) -> int:
        i = self.ring.index(var)
        return max((e[i] for e in self.terms), default=0)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # -- arithmetic ----------------------------------------------------
    def _check(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, FpElement)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.modulus
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
                continue
            v = v + c
            if p is not None:
                v %= p
            if v:
                out[e] = v
            else:
                del out[e]
        return MPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.modulus
        if p is None:
            return MPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})
        return MPoly._raw(self.ring, {e: (p - c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MPoly":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        p = self.ring.modulus
        if p is None:
            return MPoly._raw(self.ring, {e: v * c for e, v in self.terms.items()})
        return MPoly._raw(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FpElement)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.modulus
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        if p is None:
            out = {e: c for e, c in out.items() if c}
        else:
            out = {e: c % p for e, c in out.items() if c % p}
        return MPoly._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, FpElement)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- evaluation ----------------------------------------------------
    def evaluate(self, point: Sequence, one=None):
        """Substitute values for all variables.

        ``point`` entries may be any objects supporting ``+`` and ``*`` with
        the coefficients (numbers, :class:`FpElement`, series, polynomials).
        """
        if len(point) != self.ring.nvars:
            raise ValueError("point has the wrong length")
        if self.ring.modulus is not None:
            p = self.ring.modulus
            if all(isinstance(x, (int, Fraction, FpElement)) for x in point):
                vals = [mod_p(x, p) for x in point]
                total = 0
                for e, c in self.terms.items():
                    m = c
                    for x, k in zip(vals, e):
                        if k:
                            m = m * pow(x, k, p) % p
                    total += m
                return FpElement(total % p, p)
        powers: list[dict[int, object]] = [{1: x} for x in point]

        def power(i: int, k: int):
            cache = powers[i]
            if k not in cache:
                half = power(i, k // 2)
                sq = half * half
                cache[k] = sq * point[i] if k % 2 else sq
            return cache[k]

        total = None
        for e, c in self.terms.items():
            m = None
            for i, k in enumerate(e):
                if k:
                    m = power(i, k) if m is None else m * power(i, k)
            term = c if m is None else m * c
            total = term if total is None else total + term
        if total is None:
            return 0 if one is None else one * 0
        if one is not None and all(not any(e) for e in self.terms):
            return one * total
        return total

    # -- rendering -----------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"MPoly({render(self)!r}, {self.ring})"


def _monomial_str(names, e) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render(f: MPoly) -> str:
    """Canonical text, terms in descending grevlex order: ``t_1^2 + 2*t_2``."""
    if not f.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(f.sorted_terms()):
        mono = _monomial_str(f.ring.names, e)
        neg = f.ring.modulus is None and c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def parse(text: str, ring: Ring = T) -> MPoly:
    """Parse the canonical rendering (and ordinary ``+ - * ^`` expressions) back."""
    import re

    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    result = ring.zero()
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        term = ring.one()
        for factor in body.split("*"):
            if "^" in factor:
                base, k = factor.split("^")
                k = int(k)
            else:
                base, k = factor, 1
            if base in ring.names:
                term = term * ring.gen(base) ** k
            else:
                term = term * (Fraction(base) ** k)
        result = result + term if sign == "+" else result - term
    return result


# -- module-level operations --------------------------------------------

def weighted_degree(f: MPoly, w: Sequence[int] | None = None) -> int:
    """Maximum over terms of the weighted exponent sum; the zero polynomial has none."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no weighted degree")
    w = _weights(f.ring, w)
    return max(sum(a * b for a, b in zip(e, w)) for e in f.terms)


def is_homogeneous(f: MPoly, w: Sequence[int] | None = None) -> bool:
    if f.is_zero():
        return True
    w = _weights(f.ring, w)
    degs = {sum(a * b for a, b in zip(e, w)) for e in f.terms}
    return len(degs) == 1


def _weights(ring: Ring, w):
    if w is None:
        if ring.nvars != 3:
            raise ValueError("weights must be given for rings that are not in t_1, t_2, t_3")
        return DEFAULT_WEIGHTS
    if len(w) != ring.nvars:
        raise ValueError("weight vector has the wrong length")
    return tuple(w)


def reduce_mod_p(f: MPoly, p: int) -> MPoly:
    """Coefficient-wise image of a polynomial over Q in F_p[...]."""
    if f.ring.modulus is not None:
        raise RingMismatch("polynomial is already over a prime field")
    ring = f.ring.mod(p)
    out = {}
    for e, c in f.terms.items():
        if c.denominator % p == 0:
            raise DenominatorDivisibleByP(f"coefficient {c} of {render(f)} is not {p}-integral")
        v = c.numerator * pow(c.denominator, -1, p) % p
        if v:
            out[e] = v
    return MPoly._raw(ring, out)


def lift(f: MPoly) -> MPoly:
    """Representatives in [0, p) viewed over Q."""
    return MPoly._raw(f.ring.over_q(), {e: Fraction(c) for e, c in f.terms.items()})


def partial_derivative(f: MPoly, var) -> MPoly:
    i = f.ring.index(var)
    p = f.ring.modulus
    out = {}
    for e, c in f.terms.items():
        k = e[i]
        if not k:
            continue
        v = c * k
        if p is not None:
            v %= p
            if not v:
                continue
        ne = list(e)
        ne[i] = k - 1
        out[tuple(ne)] = v
    return MPoly._raw(f.ring, out)


def substitute(f: MPoly, mapping: Mapping, ring: Ring | None = None) -> MPoly:
    """Replace variables by polynomials; unmapped variables are kept.

    ``ring`` is the target ring when the images live elsewhere (defaults to
    the ring of ``f``).
    """
    ring = ring or f.ring
    images = []
    for i in range(f.ring.nvars):
        img = None
        for key, val in mapping.items():
            if f.ring.index(key) == i:
                img = val
        if img is None:
            if ring.names != f.ring.names:
                raise ValueError(f"no image for {f.ring.names[i]}")
            img = ring.gen(i)
        elif not isinstance(img, MPoly):
            img = ring.const(img)
        images.append(img)
    return f.evaluate(images, one=ring.one()) if f.terms else ring.zero()


def change_ring(f: MPoly, ring: Ring, var_map: Sequence[int] | None = None) -> MPoly:
    """Re-embed ``f`` in ``ring``; ``var_map[i]`` is the target index of variable i."""
    if var_map is None:
        var_map = [ring.index(n) for n in f.ring.names]
    out = {}
    for e, c in f.terms.items():
        ne = [0] * ring.nvars
        for i, k in enumerate(e):
            if k:
                ne[var_map[i]] = k
        out[tuple(ne)] = c
    return MPoly(ring, out)


def leading_term(f: MPoly):
    return max(f.terms.items(), key=lambda t: grevlex_key(t[0]))


def divides(g: MPoly, f: MPoly) -> tuple[bool, MPoly | None]:
    """Exact division test; returns ``(True, f / g)`` or ``(False, None)``."""
    if g.ring != f.ring:
        raise RingMismatch(f"{g.ring} vs {f.ring}")
    if g.is_zero():
        return (f.is_zero(), g.ring.zero() if f.is_zero() else None)
    ring = f.ring
    p = ring.modulus
    lg, lc = leading_term(g)
    inv = pow(lc, -1, p) if p is not None else 1 / lc
    gtail = [(e, c) for e, c in g.terms.items() if e != lg]
    rem = dict(f.terms)
    quot = {}
    import heapq

    heap = [(_neg_key(e), e) for e in rem]
    heapq.heapify(heap)
    while heap:
        _, e = heapq.heappop(heap)
        c = rem.pop(e, None)
        if c is None:
            continue
        if any(a < b for a, b in zip(e, lg)):
            return (False, None)
        q = tuple(a - b for a, b in zip(e, lg))
        qc = c * inv % p if p is not None else c * inv
        quot[q] = qc
        for eg, cg in gtail:
            ne = tuple(a + b for a, b in zip(q, eg))
            old = rem.get(ne)
            v = -qc * cg if old is None else old - qc * cg
            if p is not None:
                v %= p
            if v:
                if old is None:
                    heapq.heappush(heap, (_neg_key(ne), ne))
                rem[ne] = v
            elif old is not None:
                del rem[ne]
    return (True, MPoly._raw(ring, quot))


def _neg_key(e):
    d, rest = grevlex_key(e)
    return (-d, tuple(-x for x in rest))


def random_poly(ring: Ring, rng, max_degree: int = 3, nterms: int = 6, coeff_range: int = 9) -> MPoly:
    """A random polynomial of total degree <= max_degree with small integer coefficients."""
    terms = {}
    for _ in range(nterms):
        d = rng.randint(0, max_degree)
        e = [0] * ring.nvars
        for _ in range(d):
            e[rng.randrange(ring.nvars)] += 1
        terms[tuple(e)] = rng.randint(-coeff_range, coeff_range)
    return MPoly(ring, terms)


@dataclass(frozen=True)
class Ideal:
    """An ideal given by generators over a common ring."""

    gens: tuple[MPoly, ...]

    def __init__(self, gens: Iterable[MPoly]):
        gens = tuple(gens)
        if not gens:
            raise ValueError("an ideal needs at least one generator (use 0 for the zero ideal)")
        ring = gens[0].ring
        if any(g.ring != ring for g in gens):
            raise RingMismatch("generators live in different rings")
        object.__setattr__(self, "gens", gens)

    @property
    def ring(self) -> Ring:
        return self.gens[0].ring

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __str__(self):
        return "<" + ", ".join(render(g) for g in self.gens) + ">"
