"""Buchberger's algorithm over F_p (and Q) with packed-integer monomials.

A monomial is packed into one Python int whose integer order *is* the
monomial order, so that

* multiplication of monomials is ``a + b - OFF``,
* the quotient ``b / a`` is ``b - a + OFF``,
* ``a | b`` iff ``(b - a + OFF) & TOP == 0``.

Layout, most significant first: one slot per weight row, then one
reverse-lex slot per variable holding ``M - e_i`` (last variable highest).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Ideal, MPoly, Ring, change_ring

_S = 32  # bits per exponent slot
_M = (1 << (_S - 1)) - 1
_MASK = (1 << _S) - 1
_W = 64  # bits per weight slot


class MonomialOrder:
    """Weight rows refined by reverse lexicographic order on the variables."""

    def __init__(self, nvars: int, rows: Sequence[Sequence[int]], name: str = ""):
        if not rows:
            raise ValueError("at least one weight row is required")
        for r in rows:
            if len(r) != nvars or any(w < 0 for w in r):
                raise ValueError(f"bad weight row {r}")
        self.nvars = nvars
        self.rows = tuple(tuple(r) for r in rows)
        self.name = name or f"rows{self.rows}"
        base = nvars * _S
        nrows = len(self.rows)
        self._row_shift = [base + (nrows - 1 - r) * _W for r in range(nrows)]
        self.OFF = sum(_M << (i * _S) for i in range(nvars))
        self.TOP = sum(1 << (i * _S + _S - 1) for i in range(nvars))
        # sugar degree uses the summed weights
        self.sugar_weights = tuple(sum(col) for col in zip(*self.rows))
        self.one = self.key((0,) * nvars)

    @classmethod
    def grevlex(cls, nvars: int) -> "MonomialOrder":
        return cls(nvars, [(1,) * nvars], "grevlex")

    @classmethod
    def wgrevlex(cls, weights: Sequence[int]) -> "MonomialOrder":
        return cls(len(weights), [tuple(weights)], f"wgrevlex{tuple(weights)}")

    @classmethod
    def elimination(cls, nvars: int, k: int, weights: Sequence[int] | None = None) -> "MonomialOrder":
        """Block order eliminating the first ``k`` variables."""
        w = tuple(weights) if weights is not None else (1,) * (nvars - k)
        first = (1,) * k + (0,) * (nvars - k)
        second = (0,) * k + w
        return cls(nvars, [first, second], f"elim{k}")

    def key(self, e: Sequence[int]) -> int:
        k = 0
        for i, x in enumerate(e):
            k |= (_M - x) << (i * _S)
        for row, shift in zip(self.rows, self._row_shift):
            k += sum(a * b for a, b in zip(row, e)) << shift
        return k

    def exps(self, key: int) -> tuple[int, ...]:
        return tuple(_M - ((key >> (i * _S)) & _MASK) for i in range(self.nvars))

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a + self.OFF) & self.TOP)

    def lcm(self, a: int, b: int) -> int:
        return self.key([max(x, y) for x, y in zip(self.exps(a), self.exps(b))])

    def sugar(self, key: int) -> int:
        return sum(w * x for w, x in zip(self.sugar_weights, self.exps(key)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.nvars, self.rows) == (other.nvars, other.rows)

    def __hash__(self):
        return hash((self.nvars, self.rows))

    def __repr__(self):
        return f"MonomialOrder({self.name})"


def make_order(ring: Ring, order: str | MonomialOrder = "grevlex", weights=None) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        if order.nvars != ring.nvars:
            raise ValueError("order and ring disagree on the number of variables")
        return order
    if order == "grevlex":
        return MonomialOrder.grevlex(ring.nvars)
    if order == "wgrevlex":
        if weights is None:
            raise ValueError("wgrevlex needs weights")
        return MonomialOrder.wgrevlex(weights)
    raise ValueError(f"unknown monomial order {order!r}")


@dataclass
class _BasisPoly:
    lead: int
    tail: list  # [(key - lead, coeff)], descending
    sugar: int


class _Field:
    """Coefficient arithmetic for F_p (``p`` an int) or Q (``p`` None)."""

    def __init__(self, p: int | None):
        self.p = p

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / c

    def normalize(self, terms: dict) -> tuple[int, list] | None:
        """Make monic; returns (lead, tail) or None for zero."""
        if not terms:
            return None
        items = sorted(terms.items(), reverse=True)
        lead, lc = items[0]
        if self.p:
            inv = pow(lc, -1, self.p)
            tail = [(k - lead, c * inv % self.p) for k, c in items[1:]]
        else:
            inv = 1 / lc
            tail = [(k - lead, c * inv) for k, c in items[1:]]
        return lead, tail


def _find_divisor(k: int, basis: list[_BasisPoly], OFF: int, TOP: int):
    for g in basis:
        if not ((k - g.lead + OFF) & TOP):
            return g
    return None


def _reduce(terms: dict, basis: list[_BasisPoly], order: MonomialOrder, fld: _Field) -> dict:
    """Full reduction of ``terms`` (consumed) modulo ``basis``; returns the remainder."""
    OFF, TOP, p = order.OFF, order.TOP, fld.p
    heap = [-k for k in terms]
    heapq.heapify(heap)
    out = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        k = -pop(heap)
        c = terms.pop(k, None)
        if c is None:
            continue
        g = _find_divisor(k, basis, OFF, TOP)
        if g is None:
            out[k] = c
            continue
        if p:
            for d, cg in g.tail:
                nk = k + d
                old = terms.get(nk)
                if old is None:
                    terms[nk] = -c * cg % p
                    push(heap, -nk)
                else:
                    v = (old - c * cg) % p
                    if v:
                        terms[nk] = v
                    else:
                        del terms[nk]
        else:
            for d, cg in g.tail:
                nk = k + d
                old = terms.get(nk)
                if old is None:
                    terms[nk] = -c * cg
                    push(heap, -nk)
                else:
                    v = old - c * cg
                    if v:
                        terms[nk] = v
                    else:
                        del terms[nk]
    return out


def _to_terms(f: MPoly, order: MonomialOrder) -> dict:
    return {order.key(e): c for e, c in f.terms.items()}


def _from_basis(g: _BasisPoly, ring: Ring, order: MonomialOrder) -> MPoly:
    one = 1 if ring.modulus else Fraction(1)
    terms = {order.exps(g.lead): one}
    for d, c in g.tail:
        terms[order.exps(g.lead + d)] = c
    return MPoly(ring, terms)


@dataclass
class GroebnerStats:
    pairs_considered: int = 0
    pairs_reduced_to_zero: int = 0
    basis_size: int = 0


def _buchberger(inputs: list[dict], order: MonomialOrder, fld: _Field, stop_on_unit: bool, stats: GroebnerStats):
    polys: list[_BasisPoly] = []
    active: list[int] = []
    pairs: list = []  # heap of (sugar, lcm, i, j)
    alive: dict = {}  # (i, j) -> lcm
    lcm, divides, sugar_of = order.lcm, order.divides, order.sugar

    def coprime(a: int, b: int) -> bool:
        ea, eb = order.exps(a), order.exps(b)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))

    def pair_sugar(i, j, L):
        gi, gj = polys[i], polys[j]
        return max(gi.sugar + sugar_of(L) - sugar_of(gi.lead), gj.sugar + sugar_of(L) - sugar_of(gj.lead))

    def update(h: int):
        # Gebauer-Moeller installation of Buchberger's two criteria
        lh = polys[h].lead
        cand = [(g, lcm(lh, polys[g].lead)) for g in active]
        keep = []
        for idx, (g, L) in enumerate(cand):
            if coprime(lh, polys[g].lead):
                keep.append((g, L, True))
                continue
            others = [L2 for (_, L2) in cand[idx + 1:]] + [L2 for (_, L2, _) in keep]
            if not any(divides(L2, L) for L2 in others):
                keep.append((g, L, False))
        for (i, j), L in list(alive.items()):
            if divides(lh, L) and lcm(polys[i].lead, lh) != L and lcm(polys[j].lead, lh) != L:
                del alive[(i, j)]
        for g, L, cop in keep:
            if cop:
                continue
            alive[(g, h)] = L
            heapq.heappush(pairs, (pair_sugar(g, h, L), L, g, h))
        active[:] = [g for g in active if not divides(lh, polys[g].lead)] + [h]

    def add(terms: dict, sugar: int) -> bool:
        norm = fld.normalize(terms)
        if norm is None:
            return False
        lead, tail = norm
        polys.append(_BasisPoly(lead, tail, sugar))
        update(len(polys) - 1)
        return lead == order.one

    for t in sorted(inputs, key=lambda d: max(d) if d else 0):
        if not t:
            continue
        s = max(order.sugar(k) for k in t)
        r = _reduce(dict(t), [polys[g] for g in active], order, fld)
        if add(r, s) and stop_on_unit:
            return polys, active
    while pairs:
        s, L, i, j = heapq.heappop(pairs)
        if alive.pop((i, j), None) is None:
            continue
        stats.pairs_considered += 1
        gi, gj = polys[i], polys[j]
        sp: dict = {}
        for d, c in gi.tail:
            sp[L + d] = c
        p = fld.p
        for d, c in gj.tail:
            k = L + d
            v = sp.get(k, 0) - c
            if p:
                v %= p
            if v:
                sp[k] = v
            elif k in sp:
                del sp[k]
        basis = [polys[g] for g in active]
        r = _reduce(sp, basis, order, fld)
        if not r:
            stats.pairs_reduced_to_zero += 1
            continue
        if add(r, s) and stop_on_unit:
            return polys, active
    return polys, active


def _interreduce(polys, active, order, fld) -> list[_BasisPoly]:
    basis = sorted((polys[g] for g in active), key=lambda g: g.lead)
    out = []
    for idx, g in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        tail = {g.lead + d: c for d, c in g.tail}
        r = _reduce(tail, others, order, fld)
        new_tail = sorted(((k - g.lead, c) for k, c in r.items()), reverse=True)
        out.append(_BasisPoly(g.lead, new_tail, g.sugar))
    return out


class GroebnerBasis:
    """A reduced Groebner basis together with its ring and monomial order."""

    def __init__(self, ring: Ring, order: MonomialOrder, basis: list[_BasisPoly], stats: GroebnerStats):
        self.ring = ring
        self.order = order
        self._basis = basis
        self.stats = stats
        self._fld = _Field(ring.modulus)
        self.polys = tuple(_from_basis(g, ring, order) for g in basis)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def is_unit(self) -> bool:
        return len(self._basis) == 1 and self._basis[0].lead == self.order.one

    def reduce(self, f: MPoly) -> MPoly:
        if f.ring != self.ring:
            raise ValueError(f"{f.ring} is not {self.ring}")
        r = _reduce(_to_terms(f, self.order), self._basis, self.order, self._fld)
        return MPoly._raw(self.ring, {self.order.exps(k): c for k, c in r.items()})

    def contains(self, f: MPoly) -> bool:
        return self.reduce(f).is_zero()

    def lead_exponents(self) -> list[tuple[int, ...]]:
        return [self.order.exps(g.lead) for g in self._basis]

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self.order == other.order \
            and set(self.polys) == set(other.polys)

    def __repr__(self):
        return f"GroebnerBasis({len(self)} polys, {self.order.name}, {self.ring})"


def _gens(I) -> tuple[MPoly, ...]:
    if isinstance(I, Ideal):
        return I.gens
    if isinstance(I, GroebnerBasis):
        return I.polys
    return tuple(I)


def groebner(I: Ideal | Iterable[MPoly], order: str | MonomialOrder = "grevlex", weights=None,
             stop_on_unit: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``I``."""
    gens = _gens(I)
    ring = gens[0].ring
    mo = make_order(ring, order, weights)
    fld = _Field(ring.modulus)
    stats = GroebnerStats()
    polys, active = _buchberger([_to_terms(g, mo) for g in gens if g], mo, fld, stop_on_unit, stats)
    if stop_on_unit and any(polys[g].lead == mo.one for g in active):
        basis = [_BasisPoly(mo.one, [], 0)]
    else:
        basis = _interreduce(polys, active, mo, fld)
    stats.basis_size = len(basis)
    return GroebnerBasis(ring, mo, basis, stats)


def normal_form(f: MPoly, gb: GroebnerBasis) -> MPoly:
    return gb.reduce(f)


def ideal_membership(f: MPoly, I, order: str | MonomialOrder = "grevlex", weights=None) -> bool:
    gb = I if isinstance(I, GroebnerBasis) else groebner(I, order, weights)
    return gb.contains(f)


def _aux_ring(ring: Ring, name: str = "y") -> Ring:
    while name in ring.names:
        name = name + "_"
    return ring.with_prefix(name)


def eliminate_first(gens: Sequence[MPoly], big: Ring, small: Ring, weights=None) -> list[MPoly]:
    """Generators of ``<gens> ∩ small`` where ``big`` = (y,) + small."""
    order = MonomialOrder.elimination(big.nvars, 1, weights)
    gb = groebner(gens, order)
    out = []
    for g in gb.polys:
        if g.degree_in(0) == 0:
            out.append(change_ring(g, small, [None] + list(range(small.nvars))))  # type: ignore[list-item]
    return out


def ideal_intersection(*ideals, weights=None) -> Ideal:
    """I_1 ∩ I_2 ∩ ... via y*I + (1 - y)*J and elimination of y, iterated."""
    if len(ideals) < 2:
        raise ValueError("need at least two ideals")
    current = Ideal(_gens(ideals[0]))
    ring = current.ring
    big = _aux_ring(ring)
    up = list(range(1, big.nvars))
    y = big.gen(0)
    for J in ideals[1:]:
        J = Ideal(_gens(J))
        if J.ring != ring:
            raise ValueError("ideals live in different rings")
        gens = [y * change_ring(g, big, up) for g in current.gens]
        gens += [(1 - y) * change_ring(g, big, up) for g in J.gens]
        inter = eliminate_first(gens, big, ring, weights)
        current = Ideal(inter) if inter else Ideal([ring.zero()])
    return current


def radical_membership(f: MPoly, I, order: str = "grevlex", weights=None) -> bool:
    """Rabinowitsch: f ∈ √I iff 1 ∈ I + <1 - y f> in one more variable."""
    gens = _gens(I)
    ring = gens[0].ring
    if f.ring != ring:
        raise ValueError("f and I live in different rings")
    if f.is_zero():
        return True
    big = _aux_ring(ring)
    up = list(range(1, big.nvars))
    lifted = [change_ring(g, big, up) for g in gens]
    lifted.append(1 - big.gen(0) * change_ring(f, big, up))
    if order == "wgrevlex":
        w = (1,) + tuple(weights)
        gb = groebner(lifted, MonomialOrder.wgrevlex(w), stop_on_unit=True)
    else:
        gb = groebner(lifted, "grevlex", stop_on_unit=True)
    return gb.is_unit()
