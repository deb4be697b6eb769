"""The Ramanujan vector field, its p-th iterate, A, B, I_p and the q-series solution."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import _kernels
from .errors import FirstIntegralFails, RecursionInconsistent
from .exactnum import INFINITY, check_prime, mod_p, ord_p
from .mpoly.dense import derivation_rows, from_dense, to_dense
from .mpoly.groebner import groebner, radical_membership
from .mpoly.linalg import jacobian_at, solve
from .mpoly.poly import (
    Ideal,
    MPoly,
    Ring,
    T,
    is_homogeneous,
    partial_derivative,
    reduce_mod_p,
    substitute,
    weighted_degree,
)
from .normalization import SCALE, Normalization, theta_sign
from .qexp import default_truncation, eisenstein, eval_at_eisenstein, isobaric_representation, isobaric_to_t, theta

log = logging.getLogger(__name__)

SCALED = Normalization.SCALED
CLASSICAL = Normalization.CLASSICAL

#: q^1 coefficients of the solution: (2, 20, 7/3) scaled, (-24, 240, -504) classical
TANGENT = {
    SCALED: (Fraction(2), Fraction(20), Fraction(7, 3)),
    CLASSICAL: (Fraction(-24), Fraction(240), Fraction(-504)),
}
BASE_POINT = {SCALED: SCALE, CLASSICAL: (Fraction(1),) * 3}


@dataclass(frozen=True)
class VectorField:
    """Components (v t_1, v t_2, v t_3); ``norm`` is None for fields other than Ramanujan's."""

    components: tuple[MPoly, MPoly, MPoly]
    norm: Normalization | None = None

    @property
    def ring(self) -> Ring:
        return self.components[0].ring

    def __call__(self, f: MPoly) -> MPoly:
        return apply(self, f)

    def mod(self, p: int) -> "VectorField":
        return VectorField(tuple(reduce_mod_p(c, p) for c in self.components), self.norm)


def _ring_for(modulus: int | None) -> Ring:
    if modulus is None:
        return T
    check_prime(modulus)
    return T.mod(modulus)


def make_ramanujan(norm: Normalization | str = SCALED, modulus: int | None = None) -> VectorField:
    norm = Normalization.parse(norm)
    R = T
    t1, t2, t3 = R.gens()
    if norm is SCALED:
        comps = (
            t1 ** 2 - t2 * Fraction(1, 12),
            4 * t1 * t2 - 6 * t3,
            6 * t1 * t3 - t2 ** 2 * Fraction(1, 3),
        )
    else:
        comps = (
            (t1 ** 2 - t2) * Fraction(1, 12),
            (t1 * t2 - t3) * Fraction(1, 3),
            (t1 * t3 - t2 ** 2) * Fraction(1, 2),
        )
    v = VectorField(comps, norm)
    if modulus is not None:
        check_prime(modulus)
        v = v.mod(modulus)
    return v


def discriminant(norm: Normalization | str, modulus: int | None = None) -> MPoly:
    """27 t3^2 - t2^3 (scaled) or t2^3 - t3^2 (classical)."""
    norm = Normalization.parse(norm)
    R = _ring_for(modulus)
    _, t2, t3 = R.gens()
    return 27 * t3 ** 2 - t2 ** 3 if norm is SCALED else t2 ** 3 - t3 ** 2


def apply(v: VectorField, f: MPoly) -> MPoly:
    """The derivation sum_j (v t_j) df/dt_j."""
    if f.ring != v.ring:
        raise ValueError(f"{f.ring} is not {v.ring}")
    out = f.ring.zero()
    for j, comp in enumerate(v.components):
        d = partial_derivative(f, j)
        if d:
            out = out + comp * d
    return out


def iterate(v: VectorField, f: MPoly, n: int) -> MPoly:
    """v applied n times; dense kernels over F_p, sparse arithmetic over Q."""
    if f.ring != v.ring:
        raise ValueError(f"{f.ring} is not {v.ring}")
    p = f.ring.modulus
    if p is None or f.ring.nvars != 3:
        for _ in range(n):
            f = apply(v, f)
        return f
    rows = derivation_rows(v.components)
    a = to_dense(f)
    for _ in range(n):
        a = _kernels.trim(_kernels.apply_derivation(a, rows, p))
    return from_dense(a, f.ring)


def iterate_p(v: VectorField, f: MPoly, p: int | None = None) -> MPoly:
    """v^p f over F_p by p successive applications."""
    ring_p = v.ring.modulus
    if ring_p is None:
        raise ValueError("iterate_p needs a field over F_p")
    if p is not None and p != ring_p:
        raise ValueError(f"field is over F_{ring_p}, not F_{p}")
    return iterate(v, f, ring_p)


def vp_components(v: VectorField) -> tuple[MPoly, MPoly, MPoly]:
    """(v^p t_1, v^p t_2, v^p t_3)."""
    return tuple(iterate_p(v, t) for t in v.ring.gens())  # type: ignore[return-value]


@lru_cache(maxsize=None)
def _ab_over_q(p: int) -> tuple[MPoly, MPoly]:
    A = isobaric_to_t(isobaric_representation(p - 1, eisenstein(p - 1, default_truncation(p - 1))), T)
    B = isobaric_to_t(isobaric_representation(p + 1, eisenstein(p + 1, default_truncation(p + 1))), T)
    return A, B


def ab_over_q(p: int, norm: Normalization | str = CLASSICAL) -> tuple[MPoly, MPoly]:
    """A, B over Q with E_{p-1} = A(...), E_{p+1} = B(...) in the chosen normalization."""
    norm = Normalization.parse(norm)
    A, B = _ab_over_q(p)
    if norm is SCALED:
        _, t2, t3 = T.gens()
        sub = {1: 12 * t2, 2: -216 * t3}
        A, B = substitute(A, sub), substitute(B, sub)
    return A, B


@lru_cache(maxsize=None)
def ab_polynomials(p: int, norm: Normalization | str = CLASSICAL) -> tuple[MPoly, MPoly]:
    """A and B reduced mod p, in F_p[t_1, t_2, t_3] (they only involve t_2, t_3)."""
    check_prime(p)
    A, B = ab_over_q(p, norm)
    return reduce_mod_p(A, p), reduce_mod_p(B, p)


def ideal_Ip(p: int, norm: Normalization | str = SCALED) -> Ideal:
    """<A - 1, B + 12 t1> (scaled) or <A - 1, B - t1> (classical)."""
    norm = Normalization.parse(norm)
    A, B = ab_polynomials(p, norm)
    t1 = A.ring.gen(0)
    second = B + 12 * t1 if norm is SCALED else B - t1
    return Ideal([A - 1, second])


def first_integral_candidate(p: int, norm: Normalization | str, sign: int = 1) -> MPoly:
    """B + 12 t1 A (scaled) or B - t1 A (classical); ``sign=-1`` flips the t1 A term."""
    norm = Normalization.parse(norm)
    A, B = ab_polynomials(p, norm)
    t1 = A.ring.gen(0)
    c = 12 if norm is SCALED else -1
    return B + (sign * c) * t1 * A


def first_integral(p: int, norm: Normalization | str = SCALED) -> MPoly:
    """The first integral f with v(f) = 0, weighted-homogeneous of degree p + 1."""
    norm = Normalization.parse(norm)
    v = make_ramanujan(norm, p)
    for sign in (1, -1):
        f = first_integral_candidate(p, norm, sign)
        if apply(v, f).is_zero():
            if sign == -1:
                log.warning("p=%d %s: first integral holds with the opposite sign", p, norm.value)
            if not is_homogeneous(f) or weighted_degree(f) != p + 1:
                raise FirstIntegralFails(f"p={p}: first integral is not homogeneous of degree {p + 1}")
            return f
    raise FirstIntegralFails(f"p={p} {norm.value}: v(f) != 0 for both signs")


def regular_first_integral_check(p: int, norm: Normalization | str = SCALED) -> dict:
    """Whether v(A) vanishes on f = 0 and whether <A - 1, f> equals I_p."""
    norm = Normalization.parse(norm)
    v = make_ramanujan(norm, p)
    A, _ = ab_polynomials(p, norm)
    f = first_integral(p, norm)
    vA = apply(v, A)
    curve = Ideal([A - 1, f])
    Ip = ideal_Ip(p, norm)
    gb_curve, gb_ip = groebner(curve), groebner(Ip)
    forward = all(gb_ip.contains(g) for g in curve.gens)
    backward = all(gb_curve.contains(g) for g in Ip.gens)
    return {
        "prime": p,
        "normalization": norm.value,
        "vA_in_radical_f": radical_membership(vA, Ideal([f])),
        "curve_equals_Ip": forward and backward,
        "curve_in_Ip": forward,
        "Ip_in_curve": backward,
    }


# -- the q-series solution -------------------------------------------------

@dataclass(frozen=True)
class ODESolution:
    """Coefficients t_{i,n}, i = 0, 1, 2 and n < N."""

    coeffs: tuple[tuple[Fraction, ...], tuple[Fraction, ...], tuple[Fraction, ...]]

    @property
    def N(self) -> int:
        return len(self.coeffs[0])

    def __getitem__(self, idx):
        i, n = idx
        return self.coeffs[i][n]


def ode_solve(N: int, norm: Normalization | str = SCALED) -> ODESolution:
    """Solve v(t) = s q dt/dq order by order (s = -1 scaled, +1 classical).

    Orders 0 and 1 are seeded by the base point and tangent vector and
    checked for consistency; every later order is a nonsingular 3x3 system.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    norm = Normalization.parse(norm)
    v = make_ramanujan(norm)
    s = theta_sign(norm)
    a = BASE_POINT[norm]
    b = TANGENT[norm]
    quad = []  # (component, coeff, var_a, var_b) for quadratic monomials
    for i, comp in enumerate(v.components):
        for e, c in comp.terms.items():
            d = sum(e)
            if d > 2:
                raise ValueError("components must have degree <= 2")
            if d == 2:
                vars_ = [j for j in range(3) for _ in range(e[j])]
                quad.append((i, c, vars_[0], vars_[1]))
    L = jacobian_at(v.components, a)
    va = [c.evaluate(list(a)) for c in v.components]
    if any(va):
        raise RecursionInconsistent(f"order 0: v(a) = {va} is not zero")
    t = [[a[i], b[i]] for i in range(3)]
    for n in range(1, N):
        known = [Fraction(0)] * 3
        for i, c, x, y in quad:
            known[i] += c * sum(t[x][j] * t[y][n - j] for j in range(1, n))
        M = [[(s * n if i == j else 0) - L[i][j] for j in range(3)] for i in range(3)]
        if n == 1:
            lhs = [sum(M[i][j] * b[j] for j in range(3)) for i in range(3)]
            if lhs != known:
                raise RecursionInconsistent(f"order 1: tangent {b} does not satisfy the linearized equation")
            continue
        x = solve(M, known)
        if x is None:
            raise RecursionInconsistent(f"order {n}: singular system")
        for i in range(3):
            t[i].append(x[i])
    return ODESolution(tuple(tuple(col[:N]) for col in t))  # type: ignore[arg-type]


def eisenstein_solution(N: int, norm: Normalization | str = SCALED) -> ODESolution:
    """The same coefficients from divisor sums: t_i = a_i E_{2i}."""
    norm = Normalization.parse(norm)
    a = BASE_POINT[norm]
    cols = tuple(tuple(Fraction(c) * a[i] for c in eisenstein(2 * i + 2, N).coeffs) for i in range(3))
    return ODESolution(cols)  # type: ignore[arg-type]


def p_integrality_report(sol: ODESolution, primes: Sequence[int]) -> dict[int, dict]:
    """Per prime: minimal valuation over all coefficients and over n >= 1."""
    out = {}
    for p in primes:
        all_min = INFINITY
        tail_min = INFINITY
        for i in range(3):
            for n, c in enumerate(sol.coeffs[i]):
                o = ord_p(c, p)
                all_min = min(all_min, o)
                if n >= 1:
                    tail_min = min(tail_min, o)
        out[p] = {
            "min_ord": all_min,
            "min_ord_n_ge_1": tail_min,
            "p_integral": all_min >= 0,
        }
    return out


# -- linearization -----------------------------------------------------------

def linear_part_at(v: VectorField, point: Sequence) -> list[list]:
    """Jacobian of (v t_1, v t_2, v t_3) at ``point``."""
    return jacobian_at(v.components, point)


REMARK1_S = [
    [Fraction(1, 3), Fraction(2), Fraction(1, 21)],
    [Fraction(2, 3), Fraction(0), Fraction(-10, 21)],
    [Fraction(1), Fraction(0), Fraction(1)],
]
REMARK1_J = [[0, 1, 0], [0, 0, 0], [0, 0, 1]]


def check_commutation(v: VectorField, f: MPoly, N: int) -> bool:
    """eval(v f) == s q d/dq eval(f) to order N (s = -1 scaled, +1 classical)."""
    if v.norm is None or v.ring.modulus is not None:
        raise ValueError("needs a Ramanujan field over Q")
    lhs = eval_at_eisenstein(apply(v, f), v.norm, N)
    rhs = theta(eval_at_eisenstein(f, v.norm, N), theta_sign(v.norm))
    return lhs == rhs


def sing_v_ideal(modulus: int | None = None, check: bool = True) -> Ideal:
    """Sing(v) = <t1^2 - t2, t1^3 - t3>; with ``check`` the classical components are verified to lie in it."""
    R = _ring_for(modulus)
    t1, t2, t3 = R.gens()
    I = Ideal([t1 ** 2 - t2, t1 ** 3 - t3])
    if check:
        gb = groebner(I)
        v = make_ramanujan(CLASSICAL, modulus)
        bad = [i for i, c in enumerate(v.components) if not gb.contains(c)]
        if bad:
            raise ValueError(f"components {bad} are not in Sing(v)")
    return I


def point_mod_p(point: Sequence, p: int) -> tuple[int, ...]:
    return tuple(mod_p(x, p) for x in point)
