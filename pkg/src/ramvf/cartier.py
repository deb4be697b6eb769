"""Weierstrass curves y^2 = 4x^3 - g2 x - g3 over F_p and their Cartier matrix.

In the basis (dx/y, x dx/y) the Cartier operator has matrix
[[c_{p-1}, c_{p-2}], [0, 0]], where f(x)^((p-1)/2) = sum c_i x^i.  Over F_p
the inverse Frobenius on scalars is the identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NoPointsFound
from .exactnum import FpElement, check_prime
from .mpoly.poly import MPoly, T
from .rvf import SCALED, ab_polynomials


@dataclass(frozen=True)
class WeierstrassCurve:
    p: int
    g2: FpElement
    g3: FpElement

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "g2", FpElement.of(self.g2, self.p))
        object.__setattr__(self, "g3", FpElement.of(self.g3, self.p))
        if not self.discriminant():
            raise ValueError(f"singular curve: g2^3 - 27 g3^2 = 0 over F_{self.p}")

    def discriminant(self) -> FpElement:
        return self.g2 ** 3 - 27 * self.g3 ** 2

    def rhs_coeffs(self) -> np.ndarray:
        """4x^3 - g2 x - g3, constant term first."""
        p = self.p
        return np.array([(-self.g3).value, (-self.g2).value, 0, 4 % p], dtype=np.int64)


@dataclass(frozen=True)
class CartierData:
    p: int
    coeffs: tuple[int, ...]  # c_0 .. c_{3(p-1)/2}

    def c(self, i: int) -> FpElement:
        return FpElement(self.coeffs[i] if 0 <= i < len(self.coeffs) else 0, self.p)

    @property
    def hasse_witt(self) -> FpElement:
        return self.c(self.p - 1)

    @property
    def matrix(self) -> tuple[tuple[FpElement, FpElement], tuple[FpElement, FpElement]]:
        zero = FpElement(0, self.p)
        return ((self.c(self.p - 1), self.c(self.p - 2)), (zero, zero))


@dataclass(frozen=True)
class DifferentialCoords:
    """u dx/y + w x dx/y."""

    u: FpElement
    w: FpElement


def half_power_coeffs(curve: WeierstrassCurve) -> CartierData:
    p = curve.p
    c = _kernels.polypow_1d(curve.rhs_coeffs(), (p - 1) // 2, p)
    full = [0] * (3 * (p - 1) // 2 + 1)
    for i, x in enumerate(c[: len(full)]):
        full[i] = int(x)
    return CartierData(p, tuple(full))


def hasse_witt(curve: WeierstrassCurve) -> FpElement:
    return half_power_coeffs(curve).hasse_witt


def is_supersingular(curve: WeierstrassCurve) -> bool:
    return not hasse_witt(curve)


def cartier_apply(curve: WeierstrassCurve, d: DifferentialCoords) -> DifferentialCoords:
    data = half_power_coeffs(curve)
    p = curve.p
    u = FpElement.of(d.u, p)
    w = FpElement.of(d.w, p)
    return DifferentialCoords(u * data.c(p - 1) + w * data.c(p - 2), FpElement(0, p))


def symbolic_half_power(p: int) -> np.ndarray:
    """Dense coefficients of (4x^3 - g2 x - g3)^((p-1)/2) in F_p[x, g2, g3]."""
    check_prime(p)
    base = np.array([[4 % p, 3, 0, 0], [p - 1, 1, 1, 0], [p - 1, 0, 0, 1]], dtype=np.int64)
    a = np.ones((1, 1, 1), dtype=np.int64)
    for _ in range((p - 1) // 2):
        a = _kernels.mul_sparse(a, base, p)
    return a


def symbolic_coefficient(p: int, i: int, expansion: np.ndarray | None = None) -> MPoly:
    """c_i as a polynomial in g2 -> t_2, g3 -> t_3 over F_p."""
    a = symbolic_half_power(p) if expansion is None else expansion
    ring = T.mod(p)
    if i >= a.shape[0]:
        return ring.zero()
    sl = a[i]
    idx = np.nonzero(sl)
    return MPoly._raw(ring, {(0, int(j), int(k)): int(sl[j, k]) for j, k in zip(*idx)})


def verify_prop8_symbolic(p: int) -> dict:
    """c_{p-1} == A and c_{p-2} == B / 12 as polynomials over F_p (scaled A, B)."""
    A, B = ab_polynomials(p, SCALED)
    a = symbolic_half_power(p)
    c1 = symbolic_coefficient(p, p - 1, a)
    c2 = symbolic_coefficient(p, p - 2, a)
    inv12 = pow(12, -1, p)
    first = c1 == A
    second = c2 == B.scale(inv12)
    return {
        "prime": p,
        "hasse_witt_is_A": first,
        "c_p_minus_2_is_B_over_12": second,
        "ok": first and second,
        "c_p_minus_1": str(c1),
        "c_p_minus_2": str(c2),
    }


def find_points_on_Ip(p: int, max_count: int = 3, seed: int = 0) -> list[tuple[int, int, int]]:
    """F_p points of the scaled invariant curve A = 1, t1 = -B/12, with nonzero discriminant."""
    A, B = ab_polynomials(p, SCALED)
    rng = random.Random(seed)
    order = list(range(p))
    rng.shuffle(order)
    inv12 = pow(12, -1, p)
    found = []
    for t3 in order:
        for t2 in range(p):
            if A.evaluate([0, t2, t3]).value != 1:
                continue
            if (27 * t3 * t3 - t2 ** 3) % p == 0:
                continue
            t1 = -B.evaluate([0, t2, t3]).value * inv12 % p
            found.append((t1, t2, t3))
            if len(found) >= max_count:
                return found
    if not found:
        raise NoPointsFound(f"no F_{p}-point with A = 1 and nonzero discriminant")
    return found


def verify_thm2_point(p: int, point) -> bool:
    """C(dx/y) = dx/y and C((x + t1) dx/y) = 0 for the curve attached to ``point``."""
    t1, t2, t3 = (FpElement.of(x, p) for x in point)
    A, B = ab_polynomials(p, SCALED)
    on_curve = A.evaluate([t1, t2, t3]) == 1 and (B.evaluate([t1, t2, t3]) + 12 * t1) == 0
    if not on_curve:
        raise ValueError(f"{tuple(point)} is not on Zero(I_{p})")
    curve = WeierstrassCurve(p, t2, t3)
    one, zero = FpElement(1, p), FpElement(0, p)
    alpha = cartier_apply(curve, DifferentialCoords(one, zero))
    omega = cartier_apply(curve, DifferentialCoords(t1, one))
    return alpha == DifferentialCoords(one, zero) and omega == DifferentialCoords(zero, zero)
