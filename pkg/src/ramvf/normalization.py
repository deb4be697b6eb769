from __future__ import annotations

import enum
from fractions import Fraction


class Normalization(str, enum.Enum):
    """Which form of the vector field is meant.

    ``SCALED`` has solution (a1 E2, a2 E4, a3 E6) with a = (-1/12, 1/12, -1/216)
    along -q d/dq; ``CLASSICAL`` has solution (E2, E4, E6) along q d/dq.
    """

    SCALED = "scaled"
    CLASSICAL = "classical"

    @classmethod
    def parse(cls, value) -> "Normalization":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


SCALE = (Fraction(-1, 12), Fraction(1, 12), Fraction(-1, 216))


def eisenstein_factors(norm: Normalization) -> tuple[Fraction, Fraction, Fraction]:
    return SCALE if Normalization.parse(norm) is Normalization.SCALED else (Fraction(1),) * 3


def theta_sign(norm: Normalization) -> int:
    """Sign s such that the field corresponds to s * q d/dq on q-expansions."""
    return -1 if Normalization.parse(norm) is Normalization.SCALED else 1
