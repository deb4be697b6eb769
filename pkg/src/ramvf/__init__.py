"""Exact computations around the Ramanujan vector field in characteristic p."""

from .errors import (
    DenominatorDivisibleByP,
    FirstIntegralFails,
    NoPointsFound,
    NonzeroResidual,
    NotACuspForm,
    RamvfError,
    RecursionInconsistent,
    RingMismatch,
)
from .normalization import Normalization

__version__ = "0.1.0"

__all__ = [
    "DenominatorDivisibleByP",
    "FirstIntegralFails",
    "NoPointsFound",
    "NonzeroResidual",
    "Normalization",
    "NotACuspForm",
    "RamvfError",
    "RecursionInconsistent",
    "RingMismatch",
]
