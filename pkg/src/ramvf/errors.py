"""Exception types raised by the library."""


class RamvfError(Exception):
    """Base class for all library errors."""


class DenominatorDivisibleByP(RamvfError, ZeroDivisionError):
    """A rational coefficient has negative p-adic valuation and cannot be reduced mod p."""


class NonzeroResidual(RamvfError):
    """The isobaric recursion left a residual that does not vanish to truncation."""


class NotACuspForm(RamvfError):
    """Division by the discriminant series was requested for a series with nonzero constant term."""


class RecursionInconsistent(RamvfError):
    """The order-by-order ODE recursion produced contradictory equations."""


class FirstIntegralFails(RamvfError):
    """Neither sign of the first-integral candidate is annihilated by the vector field."""


class NoPointsFound(RamvfError):
    """No F_p-rational point of the invariant curve was found."""


class RingMismatch(RamvfError, TypeError):
    """Arithmetic between polynomials over different rings."""
