from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..exactnum import FpElement
from ..mpoly.poly import MPoly

STATUSES = ("pass", "fail", "skipped")


@dataclass
class VerificationReport:
    check: str
    prime: int
    status: str
    details: dict = field(default_factory=dict)
    ms: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "prime": self.prime,
            "status": self.status,
            "details": jsonable(self.details),
            "ms": round(self.ms, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        flat = ", ".join(f"{k}={_short(v)}" for k, v in sorted(jsonable(self.details).items()))
        return f"{self.check:<10} p={self.prime:<4} {self.status.upper():<7} {self.ms:9.1f} ms  {flat}"


def _short(v, limit: int = 60) -> str:
    s = json.dumps(v, sort_keys=True) if not isinstance(v, str) else v
    return s if len(s) <= limit else s[: limit - 3] + "..."


def jsonable(x):
    """Convert library values into plain JSON types, deterministically."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, FpElement):
        return x.value
    if isinstance(x, MPoly):
        return str(x)
    return str(x)
