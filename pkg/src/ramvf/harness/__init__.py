"""Verification checks, reports and the command line."""

from .checks import CHECK_NAMES, DEFAULT_CEILINGS, explore_f2, run_check
from .report import VerificationReport

__all__ = ["CHECK_NAMES", "DEFAULT_CEILINGS", "VerificationReport", "explore_f2", "run_check"]
