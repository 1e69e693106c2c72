"""Exact slope invariants, Xiao-type bounds and double-cover bookkeeping for fibred surfaces."""

from .errors import DegenerateFibrationError, FibrSlopeError, ParseError, ValidationError
from .invariants import (
    FibrationInvariants,
    GlobalSurfaceData,
    check_noether,
    classify_basic,
    conjecture_bound,
    relative_invariants,
    slope,
)
from .numeric import Rat, format_rational, parse_rational

__all__ = [
    "DegenerateFibrationError",
    "FibrSlopeError",
    "FibrationInvariants",
    "GlobalSurfaceData",
    "ParseError",
    "Rat",
    "ValidationError",
    "check_noether",
    "classify_basic",
    "conjecture_bound",
    "format_rational",
    "parse_rational",
    "relative_invariants",
    "slope",
]
