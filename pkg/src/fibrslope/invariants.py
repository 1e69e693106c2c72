"""Relative invariants of a fibration f: X -> B and the slope.

For a relatively minimal genus-g fibration over a base of genus b::

    chi_f    = chi(O_X) - (g-1)(b-1)
    omega_f2 = K_X^2   - 8(g-1)(b-1)
    e_f      = e(X)    - 4(g-1)(b-1)

and Noether's formula becomes ``12 chi_f = omega_f2 + e_f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DegenerateFibrationError, ValidationError
from .numeric import as_int, as_rat


@dataclass(frozen=True)
class GlobalSurfaceData:
    g: int
    b: int
    chi_O: Fraction
    K2: Fraction
    e_top: Fraction
    q_f: int | None = None

    def __post_init__(self):
        problems = []
        if self.g < 2:
            problems.append(f"fiber genus g={self.g} must be at least 2")
        if self.b < 0:
            problems.append(f"base genus b={self.b} must be non-negative")
        if self.q_f is not None and self.q_f < 0:
            problems.append(f"q_f={self.q_f} must be non-negative")
        if problems:
            raise ValidationError(problems)

    @classmethod
    def from_dict(cls, doc: dict) -> "GlobalSurfaceData":
        _require(doc, ("g", "b", "chi_O", "K2", "e_top"))
        q_f = doc.get("q_f")
        return cls(
            g=as_int(doc["g"], name="g"),
            b=as_int(doc["b"], name="b"),
            chi_O=as_rat(doc["chi_O"], name="chi_O"),
            K2=as_rat(doc["K2"], name="K2"),
            e_top=as_rat(doc["e_top"], name="e_top"),
            q_f=None if q_f is None else as_int(q_f, name="q_f"),
        )


@dataclass(frozen=True)
class FibrationInvariants:
    """(omega_f^2, chi_f, e_f) together with g and, when known, b and q_f."""

    g: int
    omega2: Fraction
    chi: Fraction
    e: Fraction
    b: int | None = None
    q_f: int | None = None


class ConjectureBound(NamedTuple):
    value: Fraction
    in_range: bool


@dataclass(frozen=True)
class ValidityReport:
    noether_ok: bool
    e_nonneg: bool
    chi_nonneg: bool
    locally_trivial: bool
    smooth: bool
    slope_in_range: bool

    @property
    def admissible(self) -> bool:
        return self.noether_ok and self.e_nonneg and self.chi_nonneg


def relative_invariants(data: GlobalSurfaceData) -> FibrationInvariants:
    g, b = data.g, data.b
    if g < 2:
        raise ValidationError(f"fiber genus g={g} must be at least 2")
    shift = (g - 1) * (b - 1)
    return FibrationInvariants(
        g=g,
        b=b,
        q_f=data.q_f,
        chi=Fraction(data.chi_O) - shift,
        omega2=Fraction(data.K2) - 8 * shift,
        e=Fraction(data.e_top) - 4 * shift,
    )


def slope(inv: FibrationInvariants) -> Fraction:
    """omega_f^2 / chi_f.

    Raises DegenerateFibrationError when chi_f = 0 (locally trivial) and
    ValidationError when chi_f < 0.
    """
    if inv.chi == 0:
        raise DegenerateFibrationError("slope undefined: chi_f = 0 means f is locally trivial")
    if inv.chi < 0:
        raise ValidationError(f"chi_f = {inv.chi} is negative; invalid fibration data")
    return Fraction(inv.omega2) / inv.chi


def check_noether(inv: FibrationInvariants) -> bool:
    return 12 * inv.chi == inv.omega2 + inv.e


def conjecture_bound(g: int, q_f: int) -> ConjectureBound:
    """The conjectured slope lower bound 4(g-1)/(g-q_f).

    ``in_range`` is True when q_f < g-1, the range in which the bound is
    conjectured to hold.
    """
    if g < 2:
        raise ValidationError(f"g={g} must be at least 2")
    if q_f < 0:
        raise ValidationError(f"q_f={q_f} must be non-negative")
    if q_f >= g:
        raise ValidationError(f"q_f={q_f} must be smaller than g={g}")
    return ConjectureBound(Fraction(4 * (g - 1), g - q_f), q_f < g - 1)


def classify_basic(inv: FibrationInvariants) -> ValidityReport:
    chi_nonneg = inv.chi >= 0
    if inv.chi > 0:
        lam = Fraction(inv.omega2) / inv.chi
        in_range = 0 < lam <= 12
    else:
        in_range = False
    return ValidityReport(
        noether_ok=check_noether(inv),
        e_nonneg=inv.e >= 0,
        chi_nonneg=chi_nonneg,
        locally_trivial=inv.chi == 0,
        smooth=inv.e == 0,
        slope_in_range=in_range,
    )


def _require(doc: dict, keys) -> None:
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ValidationError([f"missing key {k!r}" for k in missing])
