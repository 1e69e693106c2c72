"""Closed-form families of fibrations with large relative irregularity.

product_quotient (g0 >= 3): the symmetric square of a bielliptic genus-g0
curve fibred over the elliptic curve; g = 2g0 - 3, q_f = g0 - 1.

pencil_cover (g odd, 0 < gamma < (g+1)/2): a double cover of a pencil of
genus-gamma curves over P^1 with q_f = (g+1)/2.

base_change (d | g+1-2gamma): a double cover of a product C x P^1 branched
along fibres of a base-changed pencil; its slope attains the threshold
lambda_{g,gamma,q_pi}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .double_cover.bounds import BoundsProfile, SlopeBoundReport, all_bounds, best_bound, lambda_threshold
from .errors import ValidationError
from .invariants import FibrationInvariants, check_noether, classify_basic, conjecture_bound, slope

FAMILIES = ("product_quotient", "pencil_cover", "base_change")
FAMILY_ALIASES = {
    "5.1": "product_quotient",
    "5.2": "pencil_cover",
    "5.3": "base_change",
    **{f: f for f in FAMILIES},
}
FAMILY_PARAMS = {
    "product_quotient": ("g0",),
    "pencil_cover": ("g", "gamma"),
    "base_change": ("g", "gamma", "d", "b0"),
}
DEFAULT_G0_CAP = 101
DEFAULT_G_CAP = 101


@dataclass(frozen=True)
class ExampleRecord:
    family: str
    params: dict
    inv: FibrationInvariants
    q_f: int | None
    q_pi: int | None
    gamma: int | None
    conjecture_rhs: Fraction | None
    violates_conjecture: bool | None
    profile: BoundsProfile = field(repr=False, compare=False, default=None)

    @property
    def slope(self) -> Fraction:
        return slope(self.inv)


def _finish(family, params, inv, q_f, q_pi, gamma, profile) -> ExampleRecord:
    if not check_noether(inv):
        raise AssertionError(f"{family} {params}: Noether identity fails")
    rhs = None if q_f is None else conjecture_bound(inv.g, q_f).value
    violates = None if rhs is None else slope(inv) < rhs
    return ExampleRecord(family, dict(params), inv, q_f, q_pi, gamma, rhs, violates, profile)


def example_product_quotient(g0: int) -> ExampleRecord:
    if g0 < 3:
        raise ValidationError(f"g0={g0} must be at least 3")
    g = 2 * g0 - 3
    q_f = g0 - 1
    chi = Fraction((g0 - 1) ** 2 - (g0 - 1), 2)
    omega2 = Fraction(4 * (g0 - 1) ** 2 - 5 * (g0 - 1))
    # elliptic base: relative and absolute invariants agree
    inv = FibrationInvariants(g=g, b=1, q_f=q_f, omega2=omega2, chi=chi, e=12 * chi - omega2)
    profile = BoundsProfile(g=g, q_f=q_f)
    return _finish("product_quotient", {"g0": g0}, inv, q_f, None, None, profile)


def example_pencil_cover(g: int, gamma: int) -> ExampleRecord:
    if g % 2 == 0:
        raise ValidationError(f"g={g} must be odd")
    if not (0 < gamma and 2 * gamma < g + 1):
        raise ValidationError(f"gamma={gamma} must satisfy 0 < gamma < (g+1)/2")
    u = g + 1 - 2 * gamma
    omega2 = Fraction(8 * u * gamma - 4)
    chi = Fraction(u * gamma)
    gamma_prime = (g + 1) // 2 - gamma
    q_f = gamma + gamma_prime
    inv = FibrationInvariants(g=g, b=0, q_f=q_f, omega2=omega2, chi=chi, e=12 * chi - omega2)
    # the quotient pencil has chi_h = chi(O) + (gamma - 1) = 0, so it is isotrivial
    profile = BoundsProfile(
        g=g, gamma=gamma, q_pi=gamma_prime, q_f=q_f, h_locally_trivial=True, double_cover=True
    )
    return _finish("pencil_cover", {"g": g, "gamma": gamma}, inv, q_f, gamma_prime, gamma, profile)


def example_base_change(g: int, gamma: int, d: int, b0: int) -> ExampleRecord:
    problems = []
    if d < 2:
        problems.append(f"d={d} must be at least 2")
    if b0 < 1:
        problems.append(f"b0={b0} must be at least 1")
    if gamma < 1:
        problems.append(f"gamma={gamma} must be positive")
    if g < 2:
        problems.append(f"g={g} must be at least 2")
    if problems:
        raise ValidationError(problems)
    u = g + 1 - 2 * gamma
    if u <= 0 or u % d:
        raise ValidationError(f"d={d} does not divide g+1-2gamma={u}")
    q_pi = u // d - 1
    if q_pi < 1:
        raise ValidationError(f"q_pi={q_pi} must be at least 1")
    omega2 = Fraction(4 * (2 * (q_pi + 1) * (gamma - 1 + d) - d) * b0)
    chi = Fraction((q_pi + 1) * (gamma - 1 + d) * b0)
    inv = FibrationInvariants(g=g, b=0, q_f=None, omega2=omega2, chi=chi, e=12 * chi - omega2)
    if omega2 / chi != lambda_threshold(g, gamma, q_pi):
        raise AssertionError(f"base_change {(g, gamma, d, b0)}: slope differs from the threshold")
    # product quotient, and the Albanese image of the cover is the curve B'
    profile = BoundsProfile(
        g=g, gamma=gamma, q_pi=q_pi, h_locally_trivial=True, J0_is_curve=True, double_cover=True
    )
    params = {"g": g, "gamma": gamma, "d": d, "b0": b0}
    return _finish("base_change", params, inv, None, q_pi, gamma, profile)


_BUILDERS = {
    "product_quotient": example_product_quotient,
    "pencil_cover": example_pencil_cover,
    "base_change": example_base_change,
}


def canonical_family(name: str) -> str:
    try:
        return FAMILY_ALIASES[name]
    except KeyError:
        raise ValidationError(f"unknown family {name!r}") from None


def build_example(family: str, params: dict) -> ExampleRecord:
    family = canonical_family(family)
    expected = FAMILY_PARAMS[family]
    missing = [p for p in expected if p not in params]
    extra = [p for p in params if p not in expected]
    if missing or extra:
        raise ValidationError(
            [f"missing parameter {p!r}" for p in missing] + [f"unexpected parameter {p!r}" for p in extra]
        )
    return _BUILDERS[family](**{p: params[p] for p in expected})


def family_grid(family: str, max_g: int | None = None) -> Iterator[dict]:
    """All admissible parameter points of a family, in a fixed order.

    Defaults: g0 <= 101 for product_quotient, g <= 101 otherwise. A given
    max_g caps the fibre genus of every family.
    """
    family = canonical_family(family)
    if family == "product_quotient":
        top = DEFAULT_G0_CAP if max_g is None else (max_g + 3) // 2
        for g0 in range(3, top + 1):
            yield {"g0": g0}
        return
    g_cap = DEFAULT_G_CAP if max_g is None else max_g
    if family == "pencil_cover":
        for g in range(3, g_cap + 1, 2):
            for gamma in range(1, (g + 1) // 2):
                if 2 * gamma < g + 1:
                    yield {"g": g, "gamma": gamma}
        return
    for g in range(2, g_cap + 1):
        for gamma in range(1, (g + 1) // 2 + 1):
            u = g + 1 - 2 * gamma
            for d in range(2, u + 1):
                if u % d == 0 and u // d - 1 >= 1:
                    for b0 in (1, 2, 3):
                        yield {"g": g, "gamma": gamma, "d": d, "b0": b0}


@dataclass(frozen=True)
class VerdictSummary:
    slope: Fraction
    conjecture_rhs: Fraction | None
    margin: Fraction | None
    reports: tuple[SlopeBoundReport, ...]
    best: SlopeBoundReport | None
    contradictions: tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return not self.contradictions

    @property
    def best_gap(self) -> Fraction | None:
        """slope minus the largest applicable bound."""
        return None if self.best is None else self.slope - self.best.bound


def violation_report(record: ExampleRecord) -> VerdictSummary:
    """Slope against the conjectured bound and every implemented bound.

    A contradiction is an implemented bound whose hypotheses the example
    meets although its slope breaks it.
    """
    basic = classify_basic(record.inv)
    if not basic.admissible:
        raise ValidationError(f"{record.family} {record.params}: inadmissible invariants")
    lam = record.slope
    profile = record.profile or BoundsProfile(g=record.inv.g, q_f=record.q_f)
    reports = tuple(all_bounds(profile))
    bad = tuple(r.theorem_id for r in reports if r.contradicted_by(lam))
    rhs = record.conjecture_rhs
    return VerdictSummary(
        slope=lam,
        conjecture_rhs=rhs,
        margin=None if rhs is None else rhs - lam,
        reports=reports,
        best=best_bound(list(reports)),
        contradictions=bad,
    )
