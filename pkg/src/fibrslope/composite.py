"""Degree lower bounds for the pieces of the filtration and the composite
slope bounds built from them.

The audit replays, over every rank 1 <= r <= g and the minimal admissible
degrees, the per-index coefficient inequalities that turn the mixed
Xiao / multiplication-map bound into a closed-form slope bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import ValidationError
from .numeric import is_integral
from .xiao import ImageClass, multiplication_rank_bound

SCENARIOS = ("non_triple_nor_double", "non_double", "gamma_ge_g_over_3", "q_small")

# scenarios whose threshold is a strict inequality on the slope
STRICT_SCENARIOS = frozenset({"non_triple_nor_double", "non_double", "gamma_ge_g_over_3"})

DEFAULT_AUDIT_CAP = 40


def castelnuovo_feasible(d, s: int, g: int) -> bool:
    """Can a degree-d birational linear system with s sections live on a genus-g curve?

    Uses d >= g/m + (m+1)s/2 - m with m = floor((d-1)/(s-2)). When m = 0 the
    system cannot be birational and the answer is False.
    """
    d = Fraction(d)
    if s < 3:
        raise ValidationError(f"s={s} must be at least 3")
    if not is_integral(d):
        raise ValidationError(f"d={d} must be an integer")
    if d < 1:
        raise ValidationError(f"d={d} must be positive")
    m = (int(d) - 1) // (s - 2)
    if m == 0:
        return False
    return d >= Fraction(g, m) + Fraction((m + 1) * s, 2) - m


def castelnuovo_min_degree(r: int, g: int, s: int | None = None) -> int | None:
    """Smallest d <= 2g-2 passing castelnuovo_feasible with s sections (default s = r).

    Returns None when no such degree exists.
    """
    s = r if s is None else s
    if s < 3:
        raise ValidationError(f"a birational map needs at least 3 sections, got s={s}")
    for d in range(1, 2 * g - 1):
        if castelnuovo_feasible(d, s, g):
            return d
    return None


def degree_class_min_degree(r: int, image: ImageClass, *, before_degree3: bool = False) -> Fraction:
    if r < 1:
        raise ValidationError(f"rank r={r} must be positive")
    kind = image.kind
    if kind == "degree_ge4":
        return Fraction(6 * (r - 1) if before_degree3 else 4 * (r - 1))
    if kind == "degree3":
        return Fraction(3 * r)
    if kind == "degree2":
        return Fraction(2 * min(2 * (r - 1), r + image.param - 1))
    if kind == "birational":
        raise ValidationError("birational pieces are bounded by castelnuovo_feasible")
    raise ValidationError("image class unknown: no degree bound available")


def closed_form_bound(g: int, scenario: str) -> Fraction:
    """Closed-form slope threshold for the given structural scenario.

    non_triple_nor_double: 14(g-1)/(3(g+1)), strict.
    non_double, gamma_ge_g_over_3: 18(g-1)/(4g+3), strict.
    q_small: 9(g-1)/(2g).
    """
    if g < 2:
        raise ValidationError(f"g={g} must be at least 2")
    if scenario == "non_triple_nor_double":
        return Fraction(14 * (g - 1), 3 * (g + 1))
    if scenario in ("non_double", "gamma_ge_g_over_3"):
        return Fraction(18 * (g - 1), 4 * g + 3)
    if scenario == "q_small":
        return Fraction(9 * (g - 1), 2 * g)
    raise ValidationError(f"unknown scenario {scenario!r}")


@dataclass
class AuditRow:
    name: str
    relation: str  # ">=", ">" or "="
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, lhs: Fraction, rhs: Fraction, **witness) -> None:
        self.checked += 1
        if self.relation == ">=":
            ok = lhs >= rhs
        elif self.relation == ">":
            ok = lhs > rhs
        else:
            ok = lhs == rhs
        if not ok:
            self.failures.append({**witness, "lhs": lhs, "rhs": rhs, "gap": lhs - rhs})


@dataclass
class AuditReport:
    g: int
    rows: list[AuditRow]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def row(self, name: str) -> AuditRow:
        for row in self.rows:
            if row.name == name:
                return row
        raise KeyError(name)


def audit_coefficients(g: int, *, cap: int = DEFAULT_AUDIT_CAP) -> AuditReport:
    """Check the per-index coefficient inequalities at minimal degrees.

    Each pair (i, i+1) is modelled by a piece of rank r and the next piece of
    rank r+1 of the same class, both at their least admissible degree; a pair
    is skipped when either degree exceeds 2g-2. The next piece at rank g is
    the last one and has d = 2g-2, as does the virtual piece n+1.
    Birational degrees come from castelnuovo_min_degree with s = r.
    """
    if not 2 <= g <= cap:
        raise ValidationError(f"g={g} outside the audit range [2, {cap}]")
    top = Fraction(2 * g - 2)
    third, half = Fraction(1, 3), Fraction(1, 2)

    bir = {r: castelnuovo_min_degree(r, g) for r in range(3, g)}
    bir[g] = 2 * g - 2

    def birational_degree(r: int) -> Fraction | None:
        d = bir.get(r)
        return None if d is None else Fraction(d)

    def class_pairs(degree: Callable[[int], Fraction | None]):
        for r in range(1, g):
            d1 = degree(r)
            d2 = top if r + 1 == g else degree(r + 1)
            if d1 is None or d2 is None or d1 > top or d2 > top:
                continue
            yield r, d1, d2

    def fixed(kind: str, *, before3: bool = False, param: int | None = None):
        image = ImageClass(kind, param)
        return lambda r: degree_class_min_degree(r, image, before_degree3=before3)

    def rho(r: int, g0: int = 0, birational: bool = False) -> int:
        return multiplication_rank_bound(r, g0, birational)

    rows: list[AuditRow] = []

    # weights 2/3 (multiplication) and 1/3 (Xiao)
    row = AuditRow("two_thirds.non_birational", ">=")
    for r, d1, d2 in class_pairs(fixed("degree_ge4")):
        lhs = 2 * third * (2 * rho(r) - r) + third * (d1 + d2)
        row.record(lhs, Fraction(14, 3) * r - Fraction(8, 3), r=r, d=d1, d_next=d2)
    rows.append(row)

    row = AuditRow("two_thirds.birational", ">=")
    for r, d1, d2 in class_pairs(birational_degree):
        if r == g - 1:
            continue
        lhs = 2 * third * (2 * rho(r, birational=True) - r) + third * (d1 + d2)
        row.record(lhs, Fraction(14, 3) * r - Fraction(11, 3), r=r, d=d1, d_next=d2)
    rows.append(row)

    row = AuditRow("two_thirds.penultimate", "=")
    d_pen = birational_degree(g - 1)
    if d_pen is not None:
        r = g - 1
        lhs = 2 * third * (2 * rho(r, birational=True) - r) + third * (d_pen + top)
        row.record(lhs, Fraction(14, 3) * r - Fraction(13, 3), r=r, d=d_pen, d_next=top)
    rows.append(row)

    row = AuditRow("two_thirds.top", "=")
    lhs = 2 * third * (2 * rho(g, birational=True) - g) + third * (top + top)
    row.record(lhs, Fraction(14, 3) * g - Fraction(16, 3), r=g, d=top, d_next=top)
    rows.append(row)

    # equal weights, pieces of degree >= 3 before the birational range
    for label, degree in (
        ("degree_ge4", fixed("degree_ge4")),
        ("degree_ge4_before_degree3", fixed("degree_ge4", before3=True)),
        ("degree3", fixed("degree3", param=1)),
    ):
        row = AuditRow(f"half.non_birational.{label}", ">")
        for r, d1, d2 in class_pairs(degree):
            lhs = half * (2 * rho(r) - r) + half * (d1 + d2)
            row.record(lhs, Fraction(9, 2) * r - 2, r=r, d=d1, d_next=d2)
        rows.append(row)

    row = AuditRow("half.birational", ">=")
    for r, d1, d2 in class_pairs(birational_degree):
        lhs = half * (2 * rho(r, birational=True) - r) + half * (d1 + d2)
        row.record(lhs, Fraction(9, 2) * r - Fraction(7, 2), r=r, d=d1, d_next=d2)
    rows.append(row)

    row = AuditRow("half.top", "=")
    lhs = half * (2 * rho(g, birational=True) - g) + half * (top + top)
    row.record(lhs, Fraction(9, 2) * g - 5, r=g, d=top, d_next=top)
    rows.append(row)

    # a degree-2 structure with image genus gamma >= g/3
    row = AuditRow("double_structure.non_birational", ">=")
    for r, d1, d2 in class_pairs(fixed("degree_ge4")):
        lhs = half * (2 * rho(r) - r) + half * (d1 + d2)
        row.record(lhs, Fraction(9, 2) * r - 2, r=r, d=d1, d_next=d2)
    rows.append(row)

    row = AuditRow("double_structure.degree2", ">=")
    for gamma in range(-(-g // 3), (g + 1) // 2 + 1):
        for r, d1, d2 in class_pairs(fixed("degree2", param=gamma)):
            theta = rho(r, gamma)
            lhs = half * (2 * theta - r) + half * (d1 + d2)
            row.record(lhs, Fraction(9, 2) * r - 2, r=r, d=d1, d_next=d2, gamma=gamma)
    rows.append(row)

    # small relative irregularity: r_{n-1} <= g-2 and g >= 18; a piece of
    # rank g-2 is then the penultimate one and has d >= 2g-4
    middle = AuditRow("small_irregularity.middle", ">=")
    penult = AuditRow("small_irregularity.penultimate", ">=")
    tail = AuditRow("small_irregularity.tail", ">=")
    if g >= 18:

        def capped(r: int) -> Fraction | None:
            d = birational_degree(r)
            if d is not None and r == g - 2:
                d = max(d, Fraction(2 * g - 4))
            return d

        for r in range(3, g - 2):
            d1, d2 = capped(r), capped(r + 1)
            if d1 is None or d2 is None:
                continue
            lhs = half * (2 * rho(r, birational=True) - r) + half * (d1 + d2)
            rhs = min(Fraction(9, 2) * r - 2, Fraction(8 * r + g - 8, 2))
            middle.record(lhs, rhs, r=r, d=d1, d_next=d2)
            tail.record(lhs, Fraction(9, 2) * r - 2, r=r, d=d1, d_next=d2)
        for r in range(3, g - 1):
            d1 = capped(r)
            if d1 is None:
                continue
            lhs = half * (2 * rho(r, birational=True) - r) + half * (d1 + top)
            rhs = min(Fraction(9, 2) * r - 2, Fraction(13 * r + 5 * g - 20, 4))
            penult.record(lhs, rhs, r=r, d=d1, d_next=top)
            tail.record(lhs, Fraction(9, 2) * r - 2, r=r, d=d1, d_next=top)
    rows.extend([middle, penult, tail])

    return AuditReport(g, rows)

