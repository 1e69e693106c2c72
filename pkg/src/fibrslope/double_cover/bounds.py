"""Slope lower bounds and their hypotheses.

Each evaluator returns a SlopeBoundReport: whether the hypotheses are met
(with per-hypothesis detail) and the bound value when it is defined.
``strict`` marks bounds stated as a strict inequality lambda_f > bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..composite import closed_form_bound
from ..errors import ValidationError
from ..invariants import conjecture_bound
from ..numeric import as_int


@dataclass(frozen=True)
class BoundsProfile:
    """What is known about a fibration, as far as the bound registry cares.

    ``double_cover`` / ``triple_cover`` are None when unknown; ``gamma`` is
    the genus of the quotient for a known double cover structure.
    """

    g: int
    gamma: int | None = None
    q_pi: int | None = None
    q_f: int | None = None
    h_locally_trivial: bool = False
    J0_is_curve: bool = False
    double_cover: bool | None = None
    triple_cover: bool | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> "BoundsProfile":
        if "g" not in doc:
            raise ValidationError("profile needs key 'g'")

        def opt_int(key):
            v = doc.get(key)
            return None if v is None else as_int(v, name=key)

        def opt_bool(key, default=None):
            v = doc.get(key, default)
            if v is not None and not isinstance(v, bool):
                raise ValidationError(f"{key} must be a boolean")
            return v

        gamma = opt_int("gamma")
        double = opt_bool("double_cover")
        if double is None and gamma is not None:
            double = True
        return cls(
            g=as_int(doc["g"], name="g"),
            gamma=gamma,
            q_pi=opt_int("q_pi"),
            q_f=opt_int("q_f"),
            h_locally_trivial=bool(opt_bool("h_locally_trivial", False)),
            J0_is_curve=bool(opt_bool("J0_is_curve", False)),
            double_cover=double,
            triple_cover=opt_bool("triple_cover"),
        )


@dataclass(frozen=True)
class SlopeBoundReport:
    theorem_id: str
    hypotheses_met: bool
    hypotheses: dict[str, bool] = field(default_factory=dict)
    bound: Fraction | None = None
    strict: bool = False

    def contradicted_by(self, slope: Fraction) -> bool:
        """True when the hypotheses hold yet the slope breaks the bound."""
        if not self.hypotheses_met or self.bound is None:
            return False
        return slope <= self.bound if self.strict else slope < self.bound


def _report(theorem_id, hyps: dict[str, bool], bound, strict=False) -> SlopeBoundReport:
    return SlopeBoundReport(theorem_id, all(hyps.values()), dict(hyps), bound, strict)


def F_invariant(g: int, gamma: int, q_pi: int) -> Fraction:
    return Fraction(
        (g - 1) ** 2 - 4 * (g - 1) * (gamma * q_pi + gamma + q_pi) - 4 * q_pi**2 * (gamma**2 - 1)
    )


def lambda_threshold(g: int, gamma: int, q_pi: int) -> Fraction:
    """8 - 4(g+1-2gamma) / ((q_pi+1)((g-1)+(q_pi-1)(gamma-1)))."""
    den = (q_pi + 1) * ((g - 1) + (q_pi - 1) * (gamma - 1))
    if den <= 0:
        raise ValidationError(f"lambda threshold denominator {den} must be positive")
    return 8 - Fraction(4 * (g + 1 - 2 * gamma), den)


def J0_is_curve(profile: BoundsProfile) -> bool:
    """Explicit flag, or forced by q_pi > gamma + 1."""
    if profile.J0_is_curve:
        return True
    return profile.q_pi is not None and profile.gamma is not None and profile.q_pi > profile.gamma + 1


def double_cover_bounds(profile: BoundsProfile) -> list[SlopeBoundReport]:
    g, gamma = profile.g, profile.gamma
    if g < 2:
        raise ValidationError(f"g={g} must be at least 2")
    if gamma is None or gamma < 1:
        raise ValidationError("double cover bounds need gamma >= 1")
    if 2 * g + 2 - 4 * gamma < 0:
        raise ValidationError(f"Hurwitz bound violated for (g, gamma) = ({g}, {gamma})")
    lt = profile.h_locally_trivial
    q_pi, q_f = profile.q_pi, profile.q_f
    irregular = q_pi is not None and q_pi > 0
    c = 2 * g + 1 - 3 * gamma
    u = g + 1 - 2 * gamma
    out = []

    out.append(
        _report(
            "double_cover_gamma",
            {"h_locally_trivial_or_g>=4gamma+1": lt or g >= 4 * gamma + 1},
            Fraction(4 * (g - 1), g - gamma),
        )
    )

    out.append(
        _report(
            "irregular_cover",
            {
                "q_pi>0": irregular,
                "h_locally_trivial_or_F(g,gamma,1)>=0": lt or F_invariant(g, gamma, 1) >= 0,
            },
            6 + Fraction(4 * (gamma - 1), g - 1),
        )
    )

    curve = J0_is_curve(profile)
    if irregular:
        hyps = {
            "q_pi>0": True,
            "J0_is_curve": curve,
            "h_locally_trivial_or_F(g,gamma,q_pi)>=0": lt or F_invariant(g, gamma, q_pi) >= 0,
        }
        out.append(_report("irregular_cover_curve_image", hyps, lambda_threshold(g, gamma, q_pi)))
    else:
        out.append(
            _report(
                "irregular_cover_curve_image",
                {"q_pi>0": False, "J0_is_curve": curve, "h_locally_trivial_or_F(g,gamma,q_pi)>=0": False},
                None,
            )
        )

    out.append(
        _report(
            "irregular_cover_large_genus",
            {"q_pi>0": irregular, "g>=6gamma+7": g >= 6 * gamma + 7},
            Fraction(6),
        )
    )

    small_hyps = {"g<=4gamma+1": g <= 4 * gamma + 1, "(g+1-2gamma)^2>=2(2g+1-3gamma)": u * u >= 2 * c}
    out.append(
        _report(
            "double_cover_small_genus",
            small_hyps,
            Fraction(4 * (g - 1) * (3 * g + 1 - 4 * gamma), u * u + 4 * gamma * c),
        )
    )

    # g >= 2(gamma+1) + sqrt(8 gamma^2 + 1), decided in integers
    sqrt_ok = g >= 2 * gamma + 3 and (g - 2 * gamma - 2) ** 2 >= 8 * gamma * gamma + 1
    conj = None
    if q_f is not None and 0 <= q_f < g:
        conj = conjecture_bound(g, q_f).value
    out.append(
        _report(
            "double_cover_conjecture_trivial_quotient",
            {
                "h_locally_trivial": lt,
                "g>=2(gamma+1)+sqrt(8gamma^2+1)": sqrt_ok,
                "q_f<(g+1)/2": q_f is not None and 2 * q_f < g + 1,
            },
            conj,
        )
    )
    out.append(
        _report(
            "double_cover_conjecture_nontrivial_quotient",
            {
                "h_not_locally_trivial": not lt,
                "g>=2gamma+2q_f+1>6gamma+3": q_f is not None
                and g >= 2 * gamma + 2 * q_f + 1 > 6 * gamma + 3,
            },
            conj,
        )
    )
    return out


def general_bounds(profile: BoundsProfile) -> list[SlopeBoundReport]:
    """Bounds that do not assume a double cover structure."""
    g = profile.g
    if g < 2:
        raise ValidationError(f"g={g} must be at least 2")
    q_f = profile.q_f
    out = [_report("slope_inequality", {"not_locally_trivial": True}, Fraction(4 * (g - 1), g))]

    small = q_f is not None and 9 * q_f <= g
    out.append(
        _report(
            "conjecture_small_irregularity",
            {"q_f<=g/9": small},
            conjecture_bound(g, q_f).value if small else None,
        )
    )
    out.append(
        _report(
            "non_double_non_triple",
            {"not_double_cover": profile.double_cover is False, "not_triple_cover": profile.triple_cover is False},
            closed_form_bound(g, "non_triple_nor_double"),
            strict=True,
        )
    )
    out.append(
        _report(
            "non_double",
            {"not_double_cover": profile.double_cover is False},
            closed_form_bound(g, "non_double"),
            strict=True,
        )
    )
    gamma = profile.gamma
    out.append(
        _report(
            "double_gamma_large",
            {
                "double_cover": profile.double_cover is True and gamma is not None,
                "gamma>=g/3": gamma is not None and 3 * gamma >= g,
            },
            closed_form_bound(g, "gamma_ge_g_over_3"),
            strict=True,
        )
    )
    return out


def all_bounds(profile: BoundsProfile) -> list[SlopeBoundReport]:
    out = general_bounds(profile)
    if profile.double_cover and profile.gamma is not None and profile.gamma >= 1:
        out.extend(double_cover_bounds(profile))
    return out


def best_bound(reports: list[SlopeBoundReport]) -> SlopeBoundReport | None:
    """The applicable report with the largest bound (first one on ties)."""
    best = None
    for r in reports:
        if r.hypotheses_met and r.bound is not None and (best is None or r.bound > best.bound):
            best = r
    return best
