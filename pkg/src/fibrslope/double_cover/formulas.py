"""Invariants of a double cover fibration of type (g, gamma).

f: X -> B factors through a degree-2 map onto a genus-gamma fibration
h: Y -> B with branch curve R. Writing c = 2g + 1 - 3*gamma and
W = omega_h^2 / (gamma - 1) (W = 0 when gamma = 1):

    c omega_f^2 = x W + y T + z s2 + sum a_k s_{2k+1} + sum b_k s_{2k}
    c chi_f     = xb W + 2c chi_h + yb T + zb s2 - (c/4) n2
                  + sum ab_k s_{2k+1} + sum bb_k s_{2k}
    e_f         = 2 e_h + s2 - 3 n2 + sum s_{2k+1} + 2 sum s_{2k}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from ..errors import ValidationError
from ..invariants import FibrationInvariants
from ..numeric import as_int, as_rat
from .resolution import SingularIndices


@dataclass(frozen=True)
class DoubleCoverData:
    g: int
    gamma: int
    omega_h2: Fraction
    chi_h: Fraction
    e_h: Fraction
    T: Fraction
    n2: int = 0
    s2: Fraction = Fraction(0)
    s_odd: dict[int, int] = field(default_factory=dict)
    s_even: dict[int, int] = field(default_factory=dict)
    q_pi: int | None = None

    @property
    def c(self) -> int:
        return 2 * self.g + 1 - 3 * self.gamma

    @property
    def W(self) -> Fraction:
        """omega_h^2 / (gamma - 1), taken to be 0 when gamma = 1."""
        if self.gamma == 1:
            return Fraction(0)
        return Fraction(self.omega_h2) / (self.gamma - 1)

    @classmethod
    def from_dict(cls, doc: dict) -> "DoubleCoverData":
        missing = [k for k in ("g", "gamma", "omega_h2", "chi_h", "e_h", "T") if k not in doc]
        if missing:
            raise ValidationError([f"missing key {k!r}" for k in missing])

        def counts(key: str) -> dict[int, int]:
            raw = doc.get(key) or {}
            return {as_int(k, name=f"{key} key"): as_int(v, name=f"{key}[{k}]") for k, v in raw.items()}

        q = doc.get("q_pi")
        return cls(
            g=as_int(doc["g"], name="g"),
            gamma=as_int(doc["gamma"], name="gamma"),
            omega_h2=as_rat(doc["omega_h2"], name="omega_h2"),
            chi_h=as_rat(doc["chi_h"], name="chi_h"),
            e_h=as_rat(doc["e_h"], name="e_h"),
            T=as_rat(doc["T"], name="T"),
            n2=as_int(doc.get("n2", 0), name="n2"),
            s2=as_rat(doc.get("s2", 0), name="s2"),
            s_odd=counts("s_odd"),
            s_even=counts("s_even"),
            q_pi=None if q is None else as_int(q, name="q_pi"),
        )


def _check_type(g: int, gamma: int) -> list[str]:
    problems = []
    if g < 2:
        problems.append(f"g={g} must be at least 2")
    if gamma < 1:
        problems.append(f"gamma={gamma} must be positive")
    if 2 * g + 2 - 4 * gamma < 0:
        problems.append(f"Hurwitz bound violated: 2g+2-4*gamma = {2 * g + 2 - 4 * gamma} < 0")
    return problems


def validate_double_cover(data: DoubleCoverData) -> None:
    problems = _check_type(data.g, data.gamma)
    if data.T < 0:
        problems.append(f"T={data.T} must be non-negative")
    if 12 * data.chi_h != data.omega_h2 + data.e_h:
        problems.append("quotient fibration violates 12 chi_h = omega_h^2 + e_h")
    if data.gamma == 1 and data.omega_h2 != 0:
        problems.append("gamma = 1 needs omega_h^2 = 0 (elliptic quotient fibration)")
    if data.n2 < 0:
        problems.append(f"n2={data.n2} is negative")
    for k, v in data.s_odd.items():
        if k < 1:
            problems.append(f"s_odd key {k} must be at least 1")
        if v < 0:
            problems.append(f"s_{2 * k + 1}={v} is negative")
    for k, v in data.s_even.items():
        if k < 2:
            problems.append(f"s_even key {k} must be at least 2")
        if v < 0:
            problems.append(f"s_{2 * k}={v} is negative")
    if data.q_pi is not None and data.q_pi < 0:
        problems.append(f"q_pi={data.q_pi} is negative")
    if not problems and not branch_positivity_check(data):
        problems.append("T + (gamma-1)(s2 + sum 4k(2k+1)s_{2k+1} + sum 2k(2k-1)s_{2k}) < 0")
    if problems:
        raise ValidationError(problems)


@dataclass(frozen=True)
class CoefficientSet:
    g: int
    gamma: int

    @property
    def c(self) -> int:
        return 2 * self.g + 1 - 3 * self.gamma

    @property
    def x(self) -> Fraction:
        return Fraction((3 * self.g + 1 - 4 * self.gamma) * (self.g - 1), 2)

    y = Fraction(3, 2)

    @property
    def z(self) -> Fraction:
        return Fraction(self.g - 1)

    @property
    def x_bar(self) -> Fraction:
        return Fraction((self.g + 1 - 2 * self.gamma) ** 2, 8)

    y_bar = Fraction(1, 8)

    @property
    def z_bar(self) -> Fraction:
        return Fraction(self.g - self.gamma, 4)

    def a_bar(self, k: int) -> Fraction:
        return Fraction(k * (self.g - 1 + (k - 1) * (self.gamma - 1)))

    def b_bar(self, k: int) -> Fraction:
        return Fraction(k * (self.g - 1 + (k - 2) * (self.gamma - 1)), 2)

    def a(self, k: int) -> Fraction:
        return 12 * self.a_bar(k) - self.c

    def b(self, k: int) -> Fraction:
        return 12 * self.b_bar(k) - 2 * self.c


def coefficients(g: int, gamma: int) -> CoefficientSet:
    problems = _check_type(g, gamma)
    if problems:
        raise ValidationError(problems)
    return CoefficientSet(g, gamma)


def compute_T(g: int, gamma: int, omega_h2, omega_h_dot_R, R2, n2) -> Fraction:
    """Hodge-index defect of (g+1-2gamma) omega_h - (gamma-1) R.

    For gamma = 1 it is 2(g-1) omega_h.R.
    """
    if gamma < 1:
        raise ValidationError(f"gamma={gamma} must be positive")
    wR = Fraction(omega_h_dot_R)
    if gamma == 1:
        return 2 * (g - 1) * wR
    u = g + 1 - 2 * gamma
    v = gamma - 1
    square = u * u * Fraction(omega_h2) - 2 * u * v * wR + v * v * Fraction(R2)
    return -square / v - 2 * v * Fraction(n2)


def s2_from_geometry(omega_h_dot_R, R2, indices: SingularIndices) -> Fraction:
    """s2 from (omega_h + R).R and the higher singularity indices."""
    s = Fraction(omega_h_dot_R) + Fraction(R2) + 2 * indices.n2_total
    s -= sum(4 * k * (2 * k + 1) * v for k, v in indices.s_odd.items())
    s -= sum(2 * k * (2 * k - 1) * v for k, v in indices.s_even.items())
    return s


def invariants_from_double_cover(data: DoubleCoverData) -> FibrationInvariants:
    validate_double_cover(data)
    co = CoefficientSet(data.g, data.gamma)
    c = co.c
    if c <= 0:
        raise ValidationError(f"2g+1-3*gamma = {c} must be positive")
    W, T, s2, n2 = data.W, Fraction(data.T), Fraction(data.s2), data.n2
    odd, even = data.s_odd, data.s_even

    omega = co.x * W + co.y * T + co.z * s2
    omega += sum(co.a(k) * v for k, v in odd.items())
    omega += sum(co.b(k) * v for k, v in even.items())

    chi = co.x_bar * W + 2 * c * Fraction(data.chi_h) + co.y_bar * T + co.z_bar * s2
    chi -= Fraction(c, 4) * n2
    chi += sum(co.a_bar(k) * v for k, v in odd.items())
    chi += sum(co.b_bar(k) * v for k, v in even.items())

    e = 2 * Fraction(data.e_h) + s2 - 3 * n2 + sum(odd.values()) + 2 * sum(even.values())
    return FibrationInvariants(g=data.g, omega2=omega / c, chi=chi / c, e=e, q_f=None)


class Term(NamedTuple):
    name: str
    coefficient: Fraction
    quantity: Fraction

    @property
    def value(self) -> Fraction:
        return self.coefficient * self.quantity


@dataclass(frozen=True)
class TermBreakdown:
    lam: Fraction
    terms: tuple[Term, ...]

    @property
    def total(self) -> Fraction:
        return sum((t.value for t in self.terms), Fraction(0))

    def coefficient(self, name: str) -> Fraction:
        for t in self.terms:
            if t.name == name:
                return t.coefficient
        raise KeyError(name)


def lambda_coefficients(g: int, gamma: int, lam, k_max: int) -> dict[str, Fraction]:
    """Coefficients of c (omega_f^2 - lam chi_f) in each input quantity, for k <= k_max."""
    co = coefficients(g, gamma)
    lam = Fraction(lam)
    c = co.c
    out = {
        "W": co.x - co.x_bar * lam,
        "chi_h": -2 * c * lam,
        "T": (12 - lam) / 8,
        "s2": (4 * (g - 1) - (g - gamma) * lam) / 4,
        "n2": c * lam / 4,
    }
    for k in range(1, k_max + 1):
        out[f"s{2 * k + 1}"] = (12 - lam) * co.a_bar(k) - c
    for k in range(2, k_max + 1):
        out[f"s{2 * k}"] = (12 - lam) * co.b_bar(k) - 2 * c
    return out


def lambda_decomposition(data: DoubleCoverData, lam) -> TermBreakdown:
    """Split c (omega_f^2 - lam chi_f) into one term per input quantity."""
    validate_double_cover(data)
    lam = Fraction(lam)
    k_max = max([1, *data.s_odd.keys(), *data.s_even.keys()])
    coeff = lambda_coefficients(data.g, data.gamma, lam, k_max)
    terms = [
        Term("W", coeff["W"], data.W),
        Term("chi_h", coeff["chi_h"], Fraction(data.chi_h)),
        Term("T", coeff["T"], Fraction(data.T)),
        Term("s2", coeff["s2"], Fraction(data.s2)),
        Term("n2", coeff["n2"], Fraction(data.n2)),
    ]
    for k in sorted(data.s_odd):
        terms.append(Term(f"s{2 * k + 1}", coeff[f"s{2 * k + 1}"], Fraction(data.s_odd[k])))
    for k in sorted(data.s_even):
        terms.append(Term(f"s{2 * k}", coeff[f"s{2 * k}"], Fraction(data.s_even[k])))
    return TermBreakdown(lam, tuple(terms))


@dataclass(frozen=True)
class IrregularCoefficients:
    """Coefficients left after eliminating s2 against the irregularity
    constraint at lam = lambda_threshold(g, gamma, q_pi)."""

    lam: Fraction
    xi: dict[int, Fraction]  # 1 <= k <= q_pi - 1
    eta: dict[int, Fraction]  # 2 <= k <= q_pi
    mu: dict[int, Fraction]  # q_pi <= k <= k_max
    nu: dict[int, Fraction]  # q_pi + 1 <= k <= k_max
    mu_floor: Fraction  # closed form of mu_{q_pi}


def irregular_coefficients(g: int, gamma: int, q_pi: int, k_max: int = 20) -> IrregularCoefficients:
    from .bounds import lambda_threshold

    u = g + 1 - 2 * gamma
    if u == 0:
        raise ValidationError("g+1-2*gamma = 0: the coefficient list divides by zero")
    if q_pi < 1:
        raise ValidationError(f"q_pi={q_pi} must be positive")
    lam = lambda_threshold(g, gamma, q_pi)
    xi = {k: k * k * lam - (2 * k - 1) ** 2 for k in range(1, q_pi)}
    eta = {k: Fraction(k - 1) * (k * lam - 4 * (k - 1)) / 2 for k in range(2, q_pi + 1)}
    mu = {
        k: ((4 * k * (g - 1) + (2 * k - 1) ** 2 * (gamma - 1)) * (8 - lam) - u * lam) / (4 * u)
        for k in range(q_pi, max(k_max, q_pi) + 1)
    }
    nu = {
        k: (k * (g - 1 + (k - 2) * (gamma - 1)) * (8 - lam) - 4 * u) / (2 * u)
        for k in range(q_pi + 1, max(k_max, q_pi + 1) + 1)
    }
    mu_floor = Fraction(2 * (q_pi - 1), q_pi + 1) + Fraction(
        g - gamma, (q_pi + 1) * (g - 1 + (q_pi - 1) * (gamma - 1))
    )
    return IrregularCoefficients(lam, xi, eta, mu, nu, mu_floor)


class ConstraintVerdict(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    satisfied: bool

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs


def irregular_constraint(data: DoubleCoverData, mode: str = "positive_qpi", g_prime: int | None = None) -> ConstraintVerdict:
    """Necessary inequality on the indices of an irregular double cover.

    ``positive_qpi``: q_pi > 0. ``image_genus``: the Albanese-type image
    J_0 is a curve of genus g_prime >= 1; singular points of index below
    g_prime move to the left-hand side.
    """
    co = CoefficientSet(data.g, data.gamma)
    u = data.g + 1 - 2 * data.gamma
    if mode == "positive_qpi":
        gp = 1
    elif mode == "image_genus":
        if g_prime is None or g_prime < 1:
            raise ValidationError("image_genus mode needs g_prime >= 1")
        gp = g_prime
    else:
        raise ValidationError(f"unknown mode {mode!r}")
    left = Fraction(data.s2)
    left += sum(4 * (2 * k + 1) * k * v for k, v in data.s_odd.items() if k <= gp - 1)
    left += sum(2 * (2 * k - 1) * k * v for k, v in data.s_even.items() if k <= gp)
    lhs = 2 * u * left
    rhs = u * u * data.W + Fraction(data.T)
    rhs += sum(2 * (4 * co.a_bar(k) + co.c) * v for k, v in data.s_odd.items() if k >= gp)
    rhs += sum(8 * co.b_bar(k) * v for k, v in data.s_even.items() if k >= gp + 1)
    return ConstraintVerdict(lhs, rhs, lhs <= rhs)


def branch_positivity_check(data: DoubleCoverData) -> bool:
    """T + (gamma-1)(s2 + sum 4k(2k+1) s_{2k+1} + sum 2k(2k-1) s_{2k}) >= 0."""
    inner = Fraction(data.s2)
    inner += sum(4 * k * (2 * k + 1) * v for k, v in data.s_odd.items())
    inner += sum(2 * k * (2 * k - 1) * v for k, v in data.s_even.items())
    return Fraction(data.T) + (data.gamma - 1) * inner >= 0
