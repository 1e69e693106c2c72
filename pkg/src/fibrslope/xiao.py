"""Harder-Narasimhan data and Xiao-type lower bounds for omega_f^2.

A profile is the list of pieces (r_i, mu_i, d_i) of the H-N filtration of
f_* omega_f together with the type of the map each piece induces on a
general fiber. Conventions at the end of the filtration: mu_{n+1} = 0 and
d_{n+1} = 2g - 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import ValidationError
from .numeric import as_int, as_rat

IMAGE_KINDS = ("birational", "degree2", "degree3", "degree_ge4", "unknown")
_MAP_DEGREE = {"birational": 1, "degree2": 2, "degree3": 3, "degree_ge4": 4}

WEIGHT_GRID = tuple(
    Fraction(x) for x in ("0", "1/4", "1/3", "1/2", "2/3", "3/4", "1")
)


@dataclass(frozen=True)
class ImageClass:
    """Type of the map a piece of the filtration induces on a general fiber.

    ``param`` carries the image genus: gamma for degree2, g_im for degree3.
    """

    kind: str
    param: int | None = None

    def __post_init__(self):
        if self.kind not in IMAGE_KINDS:
            raise ValidationError(f"unknown image class {self.kind!r}")
        if self.kind in ("degree2", "degree3"):
            if self.param is None:
                raise ValidationError(f"image class {self.kind} needs an image genus")
            if self.param < 0:
                raise ValidationError(f"image genus {self.param} must be non-negative")

    @property
    def map_degree(self) -> int | None:
        return _MAP_DEGREE.get(self.kind)

    @classmethod
    def birational(cls) -> "ImageClass":
        return cls("birational")

    @classmethod
    def degree2(cls, gamma: int) -> "ImageClass":
        return cls("degree2", gamma)

    @classmethod
    def degree3(cls, g_im: int) -> "ImageClass":
        return cls("degree3", g_im)

    @classmethod
    def degree_ge4(cls) -> "ImageClass":
        return cls("degree_ge4")


@dataclass(frozen=True)
class HNPart:
    r: int
    mu: Fraction
    d: Fraction
    image: ImageClass = field(default_factory=lambda: ImageClass("unknown"))


@dataclass(frozen=True)
class HNData:
    g: int
    parts: tuple[HNPart, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def n(self) -> int:
        return len(self.parts)

    def mu(self, i: int) -> Fraction:
        """mu_i for 1-based i, with mu_{n+1} = 0."""
        return Fraction(0) if i == self.n + 1 else Fraction(self.parts[i - 1].mu)

    def d(self, i: int) -> Fraction:
        """d_i for 1-based i, with d_{n+1} = 2g - 2."""
        return Fraction(2 * self.g - 2) if i == self.n + 1 else Fraction(self.parts[i - 1].d)

    @classmethod
    def from_dict(cls, doc: dict) -> "HNData":
        if "g" not in doc or "parts" not in doc:
            raise ValidationError("HN profile needs keys 'g' and 'parts'")
        parts = []
        for idx, p in enumerate(doc["parts"], start=1):
            missing = [k for k in ("r", "mu", "d") if k not in p]
            if missing:
                raise ValidationError([f"part {idx}: missing key {k!r}" for k in missing])
            kind = p.get("class", "unknown")
            params = p.get("class_params") or {}
            param = None
            if kind == "degree2":
                param = params.get("gamma")
            elif kind == "degree3":
                param = params.get("g_im")
            parts.append(
                HNPart(
                    r=as_int(p["r"], name=f"part {idx} r"),
                    mu=as_rat(p["mu"], name=f"part {idx} mu"),
                    d=as_rat(p["d"], name=f"part {idx} d"),
                    image=ImageClass(kind, None if param is None else as_int(param, name=f"part {idx} class_params")),
                )
            )
        return cls(g=as_int(doc["g"], name="g"), parts=tuple(parts))


class XiaoResult(NamedTuple):
    bound: Fraction
    subsequence: tuple[int, ...]


@dataclass(frozen=True)
class SubsheafPoint:
    r_tilde: int
    mu_tilde: Fraction


def validate_hn(hn: HNData) -> None:
    """Raise ValidationError listing every violated invariant of the profile."""
    problems: list[str] = []
    g = hn.g
    if g < 2:
        problems.append(f"g={g} must be at least 2")
    if hn.n == 0:
        raise ValidationError(problems + ["profile has no parts"])
    parts = hn.parts
    if parts[0].r < 1:
        problems.append(f"part 1: rank {parts[0].r} must be positive")
    for i in range(1, hn.n):
        if parts[i].r <= parts[i - 1].r:
            problems.append(f"part {i + 1}: ranks not strictly increasing ({parts[i - 1].r} then {parts[i].r})")
        if parts[i].mu >= parts[i - 1].mu:
            problems.append(f"part {i + 1}: slopes not decreasing ({parts[i - 1].mu} then {parts[i].mu})")
        if parts[i].d < parts[i - 1].d:
            problems.append(f"part {i + 1}: d not nondecreasing ({parts[i - 1].d} then {parts[i].d})")
    if parts[-1].r != g:
        problems.append(f"part {hn.n}: last rank {parts[-1].r} must equal g={g}")
    if parts[-1].mu < 0:
        problems.append(f"part {hn.n}: last slope {parts[-1].mu} is negative")
    if parts[-1].d > 2 * g - 2:
        problems.append(f"part {hn.n}: d={parts[-1].d} exceeds 2g-2={2 * g - 2}")
    for i, p in enumerate(parts, start=1):
        if p.d < 0:
            problems.append(f"part {i}: d={p.d} is negative")
    # the induced maps factor through later ones, so degrees can only drop
    last_deg = None
    last_idx = 0
    for i, p in enumerate(parts, start=1):
        deg = p.image.map_degree
        if deg is None:
            continue
        if last_deg is not None and deg > last_deg:
            problems.append(
                f"part {i}: image class {p.image.kind} after {parts[last_idx - 1].image.kind} "
                "(map degree must be non-increasing)"
            )
        last_deg, last_idx = deg, i
    if problems:
        raise ValidationError(problems)


def chi_from_hn(hn: HNData) -> Fraction:
    validate_hn(hn)
    return sum(
        (p.r * (hn.mu(i) - hn.mu(i + 1)) for i, p in enumerate(hn.parts, start=1)),
        Fraction(0),
    )


def _xiao_value(hn: HNData, seq: Sequence[int]) -> Fraction:
    idx = list(seq) + [hn.n + 1]
    total = Fraction(0)
    for a, b in zip(idx, idx[1:]):
        total += (hn.d(a) + hn.d(b)) * (hn.mu(a) - hn.mu(b))
    return total


def xiao_bound(hn: HNData, subsequence: Iterable[int] | None = None) -> XiaoResult:
    """Lower bound sum (d_a + d_b)(mu_a - mu_b) over consecutive chosen indices.

    With a subsequence (1-based, strictly increasing) it is evaluated as given.
    Without one, the maximum over all nonempty subsequences is found by a
    dynamic program over the first chosen index; among maximizers the
    lexicographically smallest subsequence is returned.
    """
    validate_hn(hn)
    n = hn.n
    if subsequence is not None:
        seq = tuple(subsequence)
        if not seq:
            raise ValidationError("subsequence must be nonempty")
        bad = [i for i in seq if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= n]
        if bad:
            raise ValidationError(f"subsequence indices {bad} outside [1, {n}]")
        if any(b <= a for a, b in zip(seq, seq[1:])):
            raise ValidationError(f"subsequence {list(seq)} is not strictly increasing")
        return XiaoResult(_xiao_value(hn, seq), seq)

    # best[i]: maximal contribution of a chain starting at i and ending at n+1
    best: list[Fraction | None] = [None] * (n + 2)
    nxt = [0] * (n + 2)
    best[n + 1] = Fraction(0)
    for i in range(n, 0, -1):
        # stopping right away gives the shortest tail, which sorts first
        top = (hn.d(i) + hn.d(n + 1)) * (hn.mu(i) - hn.mu(n + 1))
        choice = n + 1
        for j in range(i + 1, n + 1):
            v = (hn.d(i) + hn.d(j)) * (hn.mu(i) - hn.mu(j)) + best[j]
            if v > top:
                top, choice = v, j
        best[i], nxt[i] = top, choice
    start = max(range(1, n + 1), key=lambda i: (best[i], -i))
    seq = []
    i = start
    while i != n + 1:
        seq.append(i)
        i = nxt[i]
    return XiaoResult(best[start], tuple(seq))


def staircase_bound(points: Sequence[SubsheafPoint], g: int | None = None) -> Fraction:
    """sum r~_i (mu~_i - mu~_{i+1}) with mu~_{k+1} = 0.

    A lower bound for omega_f^2 + chi_f when the points come from subsheaves
    of f_* omega_f^{(x)2}. With ``g`` given, ranks are capped at 3g - 3.
    """
    if not points:
        raise ValidationError("staircase needs at least one point")
    problems = []
    for i, p in enumerate(points, start=1):
        if p.r_tilde < 1:
            problems.append(f"point {i}: rank {p.r_tilde} must be positive")
        if g is not None and p.r_tilde > 3 * g - 3:
            problems.append(f"point {i}: rank {p.r_tilde} exceeds 3g-3={3 * g - 3}")
    for i in range(1, len(points)):
        if points[i].r_tilde <= points[i - 1].r_tilde:
            problems.append(f"point {i + 1}: r~ not strictly increasing")
        if points[i].mu_tilde >= points[i - 1].mu_tilde:
            problems.append(f"point {i + 1}: mu~ not strictly decreasing")
    if points[-1].mu_tilde < 0:
        problems.append(f"point {len(points)}: mu~ is negative")
    if problems:
        raise ValidationError(problems)
    mus = [Fraction(p.mu_tilde) for p in points] + [Fraction(0)]
    return sum((p.r_tilde * (mus[i] - mus[i + 1]) for i, p in enumerate(points)), Fraction(0))


def multiplication_rank_bound(r: int, g0: int, birational: bool) -> int:
    """Lower bound on the rank of the image of Sym^2 E_i -> f_* omega_f^2.

    3(r-1) for a birational map, min{3(r-1), 2r+g0-1} otherwise, and never
    below 2r-1.
    """
    if r < 1:
        raise ValidationError(f"rank r={r} must be positive")
    if g0 < 0:
        raise ValidationError(f"g0={g0} must be non-negative")
    value = 3 * (r - 1) if birational else min(3 * (r - 1), 2 * r + g0 - 1)
    return max(value, 2 * r - 1)


def image_genus(image: ImageClass) -> int:
    if image.kind in ("degree2", "degree3"):
        return image.param
    return 0


def multiplication_points(hn: HNData) -> list[int]:
    """Per-index rank bounds rho_i used by the second multiplication map."""
    out = []
    for i, p in enumerate(hn.parts, start=1):
        if p.image.kind == "unknown":
            raise ValidationError(f"part {i}: image class unknown")
        out.append(multiplication_rank_bound(p.r, image_genus(p.image), p.image.kind == "birational"))
    return out


def multiplication_part(hn: HNData) -> Fraction:
    """sum (2 rho_i - r_i)(mu_i - mu_{i+1}).

    Equals the staircase of (rho_i, 2 mu_i) minus chi_f, i.e. the bound on
    omega_f^2 coming from the multiplication map.
    """
    validate_hn(hn)
    rho = multiplication_points(hn)
    return sum(
        ((2 * rho[i - 1] - p.r) * (hn.mu(i) - hn.mu(i + 1)) for i, p in enumerate(hn.parts, start=1)),
        Fraction(0),
    )


def combined_bound(hn: HNData, weight: Fraction, subsequence: Iterable[int] | None = None) -> Fraction:
    """weight * multiplication part + (1 - weight) * Xiao bound.

    The Xiao part uses the full sequence 1..n unless a subsequence is given.
    """
    weight = Fraction(weight)
    if not 0 <= weight <= 1:
        raise ValidationError(f"weight {weight} outside [0, 1]")
    validate_hn(hn)
    mult = multiplication_part(hn)
    seq = tuple(range(1, hn.n + 1)) if subsequence is None else tuple(subsequence)
    xiao = xiao_bound(hn, seq).bound
    return weight * mult + (1 - weight) * xiao


class CombinedOptimum(NamedTuple):
    bound: Fraction
    weight: Fraction
    subsequence: tuple[int, ...]


def optimize_combined(hn: HNData, grid: Sequence[Fraction] = WEIGHT_GRID) -> CombinedOptimum:
    """Best convex mix over the weight grid and over Xiao subsequences.

    Ties go to the first weight in grid order.
    """
    validate_hn(hn)
    mult = multiplication_part(hn)
    xiao = xiao_bound(hn)
    best = None
    for w in grid:
        w = Fraction(w)
        if not 0 <= w <= 1:
            raise ValidationError(f"weight {w} outside [0, 1]")
        v = w * mult + (1 - w) * xiao.bound
        if best is None or v > best.bound:
            best = CombinedOptimum(v, w, xiao.subsequence)
    return best
