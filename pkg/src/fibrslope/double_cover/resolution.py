"""Bookkeeping for the canonical resolution of a double-cover branch curve.

Each singular fiber carries trees of infinitely-near singular points of the
branch curve R, labelled by multiplicity. Blowing up a point of
multiplicity m replaces R by its pull-back minus 2[m/2] times the
exceptional curve, so a point of odd multiplicity 2k+1 can leave a single
point of multiplicity 2k+2 on the exceptional curve: the pair is a
singularity of type (2k+1 -> 2k+1).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..errors import ValidationError
from ..numeric import as_int


@dataclass(frozen=True)
class SingNode:
    mult: int
    children: tuple["SingNode", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    @classmethod
    def from_dict(cls, doc: dict) -> "SingNode":
        if "mult" not in doc:
            raise ValidationError("singular point without 'mult'")
        return cls(
            as_int(doc["mult"], name="mult"),
            tuple(cls.from_dict(c) for c in doc.get("children", [])),
        )


@dataclass(frozen=True)
class FiberBranchData:
    fiber_id: str
    n2: int = 0
    roots: tuple[SingNode, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(self.roots))


@dataclass(frozen=True)
class SingularityForest:
    fibers: tuple[FiberBranchData, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple(self.fibers))

    def __add__(self, other: "SingularityForest") -> "SingularityForest":
        return SingularityForest(self.fibers + other.fibers)

    @classmethod
    def from_dict(cls, doc: dict) -> "SingularityForest":
        if "fibers" not in doc:
            raise ValidationError("forest needs key 'fibers'")
        fibers = []
        for idx, f in enumerate(doc["fibers"], start=1):
            fid = f.get("fiber_id", str(idx))
            fibers.append(
                FiberBranchData(
                    fiber_id=str(fid),
                    n2=as_int(f.get("n2", 0), name=f"fiber {fid} n2"),
                    roots=tuple(SingNode.from_dict(s) for s in f.get("singularities", [])),
                )
            )
        return cls(tuple(fibers))


@dataclass(frozen=True)
class SingularIndices:
    s2_correction: int = 0
    s_odd: dict[int, int] = field(default_factory=dict)
    s_even: dict[int, int] = field(default_factory=dict)
    n2_total: int = 0
    warnings: tuple[str, ...] = ()

    @property
    def minus1_curves(self) -> int:
        """(-1)-curves contracted from the resolved fibration: n_2 + sum s_{2k+1}."""
        return self.n2_total + sum(self.s_odd.values())

    def __add__(self, other: "SingularIndices") -> "SingularIndices":
        return SingularIndices(
            s2_correction=self.s2_correction + other.s2_correction,
            s_odd=_clean(Counter(self.s_odd) + Counter(other.s_odd)),
            s_even=_clean(Counter(self.s_even) + Counter(other.s_even)),
            n2_total=self.n2_total + other.n2_total,
            warnings=self.warnings + other.warnings,
        )


def _clean(counts) -> dict[int, int]:
    return {k: v for k, v in sorted(counts.items()) if v}


def validate_forest(forest: SingularityForest) -> None:
    """Check multiplicities and the multiplicity-decrease rule.

    A point infinitely near to one of even multiplicity m has multiplicity
    at most m; near one of odd multiplicity m, at most m+1.
    """
    problems: list[str] = []
    seen: set[str] = set()
    for fiber in forest.fibers:
        if fiber.fiber_id in seen:
            problems.append(f"fiber {fiber.fiber_id}: duplicate fiber_id")
        seen.add(fiber.fiber_id)
        if fiber.n2 < 0:
            problems.append(f"fiber {fiber.fiber_id}: n2={fiber.n2} is negative")
        stack = [(root, f"/{i}") for i, root in enumerate(fiber.roots)]
        while stack:
            node, path = stack.pop()
            if node.mult < 2:
                problems.append(f"fiber {fiber.fiber_id} at {path}: multiplicity {node.mult} < 2")
            limit = node.mult if node.mult % 2 == 0 else node.mult + 1
            for j, child in enumerate(node.children):
                cpath = f"{path}/{j}"
                if child.mult > limit:
                    parity = "even" if node.mult % 2 == 0 else "odd"
                    problems.append(
                        f"fiber {fiber.fiber_id} at {cpath}: multiplicity-decrease rule violated "
                        f"(child {child.mult} under {parity} parent {node.mult}, limit {limit})"
                    )
                stack.append((child, cpath))
    if problems:
        raise ValidationError(sorted(problems))


def _classify_fiber(fiber: FiberBranchData) -> SingularIndices:
    s2 = 0
    s_odd: Counter = Counter()
    s_even: Counter = Counter()
    warnings: list[str] = []
    # (node, is the second point of an odd pair, path)
    stack = [(root, False, f"/{i}") for i, root in enumerate(fiber.roots)]
    while stack:
        node, second, path = stack.pop()
        m = node.mult
        kids = node.children
        if second:
            stack.extend((c, False, f"{path}/{j}") for j, c in enumerate(kids))
            continue
        if m % 2 == 1 and len(kids) == 1 and kids[0].mult == m + 1:
            s_odd[(m - 1) // 2] += 1
            stack.append((kids[0], True, f"{path}/0"))
            continue
        if m % 2 == 1 and len(kids) > 1 and any(c.mult == m + 1 for c in kids):
            warnings.append(
                f"fiber {fiber.fiber_id} at {path}: odd point {m} has a child of multiplicity "
                f"{m + 1} next to other singular points; left unpaired"
            )
        if m in (2, 3):
            s2 += 2
        else:
            s_even[m // 2] += 1
        stack.extend((c, False, f"{path}/{j}") for j, c in enumerate(kids))
    return SingularIndices(
        s2_correction=s2,
        s_odd=_clean(s_odd),
        s_even=_clean(s_even),
        n2_total=fiber.n2,
        warnings=tuple(sorted(warnings)),
    )


def classify_singularities(forest: SingularityForest) -> SingularIndices:
    """Singularity indices of the forest.

    s_{2k+1} counts (2k+1 -> 2k+1) pairs; s_{2k} (k >= 2) counts the other
    points of multiplicity 2k or 2k+1; every remaining point of multiplicity
    2 or 3 adds 2 to ``s2_correction``.
    """
    validate_forest(forest)
    total = SingularIndices()
    for fiber in forest.fibers:
        total = total + _classify_fiber(fiber)
    return total
