"""Exception hierarchy shared by every engine and the CLI."""

from __future__ import annotations


class FibrSlopeError(ValueError):
    """Base class; the CLI maps every subclass to exit code 1."""


class ParseError(FibrSlopeError):
    """Malformed literal or input document."""


class ValidationError(FibrSlopeError):
    """Input violates a structural invariant.

    ``problems`` lists every violation found, not only the first.
    """

    def __init__(self, problems: list[str] | str):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class DegenerateFibrationError(FibrSlopeError):
    """Quantity undefined for a locally trivial fibration (chi_f = 0)."""
