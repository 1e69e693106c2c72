"""Exact rational scalars.

Every quantity in the library is a :class:`fractions.Fraction`; floats are
never accepted on input. Literals follow ``-?[0-9]+(/[1-9][0-9]*)?``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import ParseError

Rat = Fraction

_LITERAL = re.compile(r"-?[0-9]+(?:/[0-9]+)?")


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal such as ``"-4"`` or ``"22/7"``.

    >>> parse_rational("3/6")
    Fraction(1, 2)
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a rational literal string, got {type(text).__name__}")
    s = text.strip()
    if not _LITERAL.fullmatch(s):
        raise ParseError(f"malformed rational literal {text!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        if den[0] == "0":
            raise ParseError(f"malformed rational literal {text!r} (leading zero in denominator)")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(x: Fraction | int) -> str:
    """Canonical ``p/q`` form, or ``p`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_rat(value: object, *, name: str = "value") -> Fraction:
    """Coerce JSON-ish input (int, literal string, Fraction) to a Fraction.

    Bare integers are promoted; floats and bools are rejected because they
    cannot carry exact data.
    """
    if isinstance(value, bool):
        raise ParseError(f"{name}: booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return parse_rational(value)
        except ParseError as exc:
            raise ParseError(f"{name}: {exc}") from None
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise ParseError(f"{name}: expected an integer or rational string, got {type(value).__name__}")


def as_int(value: object, *, name: str = "value") -> int:
    """Coerce to an integer, accepting integral rationals like ``"6/2"``."""
    x = as_rat(value, name=name)
    if x.denominator != 1:
        raise ParseError(f"{name}: expected an integer, got {format_rational(x)}")
    return x.numerator


def is_integral(x: Fraction) -> bool:
    return Fraction(x).denominator == 1
