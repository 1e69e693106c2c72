from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fibrslope.errors import ParseError
from fibrslope.numeric import as_int, as_rat, format_rational, parse_rational

rationals = st.fractions()


@pytest.mark.parametrize(
    "text, value",
    [("3/6", Fraction(1, 2)), ("-4", Fraction(-4)), ("22/7", Fraction(22, 7)), ("0", Fraction(0)), ("-0/5", Fraction(0))],
)
def test_parse_examples(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("x, text", [(Fraction(1, 2), "1/2"), (Fraction(-4), "-4"), (Fraction(0), "0")])
def test_format_examples(x, text):
    assert format_rational(x) == text


@pytest.mark.parametrize("text", ["", "1.5", "+3", "1/", "/2", "1/-2", "a", "1/02", "1 /2", "--1"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_zero_denominator_is_its_own_error():
    with pytest.raises(ParseError, match="zero denominator"):
        parse_rational("3/0")


@given(rationals)
def test_format_then_parse_is_identity(x):
    assert parse_rational(format_rational(x)) == x


@given(st.integers(), st.integers(min_value=1, max_value=10**6))
def test_parse_then_format_canonicalizes(p, q):
    x = parse_rational(f"{p}/{q}")
    assert format_rational(x) == format_rational(Fraction(p, q))
    assert x.denominator > 0


@given(rationals, rationals, rationals)
def test_field_axioms_exact(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b != 0:
        assert (a / b) * b == a


def test_as_rat_rejects_floats_and_bools():
    with pytest.raises(ParseError):
        as_rat(0.5)
    with pytest.raises(ParseError):
        as_rat(True)
    assert as_rat(7) == 7
    assert as_rat("7/2") == Fraction(7, 2)


def test_as_int_accepts_integral_rationals_only():
    assert as_int("6/2") == 3
    with pytest.raises(ParseError):
        as_int("5/2")
