from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fibrslope.composite import (
    audit_coefficients,
    castelnuovo_feasible,
    castelnuovo_min_degree,
    degree_class_min_degree,
    closed_form_bound,
)
from fibrslope.errors import ValidationError
from fibrslope.xiao import ImageClass
from oracles import castelnuovo_number


def test_canonical_genus_six_is_extremal():
    assert castelnuovo_feasible(10, 6, 6)
    assert not castelnuovo_feasible(9, 6, 6)


def test_castelnuovo_errors():
    with pytest.raises(ValidationError):
        castelnuovo_feasible(4, 2, 3)
    with pytest.raises(ValidationError):
        castelnuovo_feasible(Fraction(9, 2), 4, 3)


def test_m_zero_is_infeasible():
    assert not castelnuovo_feasible(3, 5, 2)


@given(st.integers(min_value=1, max_value=80), st.integers(min_value=3, max_value=30), st.integers(min_value=0, max_value=60))
def test_feasibility_agrees_with_castelnuovo_genus_bound(d, s, g):
    if d - 1 < s - 2:
        return
    assert castelnuovo_feasible(d, s, g) == (g <= castelnuovo_number(d, s - 1))


@given(st.integers(min_value=3, max_value=40))
def test_canonical_degree_at_full_rank(g):
    assert castelnuovo_min_degree(g, g) == 2 * g - 2


def test_degree_class_examples():
    assert degree_class_min_degree(5, ImageClass.degree_ge4()) == 16
    assert degree_class_min_degree(5, ImageClass.degree_ge4(), before_degree3=True) == 24
    assert degree_class_min_degree(5, ImageClass.degree3(1)) == 15
    assert degree_class_min_degree(5, ImageClass.degree2(3)) == 14
    with pytest.raises(ValidationError):
        degree_class_min_degree(5, ImageClass.birational())
    with pytest.raises(ValidationError):
        degree_class_min_degree(5, ImageClass("unknown"))


def test_closed_form_thresholds():
    assert closed_form_bound(5, "non_triple_nor_double") == Fraction(28, 9)
    assert closed_form_bound(5, "non_double") == Fraction(72, 23)
    assert closed_form_bound(5, "gamma_ge_g_over_3") == Fraction(72, 23)
    assert closed_form_bound(18, "q_small") == Fraction(17, 4)


def test_audit_equality_rows_hold():
    for g in range(6, 41):
        rep = audit_coefficients(g)
        for name in ("two_thirds.top", "two_thirds.penultimate", "half.top"):
            row = rep.row(name)
            assert row.checked == 1 and row.passed, (g, name, row.failures)


def test_audit_g6_top_row_value():
    row = audit_coefficients(6).row("two_thirds.top")
    assert row.passed and row.checked == 1


def test_audit_small_irregularity_rows_for_large_genus():
    for g in (18, 25, 40):
        rep = audit_coefficients(g)
        for name in ("small_irregularity.middle", "small_irregularity.penultimate", "small_irregularity.tail"):
            assert rep.row(name).checked > 0 and rep.row(name).passed


def test_audit_range_is_capped():
    with pytest.raises(ValidationError):
        audit_coefficients(41)
    assert audit_coefficients(45, cap=50).g == 45
