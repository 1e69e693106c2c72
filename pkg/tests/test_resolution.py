import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibrslope.double_cover import (
    FiberBranchData,
    SingNode,
    SingularityForest,
    classify_singularities,
    validate_forest,
)
from fibrslope.errors import ValidationError
from oracles import classify_tree_recursive


def forest_of(*roots, n2=0, fid="F"):
    return SingularityForest((FiberBranchData(fid, n2, tuple(roots)),))


def N(m, *kids):
    return SingNode(m, kids)


def test_even_parent_bounds_child():
    with pytest.raises(ValidationError) as exc:
        validate_forest(forest_of(N(4, N(5))))
    msg = exc.value.problems[0]
    assert "fiber F" in msg and "/0/0" in msg and "multiplicity-decrease" in msg


def test_odd_parent_allows_one_more():
    validate_forest(forest_of(N(3, N(4))))
    validate_forest(forest_of(N(2)))
    with pytest.raises(ValidationError):
        validate_forest(forest_of(N(3, N(5))))


def test_duplicate_fiber_and_bad_multiplicity():
    forest = SingularityForest((FiberBranchData("A", 0, (N(1),)), FiberBranchData("A", -1)))
    with pytest.raises(ValidationError) as exc:
        validate_forest(forest)
    assert len(exc.value.problems) == 3


def test_odd_pair():
    idx = classify_singularities(forest_of(N(3, N(4))))
    assert idx.s_odd == {1: 1} and idx.s_even == {} and idx.s2_correction == 0
    assert idx.minus1_curves == 1


def test_five_counts_as_even_index():
    idx = classify_singularities(forest_of(N(5)))
    assert idx.s_even == {2: 1} and idx.s_odd == {}


def test_three_over_three_is_not_a_pair():
    idx = classify_singularities(forest_of(N(3, N(3))))
    assert idx.s2_correction == 4 and idx.s_odd == {}


def test_second_component_children_are_classified():
    idx = classify_singularities(forest_of(N(5, N(6, N(6), N(2))), n2=2))
    assert idx.s_odd == {2: 1}
    assert idx.s_even == {3: 1}
    assert idx.s2_correction == 2
    assert idx.minus1_curves == 3


def test_unpaired_odd_with_siblings_warns():
    idx = classify_singularities(forest_of(N(3, N(4), N(2))))
    assert idx.s_odd == {}
    assert idx.s_even == {2: 1}
    assert len(idx.warnings) == 1


@st.composite
def trees(draw, depth=3):
    m = draw(st.integers(min_value=2, max_value=9))
    if depth == 0:
        return N(m)
    limit = m if m % 2 == 0 else m + 1
    kids = draw(st.lists(st.integers(min_value=2, max_value=limit), max_size=3))
    return SingNode(m, tuple(draw(subtree(k, depth - 1)) for k in kids))


@st.composite
def subtree(draw, m, depth):
    if depth == 0:
        return N(m)
    limit = m if m % 2 == 0 else m + 1
    kids = draw(st.lists(st.integers(min_value=2, max_value=limit), max_size=2))
    return SingNode(m, tuple(draw(subtree(k, depth - 1)) for k in kids))


def as_tuple(node):
    return (node.mult, [as_tuple(c) for c in node.children])


def shuffled(node, rng):
    kids = [shuffled(c, rng) for c in node.children]
    rng.shuffle(kids)
    return SingNode(node.mult, tuple(kids))


@settings(max_examples=200, deadline=None)
@given(st.lists(trees(), max_size=4), st.integers(min_value=0, max_value=5))
def test_matches_recursive_oracle(roots, n2):
    idx = classify_singularities(forest_of(*roots, n2=n2))
    out = {"s2": 0, "odd": {}, "even": {}}
    for r in roots:
        classify_tree_recursive(as_tuple(r), out)
    assert idx.s2_correction == out["s2"]
    assert idx.s_odd == dict(sorted(out["odd"].items()))
    assert idx.s_even == dict(sorted(out["even"].items()))
    assert idx.minus1_curves == n2 + sum(idx.s_odd.values())


@settings(max_examples=100, deadline=None)
@given(st.lists(trees(), max_size=4), st.integers(min_value=0, max_value=2**32))
def test_order_independent(roots, seed):
    rng = random.Random(seed)
    base = classify_singularities(forest_of(*roots))
    perm = [shuffled(r, rng) for r in roots]
    rng.shuffle(perm)
    other = classify_singularities(forest_of(*perm))
    assert (base.s2_correction, base.s_odd, base.s_even) == (other.s2_correction, other.s_odd, other.s_even)


@settings(max_examples=100, deadline=None)
@given(st.lists(trees(), max_size=3), st.lists(trees(), max_size=3))
def test_additive_over_fibers(a, b):
    fa, fb = forest_of(*a, n2=1, fid="A"), forest_of(*b, n2=2, fid="B")
    whole = classify_singularities(fa + fb)
    parts = classify_singularities(fa) + classify_singularities(fb)
    assert whole == parts


def test_from_dict():
    doc = {"fibers": [{"fiber_id": "x", "n2": 1, "singularities": [{"mult": 3, "children": [{"mult": 4}]}]}]}
    idx = classify_singularities(SingularityForest.from_dict(doc))
    assert idx.s_odd == {1: 1} and idx.n2_total == 1
