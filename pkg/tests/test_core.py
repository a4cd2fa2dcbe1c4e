import pytest
from hypothesis import given, strategies as st

from gradedabs.core import (
    Carrier,
    GradingGroup,
    StructureError,
    canonical_compare,
    deg_combine,
    deg_invert,
    enumerate_carrier,
    format_element,
    parse_element,
)

orders = st.lists(st.sampled_from([0, 2, 3, 4, 6]), min_size=1, max_size=3)


@st.composite
def group_and_degrees(draw, count=3):
    ords = draw(orders)
    G = GradingGroup(ords)
    degs = [G.degree([draw(st.integers(-20, 20)) for _ in ords]) for _ in range(count)]
    return G, degs


def test_combine_examples():
    assert deg_combine(GradingGroup([2]), (1,), (1,)) == (0,)
    assert deg_combine(GradingGroup([0]), (0,), (1,)) == (1,)
    assert deg_combine(GradingGroup([2, 0]), (1, 2), (1, -2)) == (0, 0)


def test_invert_examples():
    assert deg_invert(GradingGroup([2]), (1,)) == (1,)
    assert deg_invert(GradingGroup([0]), (3,)) == (-3,)
    assert deg_invert(GradingGroup([2, 0]), (1, -4)) == (1, 4)


def test_degree_reduces_finite_coordinates():
    assert GradingGroup([3, 0]).degree([7, -7]) == (1, -7)


def test_mismatched_degree_rejected():
    with pytest.raises(StructureError):
        deg_combine(GradingGroup([2]), (1,), (1, 0))


@given(group_and_degrees())
def test_group_axioms(data):
    G, (g, h, k) = data
    e = G.identity
    assert G.combine(g, e) == g
    assert G.combine(g, h) == G.combine(h, g)
    assert G.combine(G.combine(g, h), k) == G.combine(g, G.combine(h, k))
    assert G.combine(g, G.invert(g)) == e


def test_enumeration_examples():
    assert enumerate_carrier(Carrier([2]), 5) == [(0,), (1,)]
    assert enumerate_carrier(Carrier([0]), 2) == [(0,), (1,), (-1,), (2,), (-2,)]
    elems = enumerate_carrier(Carrier([0, 6]), 1)
    assert len(elems) == 18
    assert elems[:3] == [(0, 0), (0, 1), (0, 2)]


def test_compare_examples():
    Z = Carrier([0])
    assert canonical_compare(Z, (2,), (-2,)) == -1
    assert canonical_compare(Z, (6,), (2,)) == 1
    assert canonical_compare(Carrier([0, 6]), (0, 3), (1, 0)) == -1
    with pytest.raises(StructureError):
        canonical_compare(Z, (1,), (1, 0))


@given(orders, st.integers(1, 3))
def test_enumeration_is_sorted_and_complete(ords, bound):
    C = Carrier(ords)
    elems = enumerate_carrier(C, bound)
    assert len(set(elems)) == len(elems)
    expected = 1
    for d in ords:
        expected *= d if d else 2 * bound + 1
    assert len(elems) == expected
    for x, y in zip(elems, elems[1:]):
        assert canonical_compare(C, x, y) == -1


@given(orders, st.data())
def test_compare_is_a_total_order(ords, data):
    C = Carrier(ords)
    pick = st.tuples(*[st.integers(-9, 9) for _ in ords]).map(C.reduce)
    x, y, z = data.draw(pick), data.draw(pick), data.draw(pick)
    assert canonical_compare(C, x, y) == -canonical_compare(C, y, x)
    assert (canonical_compare(C, x, y) == 0) == (x == y)
    if canonical_compare(C, x, y) <= 0 and canonical_compare(C, y, z) <= 0:
        assert canonical_compare(C, x, z) <= 0


def test_parse_and_format_roundtrip():
    assert parse_element("6") == (6,)
    assert parse_element("(0,1)") == (0, 1)
    assert parse_element("[0, -1]") == (0, -1)
    assert format_element((6,)) == "6"
    assert format_element((0, 1)) == "(0,1)"
