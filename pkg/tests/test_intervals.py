from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tamp1d.intervals import (
    Interval,
    IntervalSet,
    boolean_combine,
    essential_hull,
    hollows_of_set,
    measure,
    symdiff,
)


def iset(*pairs):
    return IntervalSet.from_endpoints(pairs)


class TestConstruction:
    def test_degenerate_interval_rejected(self):
        with pytest.raises(ValueError):
            Interval(1, 1)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            Interval(0.5, 1)

    def test_merge_and_drop(self):
        s = iset((0, 1), (1, 2), (3, 3), (5, 4))
        assert s == iset((0, 2))

    def test_overlap_merge(self):
        assert iset((0, 2), (1, 3)) == iset((0, 3))


class TestMeasure:
    def test_two_parts(self):
        assert measure(iset((0, 1), (2, Fraction(7, 2)))) == Fraction(5, 2)

    def test_empty(self):
        assert measure(IntervalSet.empty()) == 0

    def test_adjacency_merge(self):
        s = iset((0, 1), (1, 2))
        assert len(s.parts) == 1 and measure(s) == 2

    def test_measure_below(self):
        s = iset((0, 1), (2, 4))
        assert s.measure_below(3) == 2
        assert s.measure_below(Fraction(1, 2)) == Fraction(1, 2)
        assert s.measure_below(0) == 0


class TestBooleanOps:
    def test_intersection(self):
        assert boolean_combine(iset((0, 2)), iset((1, 3)), "intersection") == iset((1, 2))

    def test_union_disjoint(self):
        assert boolean_combine(iset((0, 1)), iset((2, 3)), "union") == iset((0, 1), (2, 3))

    def test_difference_splits(self):
        assert boolean_combine(iset((0, 3)), iset((1, 2)), "difference") == iset((0, 1), (2, 3))

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            boolean_combine(iset((0, 1)), iset((0, 1)), "xor")


class TestSymdiff:
    def test_basic(self):
        assert symdiff(iset((0, 2)), iset((1, 3))) == iset((0, 1), (2, 3))

    def test_self_is_empty(self):
        s = iset((0, 1), (2, 3))
        assert symdiff(s, s).is_empty()

    def test_against_empty(self):
        s = iset((0, 1), (4, 6))
        assert symdiff(s, IntervalSet.empty()) == s


class TestHullAndHollows:
    def test_hull_spans(self):
        assert essential_hull(iset((0, 1), (2, 3))) == iset((0, 3))

    def test_hull_empty(self):
        assert essential_hull(IntervalSet.empty()).is_empty()

    def test_null_component_dropped(self):
        assert essential_hull(iset((1, 1), (2, 3))) == iset((2, 3))

    def test_single_gap(self):
        assert hollows_of_set(iset((0, 1), (2, 3))) == iset((1, 2))

    def test_no_gap(self):
        assert hollows_of_set(iset((0, 3))).is_empty()

    def test_two_gaps(self):
        assert hollows_of_set(iset((0, 1), (2, 3), (5, 6))) == iset((1, 2), (3, 5))


# random interval sets via hypothesis

frac = st.fractions(min_value=0, max_value=12, max_denominator=8)
pair = st.tuples(frac, frac)
sets = st.builds(IntervalSet.from_endpoints, st.lists(pair, max_size=6))


@given(sets, sets)
def test_inclusion_exclusion(s, t):
    assert measure(s | t) + measure(s & t) == measure(s) + measure(t)


@given(sets, sets)
def test_symdiff_decomposition(s, t):
    assert s ^ t == (s | t) - (s & t)
    assert s ^ t == t ^ s


@given(sets)
def test_hollows_partition_hull(s):
    h = s.hollows()
    assert (h & s).is_empty()
    assert (h | s) == s.essential_hull() or s.is_empty()
    assert measure(s) + measure(h) == measure(s.essential_hull())


@given(sets, sets)
def test_operations_stay_canonical(s, t):
    for out in (s | t, s & t, s - t, s ^ t, s.hollows(), s.essential_hull()):
        prev_hi = None
        for p in out.parts:
            assert p.lo < p.hi
            if prev_hi is not None:
                assert prev_hi < p.lo
            prev_hi = p.hi
