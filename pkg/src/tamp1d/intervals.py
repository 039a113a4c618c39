"""Exact arithmetic on finite unions of intervals of the half-line.

Endpoints are exact rationals (``int`` or ``fractions.Fraction``); floats are
rejected so that chained measure arithmetic never accumulates rounding error.
Sets are identified up to null sets: degenerate intervals are dropped and
touching intervals are merged, so every ``IntervalSet`` is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[int, Fraction]


def _check_rational(x, what: str = "endpoint") -> Rational:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"{what} must be an int or Fraction, got {type(x).__name__}")
    return x


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] of positive length."""

    lo: Rational
    hi: Rational

    def __post_init__(self):
        _check_rational(self.lo)
        _check_rational(self.hi)
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Rational:
        return self.hi - self.lo

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class IntervalSet:
    """Canonical finite disjoint union of positive-length intervals.

    ``parts`` is sorted by left endpoint; consecutive parts are separated by
    gaps of strictly positive length (adjacent input intervals get merged).
    """

    parts: tuple

    def __post_init__(self):
        prev_hi = None
        for part in self.parts:
            if not isinstance(part, Interval):
                raise TypeError("parts must be Interval instances")
            if prev_hi is not None and not prev_hi < part.lo:
                raise ValueError("parts must be sorted and separated by gaps")
            prev_hi = part.hi

    @classmethod
    def from_endpoints(cls, pairs: Iterable[tuple]) -> "IntervalSet":
        """Build the canonical set from arbitrary (lo, hi) pairs.

        Pairs with lo >= hi are dropped; overlapping or touching pairs merge.
        """
        cleaned = []
        for lo, hi in pairs:
            _check_rational(lo)
            _check_rational(hi)
            if lo < hi:
                cleaned.append((lo, hi))
        cleaned.sort()
        merged = []
        for lo, hi in cleaned:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        return cls(tuple(Interval(lo, hi) for lo, hi in merged))

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def single(cls, lo, hi) -> "IntervalSet":
        return cls.from_endpoints([(lo, hi)])

    def is_empty(self) -> bool:
        return not self.parts

    def measure(self) -> Rational:
        return sum((p.length for p in self.parts), 0)

    def measure_below(self, x: Rational) -> Rational:
        """Measure of the intersection with [0, x] (equivalently (-inf, x])."""
        total = 0
        for p in self.parts:
            if p.lo >= x:
                break
            total += min(p.hi, x) - p.lo
        return total

    def contains_point(self, x: Rational) -> bool:
        return any(p.lo <= x <= p.hi for p in self.parts)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.from_endpoints(
            [(p.lo, p.hi) for p in self.parts] + [(p.lo, p.hi) for p in other.parts]
        )

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        a, b = self.parts, other.parts
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo < hi:
                out.append((lo, hi))
            if a[i].hi <= b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalSet.from_endpoints(out)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for p in self.parts:
            lo = p.lo
            for q in other.parts:
                if q.hi <= lo:
                    continue
                if q.lo >= p.hi:
                    break
                if q.lo > lo:
                    out.append((lo, q.lo))
                lo = max(lo, q.hi)
                if lo >= p.hi:
                    break
            if lo < p.hi:
                out.append((lo, p.hi))
        return IntervalSet.from_endpoints(out)

    def symmetric_difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.union(other).difference(self.intersection(other))

    def essential_hull(self) -> "IntervalSet":
        """Smallest single interval containing the set, empty for the empty set.

        Null components were already dropped at construction, so the span of
        the canonical parts is the hull up to null sets.
        """
        if not self.parts:
            return IntervalSet.empty()
        return IntervalSet.single(self.parts[0].lo, self.parts[-1].hi)

    def hollows(self) -> "IntervalSet":
        """Interior gaps: essential hull minus the set itself."""
        gaps = []
        for left, right in zip(self.parts, self.parts[1:]):
            gaps.append((left.hi, right.lo))
        return IntervalSet.from_endpoints(gaps)

    def __or__(self, other):
        return self.union(other)

    def __and__(self, other):
        return self.intersection(other)

    def __sub__(self, other):
        return self.difference(other)

    def __xor__(self, other):
        return self.symmetric_difference(other)

    def __repr__(self):
        if not self.parts:
            return "{}"
        return "{" + ", ".join(repr(p) for p in self.parts) + "}"


# Module-level spellings for the set operations, convenient for a functional
# style in tests and in the CLI.

def measure(s: IntervalSet) -> Rational:
    return s.measure()


def boolean_combine(s: IntervalSet, t: IntervalSet, mode: str) -> IntervalSet:
    if mode == "union":
        return s.union(t)
    if mode == "intersection":
        return s.intersection(t)
    if mode == "difference":
        return s.difference(t)
    raise ValueError(f"unknown mode {mode!r}")


def symdiff(s: IntervalSet, t: IntervalSet) -> IntervalSet:
    return s.symmetric_difference(t)


def essential_hull(s: IntervalSet) -> IntervalSet:
    return s.essential_hull()


def hollows_of_set(s: IntervalSet) -> IntervalSet:
    return s.hollows()
