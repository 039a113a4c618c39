"""Rearrangement by tamping, via three mutually cross-checking routes.

The tamping slides mass to the left only far enough to fill the hollows of
the function, which makes the result unimodal while keeping the value at the
origin (unlike the Schwarz rearrangement, which shoves everything to 0).

Routes implemented here:

* the level-set definition -- each superlevel set of the result is the
  segment ``[y_nu, y_nu + meas{phi >= nu}]`` where ``y_nu`` shifts the left
  endpoint ``x_nu`` of the original superlevel set by the measure of the
  hollows lying left of it (:func:`tamp`);
* the voxel pivot algorithm -- repeatedly slide the "mountain" right of a
  strict local minimum one cell to the left (:func:`tamp_voxel`);
* the double-Schwarz formula -- glue a reflected Schwarz rearrangement of
  the part where the function equals its running maximum to the Schwarz
  rearrangement of the rest (:func:`tamp_double_schwarz`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .intervals import IntervalSet, Rational, _check_rational
from .stepfn import StepFunction, best_upper_bound, s_sigma, schwarz, superlevel

__all__ = [
    "VoxelFunction",
    "TampingTrace",
    "hollows",
    "level_anchor",
    "tamp",
    "tamp_double_schwarz",
    "step_to_voxel",
    "voxel_to_step",
    "voxelize_exact",
    "pivot_set",
    "eta",
    "elementary_tamp",
    "tamp_voxel",
]


# ---------------------------------------------------------------------------
# Hollows of a function and the level anchors
# ---------------------------------------------------------------------------


def hollows(phi: StepFunction, level=math.inf) -> IntervalSet:
    """Union of the hollows of the superlevel sets at all levels below ``level``.

    For a step function the superlevel sets change only at the distinct
    values ``0 < u_1 < u_2 < ...``, and the set at any level in
    ``(u_{j-1}, u_j]`` equals the set at ``u_j``; a level band contributes as
    soon as its lower edge lies below ``level``.  Passing ``math.inf`` (the
    default) collects every level.
    """
    levels = phi.distinct_levels()
    if level is not math.inf and not level > 0:
        raise ValueError("level must be positive")
    out = IntervalSet.empty()
    prev = 0
    for u in levels:
        if not prev < level:
            break
        out = out.union(superlevel(phi, u).hollows())
        prev = u
    return out


def _hollows_all_levels(phi: StepFunction) -> IntervalSet:
    """Fast path for the union over all levels.

    A point sits in some superlevel gap iff its value is exceeded on both
    sides, so the union of all hollows is exactly the pieces whose value is
    below both the strict prefix maximum and the strict suffix maximum.
    Cross-checked against :func:`hollows` in the test suite.
    """
    vals = phi.values
    n = len(vals)
    if n == 0:
        return IntervalSet.empty()
    pref = [0] * n
    run = 0
    for i, v in enumerate(vals):
        pref[i] = run
        run = max(run, v)
    suf = [0] * n
    run = 0
    for i in range(n - 1, -1, -1):
        suf[i] = run
        run = max(run, vals[i])
    return IntervalSet.from_endpoints(
        [
            (phi.cuts[i], phi.cuts[i + 1])
            for i in range(n)
            if vals[i] < pref[i] and vals[i] < suf[i]
        ]
    )


def level_anchor(phi: StepFunction, nu):
    """The pair ``(x_nu, y_nu)``: left endpoint of the superlevel set, and the
    same shifted left by the hollows measure preceding it.

    Both are ``math.inf`` when the superlevel set is empty.
    """
    if not nu > 0:
        raise ValueError("level must be positive")
    s = superlevel(phi, nu)
    if s.is_empty():
        return math.inf, math.inf
    x = s.parts[0].lo
    y = x - _hollows_all_levels(phi).measure_below(x)
    return x, y


# ---------------------------------------------------------------------------
# Route 1: the level-set definition
# ---------------------------------------------------------------------------


def tamp(phi: StepFunction) -> StepFunction:
    """Tamping through its defining superlevel segments.

    The segments nest, so the function is rebuilt by sweeping the distinct
    levels upward: each level adds a shelf on both flanks of the next one.
    """
    levels = phi.distinct_levels()
    if not levels:
        return StepFunction.zero()
    hol = _hollows_all_levels(phi)

    # One descending sweep gives every level's left endpoint and measure.
    pieces = sorted(phi.support_pieces(), key=lambda t: t[2], reverse=True)
    anchors = {}  # level -> (y, measure)
    idx = 0
    min_lo = None
    total = 0
    for u in sorted(levels, reverse=True):
        while idx < len(pieces) and pieces[idx][2] >= u:
            lo, hi, _ = pieces[idx]
            min_lo = lo if min_lo is None else min(min_lo, lo)
            total += hi - lo
            idx += 1
        y = min_lo - hol.measure_below(min_lo)
        anchors[u] = (y, total)

    # Assemble the nested segments, lowest level first.
    segs = [(anchors[u][0], anchors[u][0] + anchors[u][1], u) for u in levels]
    cuts = [0]
    values = []
    for (lo, hi, u), (lo_next, hi_next, _) in zip(segs, segs[1:]):
        if lo > cuts[-1]:
            cuts.append(lo)
            values.append(0)
        if lo_next > lo:
            cuts.append(lo_next)
            values.append(u)
    lo, hi, u = segs[-1]
    if lo > cuts[-1]:
        cuts.append(lo)
        values.append(0)
    cuts.append(hi)
    values.append(u)
    for (lo, hi, u), (_, hi_next, _) in list(zip(segs, segs[1:]))[::-1]:
        if hi > hi_next:
            cuts.append(hi)
            values.append(u)
    return StepFunction(tuple(cuts), tuple(values))


# ---------------------------------------------------------------------------
# Route 3: the double-Schwarz formula
# ---------------------------------------------------------------------------


def tamp_double_schwarz(phi: StepFunction) -> StepFunction:
    """Tamping as two glued Schwarz rearrangements.

    Split ``phi`` into the part that equals its best non-decreasing upper
    bound and the rest; Schwarz-rearrange both parts, reflect the first about
    ``sigma`` and translate the second to start there.
    """
    if phi.is_zero():
        raise ValueError("undefined for the zero function")
    s, sigma = s_sigma(phi)
    up_running = 0
    match_pieces = []
    rest_pieces = []
    for lo, hi, v in zip(phi.cuts, phi.cuts[1:], phi.values):
        up_running = max(up_running, v)
        (match_pieces if v == up_running else rest_pieces).append((lo, hi, v))
    matched = schwarz(StepFunction.from_pieces(match_pieces))
    rest = (
        schwarz(StepFunction.from_pieces(rest_pieces))
        if rest_pieces
        else StepFunction.zero()
    )

    pieces = []
    # Reflection of `matched` about sigma fills [0, sigma] from the right.
    for lo, hi, v in matched.support_pieces():
        pieces.append((sigma - hi, sigma - lo, v))
    for lo, hi, v in rest.support_pieces():
        pieces.append((sigma + lo, sigma + hi, v))
    return StepFunction.from_pieces(pieces)


# ---------------------------------------------------------------------------
# Route 2: the voxel pivot algorithm
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VoxelFunction:
    """Integer-height columns on a uniform grid.

    Column ``i`` (1-based) occupies ``[(i-1)*cell_width, i*cell_width)`` and
    holds ``heights[i-1]`` cells of height ``cell_height``; the underlying
    boolean grid has ``grid(i, j) = 1`` iff ``j <= heights[i-1]``, which makes
    it non-increasing in the row index by construction.
    """

    n: int
    heights: tuple
    cell_width: Rational = 1
    cell_height: Rational = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("grid size must be at least 1")
        if len(self.heights) != self.n:
            raise ValueError("need exactly one height per column")
        for h in self.heights:
            if not isinstance(h, int) or isinstance(h, bool):
                raise TypeError("heights must be integers")
            if not 0 <= h <= self.n:
                raise ValueError(f"height {h} outside [0, {self.n}]")
        _check_rational(self.cell_width, "cell_width")
        _check_rational(self.cell_height, "cell_height")
        if self.cell_width <= 0 or self.cell_height <= 0:
            raise ValueError("cell sizes must be positive")

    def with_heights(self, heights) -> "VoxelFunction":
        return VoxelFunction(self.n, tuple(heights), self.cell_width, self.cell_height)

    def column_weight(self) -> int:
        """The invariant sum(i * h_i); strictly decreases at every pivot move."""
        return sum(i * h for i, h in enumerate(self.heights, start=1))


@dataclass
class TampingTrace:
    """Record of one full run of the pivot algorithm."""

    steps: list = field(default_factory=list)  # (pivot, eta, heights-after)
    invariant_N: list = field(default_factory=list)  # column weights, initial first

    def to_jsonable(self):
        return [
            {"pivot": xi, "eta": e, "heights": list(h)} for xi, e, h in self.steps
        ]


def _pivot_indices(h) -> list:
    out = []
    run = 0
    for i in range(len(h) - 1):
        if h[i] < h[i + 1] and run > h[i]:
            out.append(i + 1)
        run = max(run, h[i])
    return out


def pivot_set(v: VoxelFunction) -> set:
    """Columns eligible as pivots: strict local minima in the grid sense.

    ``xi`` qualifies when the next column is strictly taller and some column
    strictly taller than ``h_xi`` stands to the left with nothing in between
    reaching it; the latter is equivalent to ``max(h_1..h_{xi-1}) > h_xi``.
    """
    return set(_pivot_indices(v.heights))


def _eta_scan(heights, n: int, xi: int) -> int:
    hx = heights[xi - 1]
    e = xi + 1
    while True:
        left = heights[e - 2] if e - 1 <= n else 0
        right = heights[e - 1] if e <= n else 0
        if left > hx >= right:
            return e
        e += 1


def eta(v: VoxelFunction, xi: int) -> int:
    """First column at or right of ``xi+1`` where the profile drops to ``h_xi``.

    Heights beyond the grid read as zero, so ``eta`` can be ``n + 1``.  The
    search starts at ``xi + 1``: the pivot move must displace at least one
    column, otherwise it would be an empty move.
    """
    if xi not in pivot_set(v):
        raise ValueError(f"column {xi} is not a pivot")
    return _eta_scan(v.heights, v.n, xi)


def _moved_heights(heights, xi: int, e: int) -> tuple:
    h = list(heights)
    pivot_height = h.pop(xi - 1)
    h.insert(e - 2, pivot_height)
    return tuple(h)


def elementary_tamp(v: VoxelFunction, xi: int) -> VoxelFunction:
    """Slide the mountain strictly between ``xi`` and ``eta(xi)`` one step left.

    On heights this removes the pivot column and reinserts it just before
    ``eta``; the grid rows below the pivot height are untouched, so column
    monotonicity survives the move.
    """
    e = eta(v, xi)
    return v.with_heights(_moved_heights(v.heights, xi, e))


def tamp_voxel(v: VoxelFunction, policy: str = "leftmost", rng=None):
    """Iterate elementary moves until no pivot remains.

    The final heights do not depend on the pivot selection policy; the
    available policies exist to let tests check exactly that.
    """
    if policy not in ("leftmost", "rightmost", "random"):
        raise ValueError(f"unknown policy {policy!r}")
    if policy == "random" and rng is None:
        raise ValueError("random policy needs an rng")
    trace = TampingTrace()
    heights = v.heights
    trace.invariant_N.append(sum(i * h for i, h in enumerate(heights, start=1)))
    while True:
        pivots = _pivot_indices(heights)
        if not pivots:
            result = v.with_heights(heights)
            return result, trace
        if policy == "leftmost":
            xi = pivots[0]
        elif policy == "rightmost":
            xi = pivots[-1]
        else:
            xi = rng.choice(pivots)
        e = _eta_scan(heights, v.n, xi)
        heights = _moved_heights(heights, xi, e)
        trace.steps.append((xi, e, heights))
        trace.invariant_N.append(sum(i * h for i, h in enumerate(heights, start=1)))


# ---------------------------------------------------------------------------
# Conversions between step and voxel representations
# ---------------------------------------------------------------------------


def voxel_to_step(v: VoxelFunction) -> StepFunction:
    """Columns laid consecutively from the origin, value = cell_height * h_i."""
    cuts = [v.cell_width * i for i in range(v.n + 1)]
    values = [v.cell_height * h for h in v.heights]
    return StepFunction(tuple(cuts), tuple(values))


def _ceil_div(a: Rational, b: Rational) -> int:
    q = Fraction(a) / Fraction(b)
    return -((-q.numerator) // q.denominator)


def step_to_voxel(phi: StepFunction, n: int) -> VoxelFunction:
    """Cover ``phi`` by an n-by-n grid of cells.

    Cell sizes are chosen so the grid spans the support and the range; a cell
    is filled iff it meets the hypograph in positive measure, which makes
    each column height the ceiling of the column's essential supremum in cell
    units.  The result dominates ``phi`` and is exact on grid-aligned input.
    """
    if n < 1:
        raise ValueError("grid size must be at least 1")
    if phi.is_zero():
        return VoxelFunction(n, (0,) * n)
    width = Fraction(phi.support_end, n)
    height = Fraction(phi.max_value(), n)
    heights = []
    for i in range(n):
        lo, hi = width * i, width * (i + 1)
        sup = 0
        for a, b, val in phi.support_pieces():
            if b <= lo:
                continue
            if a >= hi:
                break
            sup = max(sup, val)
        heights.append(min(n, _ceil_div(sup, height)) if sup > 0 else 0)
    return VoxelFunction(n, tuple(heights), width, height)


def voxelize_exact(phi: StepFunction) -> VoxelFunction:
    """Embed a rational step function in a grid without loss.

    Cell sizes are the gcd of the cut coordinates and of the values, so the
    voxel route reproduces the function exactly; useful for cross-checking
    the routes on arbitrary parsed input.  Grids can get large for inputs
    with wild denominators.
    """
    if phi.is_zero():
        return VoxelFunction(1, (0,))
    width = _fraction_gcd([Fraction(c) for c in phi.cuts[1:]])
    height = _fraction_gcd([Fraction(v) for v in phi.values if v > 0])
    columns = int(Fraction(phi.support_end) / width)
    max_h = int(Fraction(phi.max_value()) / height)
    n = max(columns, max_h)
    heights = []
    for i in range(columns):
        heights.append(int(Fraction(phi(width * i)) / height))
    heights.extend([0] * (n - columns))
    return VoxelFunction(n, tuple(heights), width, height)


def _fraction_gcd(xs: Sequence[Fraction]) -> Fraction:
    num = 0
    den = 1
    for x in xs:
        den = den * x.denominator // math.gcd(den, x.denominator)
    for x in xs:
        num = math.gcd(num, int(x * den))
    return Fraction(num, den)
