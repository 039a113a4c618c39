"""Derivative and fractional half-norms.

Voxel functions get a continuous piecewise-linear interpolant whose
W^{1,p} half-norm is a plain sum of node differences; step functions get the
Gagliardo H^s half-norm in closed form.  Everything combinatorial stays
rational; only the final norm values are floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .intervals import IntervalSet, Rational, _check_rational
from .stepfn import StepFunction
from .tamping import VoxelFunction, elementary_tamp, pivot_set

__all__ = [
    "PiecewiseLinear",
    "linear_interpolate",
    "w1p_halfnorm",
    "w1p_power",
    "elementary_residual",
    "hs_halfnorm_squared",
    "hs_halfnorm",
    "pl_superlevel",
    "pl_hollows",
    "gradient_power_over",
]


def _pow(base, p) -> Union[Fraction, float]:
    if isinstance(p, int) or (isinstance(p, float) and p.is_integer()):
        return Fraction(base) ** int(p)
    return float(base) ** float(p)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function on a uniform grid.

    Node ``i`` sits at ``i * grid_step``; the function is linear in between
    and lives on ``[0, (len(nodes)-1) * grid_step]``.  Operations that extend
    it by zero beyond the grid require the end nodes to vanish, otherwise the
    extension would break continuity.
    """

    grid_step: Rational
    nodes: tuple

    def __post_init__(self):
        _check_rational(self.grid_step, "grid_step")
        if self.grid_step <= 0:
            raise ValueError("grid_step must be positive")
        if len(self.nodes) < 2:
            raise ValueError("need at least two nodes")
        for v in self.nodes:
            _check_rational(v, "node")
            if v < 0:
                raise ValueError("nodes must be non-negative")

    @property
    def domain_end(self) -> Rational:
        return self.grid_step * (len(self.nodes) - 1)

    def __call__(self, x):
        if x <= 0:
            return self.nodes[0] if x == 0 else 0
        if x >= self.domain_end:
            return self.nodes[-1] if x == self.domain_end else 0
        q = Fraction(x) / Fraction(self.grid_step)
        i = int(q)
        t = q - i
        return self.nodes[i] * (1 - t) + self.nodes[i + 1] * t

    def _require_zero_ends(self):
        if self.nodes[0] != 0 or self.nodes[-1] != 0:
            raise ValueError("extension by zero needs vanishing end nodes")


def linear_interpolate(v: VoxelFunction) -> PiecewiseLinear:
    """Interpolant through the column heights, pinned to zero at both ends.

    Node ``i`` carries column ``i``'s physical height, so the interpolant and
    the voxel function agree at the grid points.
    """
    nodes = [0] + [v.cell_height * h for h in v.heights] + [0]
    return PiecewiseLinear(v.cell_width, tuple(nodes))


def sorted_interpolant(v: VoxelFunction) -> PiecewiseLinear:
    """Interpolant of the non-increasing rearrangement of the columns.

    The half-line rearrangement starts at the maximum, so only the right end
    is pinned to zero; pinning the left end too would charge an artificial
    wall at the origin (the very boundary effect tamping exists to avoid).
    """
    nodes = sorted((v.cell_height * h for h in v.heights), reverse=True)
    return PiecewiseLinear(v.cell_width, tuple(nodes) + (0,))


def w1p_power(f: PiecewiseLinear, p) -> Union[Fraction, float]:
    """Integral of |f'|^p over the grid: sum |dnode|^p / grid_step^(p-1)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    total = 0
    for a, b in zip(f.nodes, f.nodes[1:]):
        if a != b:
            total += _pow(abs(b - a), p)
    return total / _pow(f.grid_step, p) * f.grid_step


def w1p_halfnorm(f: PiecewiseLinear, p) -> float:
    return float(w1p_power(f, p)) ** (1.0 / float(p))


def elementary_residual(v: VoxelFunction, xi: int, p) -> Union[Fraction, float]:
    """Drop of the W^{1,p} energy caused by one pivot move.

    Always at least ``|h_xi - h_{xi-1}|^p + |h_{xi+1} - h_xi|^p -
    |h_{xi+1} - h_{xi-1}|^p`` (in physical units), hence non-negative.
    """
    if xi not in pivot_set(v):
        raise ValueError(f"column {xi} is not a pivot")
    if p < 1:
        raise ValueError("p must be >= 1")
    before = w1p_power(linear_interpolate(v), p)
    after = w1p_power(linear_interpolate(elementary_tamp(v, xi)), p)
    return before - after


def residual_lower_bound(v: VoxelFunction, xi: int, p) -> Union[Fraction, float]:
    """The guaranteed part of the residual, from the junctions at the pivot."""
    h = v.heights
    mu, lam = v.cell_height, v.cell_width
    left = h[xi - 2] if xi >= 2 else 0
    mid = h[xi - 1]
    right = h[xi]
    val = (
        _pow(abs(mid - left) * mu, p)
        + _pow(abs(right - mid) * mu, p)
        - _pow(abs(right - left) * mu, p)
    )
    return val / _pow(lam, p) * lam


# ---------------------------------------------------------------------------
# Superlevel sets and hollows of piecewise-linear functions
# ---------------------------------------------------------------------------


def pl_superlevel(f: PiecewiseLinear, nu) -> IntervalSet:
    """{x : f(x) >= nu} for nu > 0, a finite union of segments."""
    if not nu > 0:
        raise ValueError("level must be positive")
    nu = Fraction(nu) if not isinstance(nu, (int, Fraction)) else nu
    step = Fraction(f.grid_step)
    spans = []
    for i, (a, b) in enumerate(zip(f.nodes, f.nodes[1:])):
        x0, x1 = step * i, step * (i + 1)
        if a >= nu and b >= nu:
            spans.append((x0, x1))
        elif a >= nu > b:
            t = Fraction(a - nu, a - b)
            spans.append((x0, x0 + t * step))
        elif b >= nu > a:
            t = Fraction(nu - a, b - a)
            spans.append((x0 + t * step, x1))
    return IntervalSet.from_endpoints(spans)


def pl_hollows(f: PiecewiseLinear) -> IntervalSet:
    """Union over all levels of the superlevel-set gaps.

    Between two consecutive critical levels (node values) no gap opens or
    closes and both gap endpoints move linearly and outward with the level,
    so the union over a band is the band's gap in the limit at its upper
    edge.  The gap structure inside a band is read off at the midpoint, where
    every superlevel boundary sits strictly inside a segment; each endpoint
    is then traced along its own segment up to the edge level.
    """
    f._require_zero_ends()
    crit = sorted({v for v in f.nodes if v > 0})
    step = Fraction(f.grid_step)
    out = []
    prev = 0
    for level in crit:
        mid = Fraction(prev + level, 2)
        for g in pl_superlevel(f, mid).hollows().parts:
            out.append(
                (_crossing_at(f, g.lo, level, step), _crossing_at(f, g.hi, level, step))
            )
        prev = level
    return IntervalSet.from_endpoints(out)


def _crossing_at(f: PiecewiseLinear, x, level, step):
    """Where f passes through ``level`` on the segment containing ``x``."""
    i = int(Fraction(x) / step)
    a, b = f.nodes[i], f.nodes[i + 1]
    t = Fraction(level - a, b - a)
    t = min(max(t, 0), 1)
    return step * i + t * step


def gradient_power_over(f: PiecewiseLinear, region: IntervalSet, p) -> Union[Fraction, float]:
    """Integral of |f'|^p over a region (exact for integer p)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    step = Fraction(f.grid_step)
    total = 0
    for i, (a, b) in enumerate(zip(f.nodes, f.nodes[1:])):
        if a == b:
            continue
        seg = IntervalSet.single(step * i, step * (i + 1))
        overlap = seg.intersection(region).measure()
        if overlap:
            total += _pow(abs(b - a) / step, p) * overlap
    return total


# ---------------------------------------------------------------------------
# Fractional half-norm in closed form
# ---------------------------------------------------------------------------


def hs_halfnorm_squared(phi: StepFunction, s) -> float:
    """The squared H^s half-norm: the double integral of
    ``|phi(x) - phi(y)|^2 / |x - y|^(1 + 2s)`` over ordered pairs ``x < y``,
    with ``phi`` extended by zero outside its support.

    The ordered-pair (half-plane) normalisation is the one the standard
    counterexample values use; the symmetric full-plane integral is exactly
    twice this.  Over a pair of constant pieces the kernel integrates in
    closed form via ``F(u) = u^(1-2s)``; the two zero tails contribute the
    same expression with the far terms dropped (they vanish in the limit for
    s < 1/2).  Summation runs left-to-right for reproducible floats.
    """
    s = float(s)
    if not 0.0 < s < 0.5:
        raise ValueError("s must lie in (0, 1/2)")
    alpha = 1.0 - 2.0 * s
    if phi.is_zero():
        return 0.0

    pieces = phi.pieces()  # includes interior zero pieces

    def F(u) -> float:
        return float(u) ** alpha

    total = 0.0
    for i, (a, b, vi) in enumerate(pieces):
        # pairs of finite pieces, i strictly left of j
        for (c, d, vj) in pieces[i + 1 :]:
            if vi == vj:
                continue
            dv = float(vi - vj)
            total += dv * dv * (F(c - a) - F(c - b) - F(d - a) + F(d - b))
        if vi != 0:
            dv = float(vi)
            # left tail (-oo, 0] and right tail [support_end, oo)
            total += dv * dv * (F(b) - F(a))
            e = phi.support_end
            total += dv * dv * (F(e - a) - F(e - b))
    return total / (2.0 * s * (1.0 - 2.0 * s))


def hs_halfnorm(phi: StepFunction, s) -> float:
    return math.sqrt(hs_halfnorm_squared(phi, s))
