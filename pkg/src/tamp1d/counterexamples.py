"""The negative results: where tamping parts ways with the Schwarz rearrangement.

Tamping a two-bump indicator merges the bumps in place instead of shoving
them to the origin; that single fact breaks the Riesz rearrangement
inequality, the Hardy-Littlewood inequality, and H^s half-norm decrease.
This module evaluates the three instances exactly (areas in rationals,
half-norms in closed form).
"""

from __future__ import annotations

from fractions import Fraction

from .intervals import IntervalSet
from .stepfn import StepFunction, inner_product
from .tamping import tamp

__all__ = [
    "riesz_triple_integral",
    "hs_counterexample_pair",
    "hs_counterexample_function",
    "hardy_littlewood_gap",
]


def riesz_triple_integral(e, pieces: IntervalSet, t) -> Fraction:
    """Exact value of the band integral
    ``int int 1_[0,e](x) * psi(y) * 1_[-t,t](x - y) dx dy``
    with ``psi`` the indicator of ``pieces``.

    The inner x-integral is the overlap length ``meas([0,e] cap [y-t, y+t])``,
    a piecewise-linear function of y with kinks at -t, t, e-t, e+t; each part
    of ``pieces`` is split at those kinks and the linear bits integrate via
    their midpoints.
    """
    if not t > 0:
        raise ValueError("band half-width t must be positive")
    e = Fraction(e)
    t = Fraction(t)
    kinks = sorted({-t, t, e - t, e + t})

    def overlap(y: Fraction) -> Fraction:
        lo = max(Fraction(0), y - t)
        hi = min(e, y + t)
        return max(Fraction(0), hi - lo)

    total = Fraction(0)
    for part in pieces.parts:
        stops = [Fraction(part.lo)] + [k for k in kinks if part.lo < k < part.hi]
        stops.append(Fraction(part.hi))
        for a, b in zip(stops, stops[1:]):
            total += (b - a) * overlap((a + b) / 2)
    return total


def hs_counterexample_pair(s, a, b, c, d, e):
    """Squared H^s half-norms, before and after tamping, of
    ``1_[a,b] + 1_[c,d] + 1_[0,e]`` in closed form.

    Requires ``0 < a < b < c < d < e`` and ``0 < s < 1/2``.  With
    ``F(u) = u^(1-2s)``, both values are bracket sums of F-terms over the
    jump locations, scaled by ``1 / (s (1-2s))``.
    """
    if not 0 < s < Fraction(1, 2):
        raise ValueError("s must lie in (0, 1/2)")
    if not 0 < a < b < c < d < e:
        raise ValueError("need 0 < a < b < c < d < e")
    s = float(s)
    alpha = 1.0 - 2.0 * s

    def F(u) -> float:
        return float(u) ** alpha

    scale = 1.0 / (s * (1.0 - 2.0 * s))
    before = scale * (
        F(b) - F(a) + F(d) - F(c) + F(e)
        + F(b - a) - F(c - a) + F(c - b)
        + F(d - a) - F(d - b) + F(d - c)
        + F(e - a) - F(e - b) + F(e - c) - F(e - d)
    )
    after = scale * (
        F(b + d - c) - F(a) + F(e)
        + F(b + d - c - a)
        + F(e - a) - F(e + c - d - b)
    )
    return before, after


def hs_counterexample_function(a, b, c, d, e) -> StepFunction:
    """The function behind :func:`hs_counterexample_pair`."""
    if not 0 < a < b < c < d < e:
        raise ValueError("need 0 < a < b < c < d < e")
    return StepFunction.from_pieces(
        [(0, a, 1), (a, b, 2), (b, c, 1), (c, d, 2), (d, e, 1)]
    )


def hardy_littlewood_gap(phi: StepFunction, psi: StepFunction):
    """The pair ``(int phi psi, int phi' psi')`` with primes the tampings.

    No inequality holds in general; the caller reports which way it went.
    """
    plain = inner_product(phi, psi)
    tamped = inner_product(tamp(phi), tamp(psi))
    return plain, tamped
