"""Seeded random generators shared by the property suites and the test suite.

Everything draws from a caller-supplied ``random.Random`` so that runs are
reproducible from a single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .stepfn import StepFunction
from .tamping import VoxelFunction

_DENOMS = (1, 2, 3, 4, 5, 6, 8, 12)


def random_fraction(rng: random.Random, lo: int = 0, hi: int = 8) -> Fraction:
    return Fraction(rng.randint(lo * 12, hi * 12), 12 * rng.choice(_DENOMS))


def random_step(
    rng: random.Random,
    max_pieces: int = 6,
    max_width: int = 4,
    max_value: int = 8,
    zero_gap_prob: float = 0.3,
    allow_zero: bool = False,
) -> StepFunction:
    """A random compactly supported step function with rational data."""
    n = rng.randint(0 if allow_zero else 1, max_pieces)
    pieces = []
    x = Fraction(0)
    if rng.random() < zero_gap_prob:
        x += random_fraction(rng, 0, max_width) + Fraction(1, 12)
    for _ in range(n):
        width = random_fraction(rng, 0, max_width) + Fraction(1, 12)
        value = random_fraction(rng, 0, max_value)
        if value > 0:
            pieces.append((x, x + width, value))
        x += width
        if rng.random() < zero_gap_prob:
            x += random_fraction(rng, 0, max_width) + Fraction(1, 12)
    phi = StepFunction.from_pieces(pieces)
    if phi.is_zero() and not allow_zero:
        return StepFunction.indicator(Fraction(rng.randint(0, 3)), Fraction(rng.randint(4, 8)))
    return phi


def random_voxel(rng: random.Random, max_n: int = 64, unit_cells: bool = True) -> VoxelFunction:
    n = rng.randint(1, max_n)
    style = rng.random()
    if style < 0.5:
        heights = [rng.randint(0, n) for _ in range(n)]
    elif style < 0.8:
        heights = [rng.randint(0, n) if rng.random() < 0.4 else 0 for _ in range(n)]
    else:
        base = rng.randint(0, n)
        heights = [max(0, min(n, base + rng.randint(-2, 2))) for _ in range(n)]
    if unit_cells:
        return VoxelFunction(n, tuple(heights))
    lam = rng.choice([1, 2, Fraction(1, 2), Fraction(3, 7)])
    mu = rng.choice([1, Fraction(1, 3), Fraction(5, 2)])
    return VoxelFunction(n, tuple(heights), lam, mu)


def random_monotone_majorant(rng: random.Random, phi: StepFunction):
    """A random non-decreasing step dominating ``phi``: cuts, values, terminal.

    Built as a running maximum of ``phi`` plus non-negative bumps, so it is a
    genuine member of the majorant family without being the minimal one.
    """
    values = []
    running = Fraction(0)
    for v in phi.values:
        bump = random_fraction(rng, 0, 2)
        running = max(running, Fraction(v) + bump)
        values.append(running)
    terminal = max(running, running + random_fraction(rng, 0, 2))
    return phi.cuts, tuple(values), terminal


def random_threshold_fn(rng: random.Random, max_thresholds: int = 4, signed: bool = False):
    """A non-decreasing step u -> f(u) with inf f = 0, as (thresholds, values).

    ``f(u)`` is the value of the largest threshold <= u, zero below the first.
    With ``signed`` the thresholds may be negative (for compositions with
    differences of functions).
    """
    k = rng.randint(1, max_thresholds)
    lo = -6 if signed else 0
    cuts = sorted({random_fraction(rng, lo, 8) + Fraction(1, 24) for _ in range(k)})
    vals = []
    run = Fraction(0)
    for _ in cuts:
        run += random_fraction(rng, 0, 3)
        vals.append(run)
    return tuple(cuts), tuple(vals)


def eval_threshold_fn(thresholds, values, u):
    out = 0
    for t, v in zip(thresholds, values):
        if u >= t:
            out = v
        else:
            break
    return out


def random_riesz_tuple(rng: random.Random):
    """Admissible (a, b, c, d, e, t) with 0<a<b<c<d<e and d <= t < e-b."""
    a = random_fraction(rng, 0, 2) + Fraction(1, 12)
    b = a + random_fraction(rng, 0, 2) + Fraction(1, 12)
    c = b + random_fraction(rng, 0, 3) + Fraction(1, 12)
    d = c + random_fraction(rng, 0, 3) + Fraction(1, 12)
    # make the window [d, e-b) nonempty: e > b + d
    e = b + d + random_fraction(rng, 0, 4) + Fraction(1, 12)
    window = (e - b) - d
    t = d + window * Fraction(rng.randint(0, 7), 8)
    return a, b, c, d, e, t


def random_hs_tuple(rng: random.Random):
    """Ordered rationals 0 < a < b < c < d < e for the H^s closed forms."""
    a = random_fraction(rng, 0, 2) + Fraction(1, 12)
    b = a + random_fraction(rng, 0, 2) + Fraction(1, 12)
    c = b + random_fraction(rng, 0, 8) + Fraction(1, 12)
    d = c + random_fraction(rng, 0, 8) + Fraction(1, 12)
    e = d + random_fraction(rng, 0, 8) + Fraction(1, 12)
    return a, b, c, d, e
