"""Built-in demo profile: a step approximation of x*sin^2(2*pi*x) on [0, 1].

The smooth curve has two humps separated by a hollow, which makes the
difference between the Schwarz rearrangement (everything shoved to the
origin) and the tamping (hollow filled in place) visible at a glance.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .stepfn import StepFunction

_QUANT = 2**20  # value denominator; keeps exact arithmetic tame


def xsin2_value(x: float) -> float:
    return x * math.sin(2.0 * math.pi * x) ** 2 if 0.0 <= x <= 1.0 else 0.0


def xsin2_step(resolution: int) -> StepFunction:
    """Piecewise-constant approximation on a uniform grid of ``resolution`` pieces.

    Values are midpoint samples quantised to denominator 2**20.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    cuts = [Fraction(k, resolution) for k in range(resolution + 1)]
    values = []
    for k in range(resolution):
        mid = (k + 0.5) / resolution
        values.append(Fraction(round(xsin2_value(mid) * _QUANT), _QUANT))
    return StepFunction(tuple(cuts), tuple(values))
