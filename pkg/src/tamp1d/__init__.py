"""Rearrangement by tamping on the half-line, with exact rational arithmetic."""

from .intervals import Interval, IntervalSet
from .stepfn import (
    MonotoneStep,
    StepFunction,
    best_upper_bound,
    inner_product,
    is_rearrangement_of,
    is_unimodal,
    lp_norm,
    s_sigma,
    schwarz,
    superlevel,
)
from .tamping import (
    TampingTrace,
    VoxelFunction,
    elementary_tamp,
    eta,
    hollows,
    level_anchor,
    pivot_set,
    step_to_voxel,
    tamp,
    tamp_double_schwarz,
    tamp_voxel,
    voxel_to_step,
)

__version__ = "0.1.0"
