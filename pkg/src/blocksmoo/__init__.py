"""Stochastic block-coordinate and objective alternation for multi-objective
optimization, with Pareto-front sweeps and a numerical verification suite."""

from . import data, pareto, problems, verify
from .engine import (
    AVERAGE_ITERATE,
    LAST_ITERATE,
    UNIFORM_ITERATE,
    IterateState,
    OptimizerConfig,
    RunRecord,
    run_block_smoo,
    select_output,
    smoo_step,
)
from .errors import BlockSmooError
from .frequency import FrequencyVector, validate_frequency_vector, weighted_sum_weights
from .partition import BlockPartition
from .rng import purpose_stream
from .schedule import FIXED, RESHUFFLE, Schedule, build_block_permutation, build_index_mapping
from .steps import StepSizeRule

__version__ = "0.1.0"

__all__ = [
    "BlockPartition",
    "FrequencyVector",
    "validate_frequency_vector",
    "weighted_sum_weights",
    "Schedule",
    "build_block_permutation",
    "build_index_mapping",
    "RESHUFFLE",
    "FIXED",
    "StepSizeRule",
    "OptimizerConfig",
    "IterateState",
    "RunRecord",
    "smoo_step",
    "run_block_smoo",
    "select_output",
    "UNIFORM_ITERATE",
    "AVERAGE_ITERATE",
    "LAST_ITERATE",
    "purpose_stream",
    "BlockSmooError",
    "problems",
    "data",
    "pareto",
    "verify",
]
