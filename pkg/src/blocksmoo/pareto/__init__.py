from .front import FrontPoint, ParetoFront, dominates, nondominated_filter, nondominated_mask
from .metrics import purity, spread_delta, spread_gamma
from .sweep import (
    BLOCK_SMOO,
    WEIGHTED_SUM,
    SweepConfig,
    enumerate_frequency_vectors,
    front_metrics,
    run_one,
    run_sweep,
    write_front_csv,
    write_metrics_json,
)

__all__ = [
    "FrontPoint",
    "ParetoFront",
    "dominates",
    "nondominated_filter",
    "nondominated_mask",
    "purity",
    "spread_gamma",
    "spread_delta",
    "enumerate_frequency_vectors",
    "SweepConfig",
    "run_sweep",
    "run_one",
    "front_metrics",
    "write_front_csv",
    "write_metrics_json",
    "BLOCK_SMOO",
    "WEIGHTED_SUM",
]
