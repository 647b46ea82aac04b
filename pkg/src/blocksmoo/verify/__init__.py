from .descent import DescentBoundReport, conservative_second_moment, descent_bound_check
from .gradcheck import GradCheckReport, finite_difference_check, unbiasedness_check
from .rates import RateFit, estimate_rate_slope
from .reference import reference_bcd, reference_sgd
from .suites import (
    SUITES,
    convex_rate_experiment,
    nonconvex_rate_experiment,
    pl_rate_experiment,
    run_suites,
    verification_quadratic,
    verification_sinusoidal,
)

__all__ = [
    "reference_sgd",
    "reference_bcd",
    "finite_difference_check",
    "unbiasedness_check",
    "GradCheckReport",
    "estimate_rate_slope",
    "RateFit",
    "descent_bound_check",
    "DescentBoundReport",
    "conservative_second_moment",
    "run_suites",
    "SUITES",
    "pl_rate_experiment",
    "convex_rate_experiment",
    "nonconvex_rate_experiment",
    "verification_quadratic",
    "verification_sinusoidal",
]
