"""Log-log slope estimation for empirical convergence-rate checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ContractError


@dataclass
class RateFit:
    horizons: np.ndarray
    levels: np.ndarray
    slope: float
    stderr: float
    intercept: float


def estimate_rate_slope(horizons, levels) -> RateFit:
    """Least-squares slope of log(level) against log(horizon).

    Levels are typically seed-averaged gaps or gradient norms measured at
    increasing horizons; the slope estimates the decay exponent and the
    standard error quantifies the fit.
    """
    horizons = np.asarray(horizons, dtype=float)
    levels = np.asarray(levels, dtype=float)
    if horizons.ndim != 1 or horizons.shape != levels.shape or horizons.size < 2:
        raise ContractError("need matching 1-d horizons and levels with at least 2 entries")
    if np.any(np.diff(horizons) <= 0):
        raise ContractError("horizons must be strictly increasing")
    if np.any(levels <= 0):
        raise ContractError("levels must be strictly positive to fit a log-log slope")

    log_t = np.log(horizons)
    log_y = np.log(levels)
    t_centered = log_t - log_t.mean()
    slope = float((t_centered @ (log_y - log_y.mean())) / (t_centered @ t_centered))
    intercept = float(log_y.mean() - slope * log_t.mean())

    residuals = log_y - (intercept + slope * log_t)
    dof = horizons.size - 2
    if dof > 0:
        sigma_sq = float(residuals @ residuals) / dof
        stderr = float(np.sqrt(sigma_sq / (t_centered @ t_centered)))
    else:
        stderr = float("nan")
    return RateFit(horizons=horizons, levels=levels, slope=slope, stderr=stderr, intercept=intercept)
