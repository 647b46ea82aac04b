"""Gradient oracles: finite differences and exact minibatch enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..errors import ContractError, NumericFailureError
from ..problems.base import MooProblem

ENUMERATION_LIMIT = 10


@dataclass
class GradCheckReport:
    max_rel_error: float
    argmax_coordinate: int
    step: float

    @property
    def passed(self) -> bool:
        return self.max_rel_error < 1e-5


def finite_difference_check(
    problem: MooProblem,
    k: int,
    x: np.ndarray,
    step: float = 1e-6,
    n_coords: int = 32,
    rng: np.random.Generator | None = None,
) -> GradCheckReport:
    """Compare the analytic gradient to central differences of the objective.

    Checks n_coords random coordinates (all of them when the dimension is
    smaller). Relative error is |analytic - fd| / max(1, |analytic|).
    """
    x = np.asarray(x, dtype=float)
    analytic = problem.full_gradient(k, x)
    if not np.all(np.isfinite(analytic)):
        raise NumericFailureError("non-finite analytic gradient", (0, 0, 0))

    n = x.size
    if n <= n_coords:
        coords = np.arange(n)
    else:
        rng = rng or np.random.default_rng(0)
        coords = rng.choice(n, size=n_coords, replace=False)

    worst, arg = -1.0, -1
    for c in coords:
        bumped = x.copy()
        bumped[c] = x[c] + step
        f_plus = problem.value(k, bumped)
        bumped[c] = x[c] - step
        f_minus = problem.value(k, bumped)
        if not (np.isfinite(f_plus) and np.isfinite(f_minus)):
            raise NumericFailureError("non-finite objective value in difference stencil", (0, 0, int(c)))
        fd = (f_plus - f_minus) / (2.0 * step)
        rel = abs(analytic[c] - fd) / max(1.0, abs(analytic[c]))
        if rel > worst:
            worst, arg = rel, int(c)
    return GradCheckReport(max_rel_error=worst, argmax_coordinate=arg, step=step)


def unbiasedness_check(problem: MooProblem, x: np.ndarray, batch: int) -> float:
    """Exact average of minibatch gradients over all batches vs the full gradient.

    Enumerates every size-`batch` subset of the problem's samples, so the
    sample count must be small; returns the worst relative deviation over
    objectives and coordinates.
    """
    if problem.sample_count is None:
        raise ContractError("unbiasedness enumeration needs a finite-sample problem")
    n_samples = problem.sample_count
    if n_samples > ENUMERATION_LIMIT:
        raise ContractError(
            f"{n_samples} samples is too many to enumerate; use a Monte-Carlo mean instead"
        )
    x = np.asarray(x, dtype=float)
    everything = np.arange(problem.n)
    worst = 0.0
    for k in range(problem.q):
        exact = problem.full_gradient(k, x)
        total = np.zeros(problem.n)
        count = 0
        for subset in combinations(range(n_samples), batch):
            total += problem.partial_gradient(k, everything, x, np.asarray(subset))
            count += 1
        mean = total / count
        deviation = np.abs(mean - exact).max() / max(1.0, np.abs(exact).max())
        worst = max(worst, float(deviation))
    return worst
