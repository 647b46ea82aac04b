"""Monte-Carlo check of the per-outer-iteration expected descent bound.

For one outer iteration from a fixed start the expected scalarized value
is bounded by

    F(x0) - (alpha/2) ||grad F(x0)||^2
          + alpha^2 L sigma^2 p^2 (s + L alpha s^3 / 3),

where sigma^2 bounds the expected squared stochastic-gradient norm at every
point the iteration can visit. The check estimates the left side over
independent trials and requires the inequality within three standard
errors; a valid sigma^2 is derived from a worst-case gradient-growth
recursion so the bound is sound rather than merely plausible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..engine import OptimizerConfig, run_block_smoo
from ..errors import ContractError
from ..frequency import FrequencyVector, weighted_sum_weights
from ..partition import BlockPartition
from ..problems.quadratic import QuadraticMoo
from ..schedule import RESHUFFLE
from ..steps import StepSizeRule


@dataclass
class DescentBoundReport:
    lhs_mean: float
    lhs_stderr: float
    rhs: float
    start_value: float
    grad_norm_sq: float
    sigma_sq: float
    smoothness: float
    alpha: float
    trials: int
    passed: bool
    in_regime: bool


def conservative_second_moment(
    problem: QuadraticMoo, x0: np.ndarray, alpha: float, total_steps: int
) -> float:
    """Worst-case bound on E||stochastic gradient||^2 over one outer iteration.

    Gradient norms can grow by at most L * step length per step; iterating
    that growth for every inner step yields a sound cap at all visited
    points, to which the noise second moment is added.
    """
    noise_radius = problem.noise.radius()
    if not np.isfinite(noise_radius):
        raise ContractError("second-moment bound needs compact-support noise")
    smoothness = problem.smoothness_bound()
    grad_cap = max(np.linalg.norm(problem.full_gradient(k, x0)) for k in range(problem.q))
    for _ in range(total_steps):
        grad_cap = grad_cap + smoothness * alpha * (grad_cap + noise_radius)
    return float(grad_cap**2 + problem.noise.second_moment(problem.n))


def descent_bound_check(
    problem: QuadraticMoo,
    partition: BlockPartition,
    freq: FrequencyVector,
    x0: np.ndarray,
    alpha: float,
    trials: int,
    seed: int = 0,
    schedule_policy: str = RESHUFFLE,
) -> DescentBoundReport:
    """Estimate E[F(x^{1,0,0})] over independent trials and compare to the bound."""
    if trials < 1:
        raise ContractError("need at least one trial")
    x0 = np.asarray(x0, dtype=float)
    weights = weighted_sum_weights(freq)
    s = partition.block_count
    p = freq.budget
    smoothness = problem.smoothness_bound()
    sigma_sq = conservative_second_moment(problem, x0, alpha, s * p)

    weighted_grad = sum(weights[k] * problem.full_gradient(k, x0) for k in range(problem.q))
    grad_norm_sq = float(weighted_grad @ weighted_grad)
    start_value = float(sum(weights[k] * problem.value(k, x0) for k in range(problem.q)))
    rhs = (
        start_value
        - 0.5 * alpha * grad_norm_sq
        + alpha**2 * smoothness * sigma_sq * p**2 * (s + smoothness * alpha * s**3 / 3.0)
    )

    values = np.empty(trials)
    for trial in range(trials):
        config = OptimizerConfig(
            n_outer=1,
            partition=partition,
            freq=freq,
            step_rule=StepSizeRule.fixed(alpha),
            seed=seed,
            schedule_policy=schedule_policy,
            x0=x0,
            run_index=trial,
        )
        record = run_block_smoo(problem, config)
        end = record.outer_points[-1]
        values[trial] = sum(weights[k] * problem.value(k, end) for k in range(problem.q))

    lhs_mean = float(values.mean())
    lhs_stderr = float(values.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return DescentBoundReport(
        lhs_mean=lhs_mean,
        lhs_stderr=lhs_stderr,
        rhs=rhs,
        start_value=start_value,
        grad_norm_sq=grad_norm_sq,
        sigma_sq=sigma_sq,
        smoothness=smoothness,
        alpha=alpha,
        trials=trials,
        passed=lhs_mean <= rhs + 3.0 * lhs_stderr,
        in_regime=alpha <= 2.0 / smoothness,
    )
