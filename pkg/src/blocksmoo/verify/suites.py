"""Named verification suites: assumptions and rate claims checked numerically.

Each suite returns a JSON-serializable dict with a boolean "passed" plus
the measured quantities, so the command-line verify entry point and the
test suite share one implementation. The rate suites use quadratic
instances with closed-form constants; their pass windows are the pinned
acceptance tolerances.
"""

from __future__ import annotations

import numpy as np

from ..data.synthetic import generate_synthetic
from ..engine import AVERAGE_ITERATE, LAST_ITERATE, OptimizerConfig, run_block_smoo
from ..frequency import FrequencyVector, validate_frequency_vector, weighted_sum_weights
from ..partition import BlockPartition
from ..problems.base import weighted_value
from ..problems.lowrank import RrrProblem
from ..problems.quadratic import (
    BallNoise,
    FiniteSumQuadratic,
    GaussianNoise,
    QuadraticMoo,
    SinusoidalQuadraticMoo,
    pl_constant,
)
from ..rng import purpose_stream
from ..steps import StepSizeRule
from .descent import descent_bound_check
from .gradcheck import finite_difference_check, unbiasedness_check
from .rates import estimate_rate_slope
from .reference import reference_bcd, reference_sgd

RATE_HORIZONS = (200, 400, 800, 1600, 3200)
RATE_SEED_COUNT = 20

PL_SLOPE_WINDOW = (-1.25, -0.75)
CONVEX_SLOPE_WINDOW = (-0.7, -0.3)
NONCONVEX_SLOPE_CAP = -0.3


def verification_quadratic(noise_radius: float = 0.5):
    """Strongly convex two-objective, two-block instance with known constants."""
    mats = [np.diag([1.0, 1.2, 0.9, 1.1]), np.diag([1.1, 0.8, 1.2, 1.0])]
    vecs = [np.array([1.0, -0.5, 0.8, 0.2]), np.array([-0.6, 0.9, -0.3, 0.7])]
    problem = QuadraticMoo(mats, vecs, noise=BallNoise(noise_radius))
    partition = BlockPartition.from_sizes([2, 2])
    freq = validate_frequency_vector([1, 1], 2)
    return problem, partition, freq


def verification_sinusoidal(noise_radius: float = 0.5):
    """Same quadratic skeleton plus a bounded sinusoid: smooth, non-convex."""
    base, partition, freq = verification_quadratic(noise_radius)
    problem = SinusoidalQuadraticMoo(
        base.mats, base.vecs, amplitude=0.3, wave=2.0, noise=BallNoise(noise_radius)
    )
    return problem, partition, freq


def _start_point(problem: QuadraticMoo, freq: FrequencyVector) -> np.ndarray:
    x_star = QuadraticMoo(problem.mats, problem.vecs).minimizer(freq)
    return x_star + np.array([1.5, -1.0, 1.2, -0.8])


def pl_rate_experiment(
    horizons=RATE_HORIZONS, n_seeds: int = RATE_SEED_COUNT, seed: int = 0
) -> dict:
    """Last-iterate optimality gap under harmonic steps; expected slope near -1."""
    problem, partition, freq = verification_quadratic()
    mu = pl_constant(problem, freq)
    f_star = problem.optimal_value(freq)
    weights = weighted_sum_weights(freq)
    x0 = _start_point(problem, freq)

    levels = []
    run_index = 0
    for horizon in horizons:
        gaps = np.empty(n_seeds)
        for j in range(n_seeds):
            config = OptimizerConfig(
                n_outer=horizon,
                partition=partition,
                freq=freq,
                step_rule=StepSizeRule.pl_harmonic(mu),
                output_rule=LAST_ITERATE,
                seed=seed,
                x0=x0,
                run_index=run_index,
            )
            run_index += 1
            record = run_block_smoo(problem, config)
            gaps[j] = weighted_value(problem, weights, record.output) - f_star
        levels.append(float(gaps.mean()))

    fit = estimate_rate_slope(horizons, levels)
    low, high = PL_SLOPE_WINDOW
    return {
        "passed": bool(low <= fit.slope <= high),
        "slope": fit.slope,
        "stderr": fit.stderr,
        "slope_window": [low, high],
        "horizons": list(horizons),
        "levels": levels,
        "mu": mu,
        "n_seeds": n_seeds,
    }


def convex_rate_experiment(
    horizons=RATE_HORIZONS, n_seeds: int = RATE_SEED_COUNT, seed: int = 0
) -> dict:
    """Time-averaged optimality gap under the 1/sqrt(T) step; slope near -1/2.

    The level is the run average of F(x^{t,0,0}) - F* over t < T, the
    quantity the convex analysis telescopes before bounding the averaged
    iterate; the gap at the averaged iterate itself is reported alongside.
    """
    problem, partition, freq = verification_quadratic()
    f_star = problem.optimal_value(freq)
    weights = weighted_sum_weights(freq)
    x0 = _start_point(problem, freq)

    levels = []
    averaged_point_gaps = []
    run_index = 0
    for horizon in horizons:
        gaps = np.empty(n_seeds)
        out_gaps = np.empty(n_seeds)
        for j in range(n_seeds):
            config = OptimizerConfig(
                n_outer=horizon,
                partition=partition,
                freq=freq,
                step_rule=StepSizeRule.sqrt_horizon(),
                output_rule=AVERAGE_ITERATE,
                seed=seed,
                x0=x0,
                run_index=run_index,
            )
            run_index += 1
            record = run_block_smoo(problem, config)
            starts = record.outer_points[:-1]
            values = [weighted_value(problem, weights, x) for x in starts]
            gaps[j] = float(np.mean(values)) - f_star
            out_gaps[j] = weighted_value(problem, weights, record.output) - f_star
        levels.append(float(gaps.mean()))
        averaged_point_gaps.append(float(out_gaps.mean()))

    fit = estimate_rate_slope(horizons, levels)
    low, high = CONVEX_SLOPE_WINDOW
    return {
        "passed": bool(low <= fit.slope <= high),
        "slope": fit.slope,
        "stderr": fit.stderr,
        "slope_window": [low, high],
        "horizons": list(horizons),
        "levels": levels,
        "averaged_point_gaps": averaged_point_gaps,
        "n_seeds": n_seeds,
    }


def nonconvex_rate_experiment(
    horizons=RATE_HORIZONS, n_seeds: int = RATE_SEED_COUNT, seed: int = 0
) -> dict:
    """Trajectory-averaged squared gradient norm on the non-convex instance.

    Checks two things: the levels decay with slope at most -0.3, and every
    level lies below the theorem bound evaluated with measured constants
    (max observed gradient norm grown by a worst-case one-cycle margin).
    """
    problem, partition, freq = verification_sinusoidal()
    weights = weighted_sum_weights(freq)
    x0 = _start_point(problem, freq)
    smoothness = problem.smoothness_bound()
    f_lower = problem.lower_bound(freq)
    f_start = weighted_value(problem, weights, x0)
    noise_radius = problem.noise.radius()
    s = partition.block_count
    p = freq.budget

    def weighted_grad(x):
        return sum(weights[k] * problem.full_gradient(k, x) for k in range(problem.q))

    levels = []
    bound_rhs = []
    run_index = 0
    for horizon in horizons:
        alpha = 1.0 / np.sqrt(horizon)
        means = np.empty(n_seeds)
        grad_cap = 0.0
        for j in range(n_seeds):
            config = OptimizerConfig(
                n_outer=horizon,
                partition=partition,
                freq=freq,
                step_rule=StepSizeRule.sqrt_horizon(),
                seed=seed,
                x0=x0,
                run_index=run_index,
            )
            run_index += 1
            record = run_block_smoo(problem, config)
            starts = record.outer_points[:-1]
            norms_sq = np.array([float(np.sum(weighted_grad(x) ** 2)) for x in starts])
            means[j] = norms_sq.mean()
            per_objective = max(
                float(np.linalg.norm(problem.full_gradient(k, x)))
                for x in record.outer_points
                for k in range(problem.q)
            )
            grad_cap = max(grad_cap, per_objective)
        # grow the snapshot-measured cap over one worst-case cycle so the
        # second-moment constant is valid at intermediate points too
        grown = grad_cap
        for _ in range(s * p):
            grown = grown + smoothness * alpha * (grown + noise_radius)
        sigma_sq = grown**2 + noise_radius**2
        rhs = (2.0 / np.sqrt(horizon)) * (
            f_start - f_lower + smoothness * sigma_sq * p**2 * (s + smoothness * s**3 / 3.0)
        )
        levels.append(float(means.mean()))
        bound_rhs.append(float(rhs))

    fit = estimate_rate_slope(horizons, levels)
    below = [lvl <= rhs for lvl, rhs in zip(levels, bound_rhs)]
    return {
        "passed": bool(fit.slope <= NONCONVEX_SLOPE_CAP and all(below)),
        "slope": fit.slope,
        "stderr": fit.stderr,
        "slope_cap": NONCONVEX_SLOPE_CAP,
        "horizons": list(horizons),
        "levels": levels,
        "bound_rhs": bound_rhs,
        "levels_below_bound": below,
        "n_seeds": n_seeds,
    }


def equivalence_suite(n_outer: int = 200, seed: int = 7) -> dict:
    """Engine must match the hand-coded references bit for bit when degenerate."""
    mat = np.diag([1.0, 0.7, 1.3, 0.9])
    vec = np.array([0.4, -1.0, 0.6, 0.1])
    problem = QuadraticMoo([mat], [vec], noise=GaussianNoise(0.3))
    x0 = np.array([2.0, -1.5, 0.5, 1.0])
    freq = validate_frequency_vector([1], 1)

    sgd_config = OptimizerConfig(
        n_outer=n_outer,
        partition=BlockPartition.single(4),
        freq=freq,
        step_rule=StepSizeRule.fixed(0.05),
        seed=seed,
        x0=x0,
    )
    engine_sgd = run_block_smoo(problem, sgd_config)
    oracle_sgd = reference_sgd(problem, sgd_config)
    sgd_equal = bool(
        np.array_equal(engine_sgd.outer_points, oracle_sgd.outer_points)
        and np.array_equal(engine_sgd.output, oracle_sgd.output)
        and engine_sgd.work_units == oracle_sgd.work_units
    )

    bcd_config = OptimizerConfig(
        n_outer=n_outer,
        partition=BlockPartition.from_sizes([2, 1, 1]),
        freq=freq,
        step_rule=StepSizeRule.fixed(0.05),
        seed=seed,
        x0=x0,
    )
    engine_bcd = run_block_smoo(problem, bcd_config)
    oracle_bcd = reference_bcd(problem, bcd_config)
    bcd_equal = bool(
        np.array_equal(engine_bcd.outer_points, oracle_bcd.outer_points)
        and np.array_equal(engine_bcd.output, oracle_bcd.output)
        and engine_bcd.work_units == oracle_bcd.work_units
    )

    return {
        "passed": sgd_equal and bcd_equal,
        "sgd_bit_identical": sgd_equal,
        "bcd_bit_identical": bcd_equal,
        "n_outer": n_outer,
    }


def mapping_identity_suite(seed: int = 3, points: int = 5, orders: int = 10) -> dict:
    """The cycle-average of objective values must equal the weighted sum.

    Checked for several frequency vectors, random admissible objective
    orders, and random evaluation points, to 1e-12 relative.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for counts in [(5, 15), (2, 2, 2, 2, 2), (0, 3, 1)]:
        q = len(counts)
        problem = QuadraticMoo.random_instance(q, 6, rng)
        freq = validate_frequency_vector(list(counts), q)
        weights = weighted_sum_weights(freq)
        base_order = np.repeat(np.arange(q), freq.counts)
        for _ in range(orders):
            order = rng.permutation(base_order)
            for _ in range(points):
                x = rng.standard_normal(problem.n)
                by_weights = weighted_value(problem, weights, x)
                by_order = sum(problem.value(int(k), x) for k in order) / freq.budget
                rel = abs(by_order - by_weights) / max(1.0, abs(by_weights))
                worst = max(worst, rel)
    return {"passed": bool(worst < 1e-12), "max_rel_deviation": worst, "tolerance": 1e-12}


def _toy_rrr(seed: int = 11, n_rows: int = 32, batch: int = 8) -> RrrProblem:
    dataset, _, _ = generate_synthetic(
        seed, n_train=n_rows, n_test=8, d=6, q=3, rank=2, noise_sigma=0.1
    )
    return RrrProblem.from_dataset(dataset, rank=2, batch_size=batch)


def gradient_suite(seed: int = 5) -> dict:
    """Finite-difference validation of the analytic gradients."""
    rng = np.random.default_rng(seed)
    quad = QuadraticMoo.random_instance(2, 8, rng)
    x = rng.standard_normal(8)
    quad_report = max(
        finite_difference_check(quad, k, x, rng=rng).max_rel_error for k in range(quad.q)
    )

    rrr = _toy_rrr(seed)
    x_rrr = rrr.random_init(purpose_stream(seed, "init"))
    rrr_report = max(
        finite_difference_check(rrr, k, x_rrr, rng=rng).max_rel_error for k in range(rrr.q)
    )
    return {
        "passed": bool(quad_report < 1e-7 and rrr_report < 1e-5),
        "quadratic_max_rel_error": quad_report,
        "rrr_max_rel_error": rrr_report,
        "quadratic_tolerance": 1e-7,
        "rrr_tolerance": 1e-5,
    }


def unbiasedness_suite(seed: int = 13) -> dict:
    """Exact minibatch enumeration against the full-batch gradients."""
    dataset, _, _ = generate_synthetic(seed, n_train=4, n_test=4, d=3, q=2, rank=1, noise_sigma=0.1)
    rrr = RrrProblem.from_dataset(dataset, rank=1, batch_size=2)
    x_rrr = rrr.random_init(purpose_stream(seed, "init"))
    rrr_dev = unbiasedness_check(rrr, x_rrr, batch=2)

    rng = np.random.default_rng(seed)
    mats = [np.diag([1.0, 2.0, 0.5]), np.diag([1.5, 0.8, 1.1])]
    samples = [rng.standard_normal((6, 3)), rng.standard_normal((6, 3))]
    finite_sum = FiniteSumQuadratic(mats, samples).with_batch_size(3)
    quad_dev = unbiasedness_check(finite_sum, rng.standard_normal(3), batch=3)

    return {
        "passed": bool(rrr_dev < 1e-12 and quad_dev < 1e-12),
        "rrr_deviation": rrr_dev,
        "quadratic_deviation": quad_dev,
        "tolerance": 1e-12,
    }


def descent_suite(trials: int = 500, seed: int = 17) -> dict:
    """Monte-Carlo check of the per-iteration descent bound on the quadratic."""
    problem, partition, freq = verification_quadratic()
    x0 = _start_point(problem, freq)
    report = descent_bound_check(
        problem, partition, freq, x0=x0, alpha=0.1, trials=trials, seed=seed
    )
    return {
        "passed": bool(report.passed and report.in_regime),
        "lhs_mean": report.lhs_mean,
        "lhs_stderr": report.lhs_stderr,
        "rhs": report.rhs,
        "sigma_sq": report.sigma_sq,
        "alpha": report.alpha,
        "trials": report.trials,
        "in_regime": report.in_regime,
    }


def rate_suite(horizons=RATE_HORIZONS, n_seeds: int = RATE_SEED_COUNT, seed: int = 0) -> dict:
    pl = pl_rate_experiment(horizons, n_seeds, seed)
    convex = convex_rate_experiment(horizons, n_seeds, seed)
    nonconvex = nonconvex_rate_experiment(horizons, n_seeds, seed)
    return {
        "passed": bool(pl["passed"] and convex["passed"] and nonconvex["passed"]),
        "pl": pl,
        "convex": convex,
        "nonconvex": nonconvex,
    }


SUITES = {
    "equivalence": equivalence_suite,
    "mapping": mapping_identity_suite,
    "gradients": gradient_suite,
    "unbiasedness": unbiasedness_suite,
    "descent": descent_suite,
    "rates": rate_suite,
}


def run_suites(names=None, fast: bool = False) -> dict:
    """Run the selected suites (all by default) and aggregate pass/fail."""
    selected = list(SUITES) if not names else list(names)
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites {unknown}; available: {sorted(SUITES)}")
    report = {"suites": {}, "passed": True}
    for name in selected:
        if name == "rates" and fast:
            result = rate_suite(horizons=(100, 200, 400, 800), n_seeds=5)
        else:
            result = SUITES[name]()
        report["suites"][name] = result
        report["passed"] = report["passed"] and bool(result["passed"])
    return report
