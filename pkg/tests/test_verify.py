import numpy as np
import pytest

from blocksmoo.engine import OptimizerConfig, run_block_smoo
from blocksmoo.errors import ContractError
from blocksmoo.frequency import validate_frequency_vector
from blocksmoo.partition import BlockPartition
from blocksmoo.problems.quadratic import FiniteSumQuadratic, GaussianNoise, NoNoise, QuadraticMoo
from blocksmoo.schedule import FIXED
from blocksmoo.steps import StepSizeRule
from blocksmoo.verify.descent import conservative_second_moment, descent_bound_check
from blocksmoo.verify.gradcheck import finite_difference_check, unbiasedness_check
from blocksmoo.verify.rates import estimate_rate_slope
from blocksmoo.verify.reference import reference_bcd, reference_sgd
from blocksmoo.verify.suites import (
    equivalence_suite,
    gradient_suite,
    mapping_identity_suite,
    unbiasedness_suite,
    verification_quadratic,
)


class TestReferenceOptimizers:
    def test_sgd_requires_single_objective_single_block(self):
        problem = QuadraticMoo([np.eye(2), np.eye(2)], [np.zeros(2), np.ones(2)])
        config = OptimizerConfig(
            n_outer=3,
            partition=BlockPartition.single(2),
            freq=validate_frequency_vector([1, 1], 2),
            step_rule=StepSizeRule.fixed(0.1),
        )
        with pytest.raises(ContractError):
            reference_sgd(problem, config)
        with pytest.raises(ContractError):
            reference_bcd(problem, config)

    def test_sgd_requires_one_block(self):
        problem = QuadraticMoo([np.eye(4)], [np.zeros(4)])
        config = OptimizerConfig(
            n_outer=3,
            partition=BlockPartition.from_sizes([2, 2]),
            freq=validate_frequency_vector([1], 1),
            step_rule=StepSizeRule.fixed(0.1),
        )
        with pytest.raises(ContractError):
            reference_sgd(problem, config)

    def test_zero_gradient_start_stays_put(self):
        problem = QuadraticMoo([np.eye(3)], [np.zeros(3)], noise=NoNoise())
        config = OptimizerConfig(
            n_outer=5,
            partition=BlockPartition.single(3),
            freq=validate_frequency_vector([1], 1),
            step_rule=StepSizeRule.fixed(0.2),
            x0=np.zeros(3),
        )
        engine = run_block_smoo(problem, config)
        oracle = reference_sgd(problem, config)
        assert np.all(engine.outer_points == 0.0)
        assert np.all(oracle.outer_points == 0.0)

    def test_equivalence_suite_is_bit_exact(self):
        report = equivalence_suite(n_outer=100)
        assert report["passed"]
        assert report["sgd_bit_identical"] and report["bcd_bit_identical"]

    def test_equivalence_with_multiple_steps_per_cycle(self):
        problem = QuadraticMoo([np.diag([1.0, 0.5, 1.5])], [np.ones(3)], noise=GaussianNoise(0.2))
        for partition in (BlockPartition.single(3), BlockPartition.from_sizes([2, 1])):
            config = OptimizerConfig(
                n_outer=60,
                partition=partition,
                freq=validate_frequency_vector([3], 1),
                step_rule=StepSizeRule.fixed(0.05),
                seed=4,
                x0=np.array([1.0, -1.0, 2.0]),
            )
            engine = run_block_smoo(problem, config)
            oracle = (
                reference_sgd(problem, config)
                if partition.block_count == 1
                else reference_bcd(problem, config)
            )
            assert engine.outer_points.tobytes() == oracle.outer_points.tobytes()


class TestRateSlope:
    def test_exact_one_over_t(self):
        horizons = np.array([100, 200, 400, 800, 1600])
        fit = estimate_rate_slope(horizons, 3.7 / horizons)
        assert fit.slope == pytest.approx(-1.0, abs=1e-6)

    def test_exact_one_over_sqrt_t(self):
        horizons = np.array([100, 200, 400, 800, 1600])
        fit = estimate_rate_slope(horizons, 2.2 / np.sqrt(horizons))
        assert fit.slope == pytest.approx(-0.5, abs=1e-6)

    def test_noisy_decay_recovers_slope(self):
        # 20% multiplicative noise around C/T: the fitted slope stays within
        # 0.15 of -1 for this frozen seed
        rng = np.random.default_rng(2024)
        horizons = np.array([100, 200, 400, 800, 1600, 3200])
        levels = (5.0 / horizons) * (1.0 + 0.2 * rng.uniform(-1, 1, size=horizons.size))
        fit = estimate_rate_slope(horizons, levels)
        assert fit.slope == pytest.approx(-1.0, abs=0.15)
        assert np.isfinite(fit.stderr)

    def test_contract_violations(self):
        with pytest.raises(ContractError):
            estimate_rate_slope([100], [1.0])
        with pytest.raises(ContractError):
            estimate_rate_slope([100, 50], [1.0, 2.0])
        with pytest.raises(ContractError):
            estimate_rate_slope([100, 200], [1.0, -2.0])


class TestFiniteDifference:
    def test_quadratic_is_exact_to_rounding(self):
        rng = np.random.default_rng(1)
        problem = QuadraticMoo.random_instance(2, 10, rng)
        report = finite_difference_check(problem, 0, rng.standard_normal(10), rng=rng)
        assert report.max_rel_error < 1e-7
        assert report.passed

    def test_planted_fault_is_caught(self):
        rng = np.random.default_rng(3)
        problem = QuadraticMoo.random_instance(1, 6, rng)

        class Doubled(QuadraticMoo):
            def full_gradient(self, k, x):
                return 2.0 * super().full_gradient(k, x)

        broken = Doubled(problem.mats, problem.vecs)
        x = rng.standard_normal(6) * 3  # keep gradients well above the max(1, .) floor
        report = finite_difference_check(broken, 0, x, rng=rng)
        assert report.max_rel_error == pytest.approx(0.5, abs=0.05)
        assert not report.passed

    def test_gradient_suite(self):
        assert gradient_suite()["passed"]


class TestUnbiasedness:
    def test_full_batch_is_exactly_unbiased(self):
        rng = np.random.default_rng(4)
        problem = FiniteSumQuadratic([np.eye(3)], [rng.standard_normal((5, 3))])
        deviation = unbiasedness_check(problem, rng.standard_normal(3), batch=5)
        assert deviation == 0.0

    def test_enumeration_limit(self):
        rng = np.random.default_rng(5)
        problem = FiniteSumQuadratic([np.eye(2)], [rng.standard_normal((50, 2))])
        with pytest.raises(ContractError, match="Monte-Carlo"):
            unbiasedness_check(problem, np.zeros(2), batch=10)

    def test_pure_noise_problem_rejected(self):
        problem = QuadraticMoo([np.eye(2)], [np.zeros(2)], noise=GaussianNoise(0.1))
        with pytest.raises(ContractError):
            unbiasedness_check(problem, np.zeros(2), batch=1)

    def test_unbiasedness_suite(self):
        report = unbiasedness_suite()
        assert report["passed"]
        assert report["rrr_deviation"] < 1e-12
        assert report["quadratic_deviation"] < 1e-12


class TestMappingIdentity:
    def test_suite_holds_to_1e12(self):
        report = mapping_identity_suite()
        assert report["passed"]
        assert report["max_rel_deviation"] < 1e-12


class TestDescentBound:
    def test_exact_gradients_descend_deterministically(self):
        problem, partition, freq = verification_quadratic(noise_radius=0.0)
        x0 = np.array([2.0, -1.0, 1.5, 0.5])
        report = descent_bound_check(
            problem, partition, freq, x0=x0, alpha=0.1, trials=3, schedule_policy=FIXED
        )
        assert report.lhs_stderr == pytest.approx(0.0, abs=1e-12)
        assert report.lhs_mean <= report.rhs
        assert report.passed and report.in_regime

    def test_noisy_check_passes_with_margin(self):
        problem, partition, freq = verification_quadratic(noise_radius=0.5)
        x0 = np.array([2.0, -1.0, 1.5, 0.5])
        report = descent_bound_check(problem, partition, freq, x0=x0, alpha=0.1, trials=300)
        assert report.passed

    def test_oversized_step_flagged_out_of_regime(self):
        problem, partition, freq = verification_quadratic(noise_radius=0.2)
        x0 = np.ones(4)
        report = descent_bound_check(problem, partition, freq, x0=x0, alpha=5.0, trials=50)
        assert not report.in_regime

    def test_second_moment_bound_is_conservative(self):
        problem, _, _ = verification_quadratic(noise_radius=0.4)
        x0 = np.array([1.0, 2.0, -1.0, 0.5])
        bound = conservative_second_moment(problem, x0, alpha=0.1, total_steps=4)
        start = max(
            np.linalg.norm(problem.full_gradient(k, x0)) ** 2 for k in range(problem.q)
        )
        assert bound >= start

    def test_unbounded_noise_rejected(self):
        problem = QuadraticMoo([np.eye(2)], [np.zeros(2)], noise=GaussianNoise(0.1))
        with pytest.raises(ContractError):
            conservative_second_moment(problem, np.ones(2), alpha=0.1, total_steps=2)
