import numpy as np
import pytest

from blocksmoo.errors import ContractError, DegenerateInstanceError
from blocksmoo.frequency import validate_frequency_vector
from blocksmoo.problems.quadratic import (
    BallNoise,
    FiniteSumQuadratic,
    GaussianNoise,
    QuadraticMoo,
    SinusoidalQuadraticMoo,
    pl_constant,
    quadratic_oracle,
)


def min_eig_by_power_iteration(matrix, iterations=2000):
    """Independent smallest-eigenvalue estimate: power iteration on the
    spectrum flipped around a shift above the largest eigenvalue."""
    n = matrix.shape[0]
    shift = np.trace(matrix) + 1.0
    flipped = shift * np.eye(n) - matrix
    v = np.ones(n) / np.sqrt(n)
    for _ in range(iterations):
        v = flipped @ v
        v /= np.linalg.norm(v)
    return shift - float(v @ flipped @ v)


class TestOracle:
    def test_identity_gradient(self):
        problem = QuadraticMoo([np.eye(2)], [np.zeros(2)])
        value, gradient = quadratic_oracle(problem, 0, [3.0, 4.0], np.random.default_rng(0))
        np.testing.assert_allclose(gradient, [3.0, 4.0])
        assert value == pytest.approx(12.5)

    def test_noise_mean_vanishes(self):
        # averaged over many draws, the stochastic gradient matches the exact
        # one within 4 standard errors
        rng = np.random.default_rng(8)
        problem = QuadraticMoo([np.diag([2.0, 1.0])], [np.array([1.0, -1.0])], noise=GaussianNoise(0.7))
        x = np.array([0.3, -0.8])
        exact = problem.full_gradient(0, x)
        n_draws = 10**5
        draws = np.vstack([problem.partial_gradient(0, np.arange(2), x, rng) for _ in range(n_draws)])
        mean = draws.mean(axis=0)
        stderr = draws.std(axis=0, ddof=1) / np.sqrt(n_draws)
        assert np.all(np.abs(mean - exact) <= 4 * stderr)

    def test_ball_noise_respects_radius(self):
        noise = BallNoise(0.6)
        rng = np.random.default_rng(3)
        for _ in range(500):
            assert np.linalg.norm(noise.sample(rng, 4)) <= 0.6 + 1e-12

    def test_ball_noise_second_moment(self):
        noise = BallNoise(1.5)
        rng = np.random.default_rng(4)
        draws = np.array([np.sum(noise.sample(rng, 3) ** 2) for _ in range(20000)])
        assert draws.mean() == pytest.approx(noise.second_moment(3), rel=0.05)


class TestWeightedConstants:
    def test_pl_constant_identity_matrices(self):
        problem = QuadraticMoo([np.eye(3), np.eye(3)], [np.zeros(3), np.ones(3)])
        freq = validate_frequency_vector([2, 5], 2)
        assert pl_constant(problem, freq) == pytest.approx(1.0)

    def test_pl_constant_diagonal_pair(self):
        problem = QuadraticMoo([np.diag([1.0, 4.0]), np.diag([2.0, 2.0])], [np.zeros(2)] * 2)
        freq = validate_frequency_vector([1, 1], 2)
        assert pl_constant(problem, freq) == pytest.approx(1.5)

    def test_pl_constant_matches_independent_eig_solver(self):
        rng = np.random.default_rng(12)
        basis, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        a1 = basis @ np.diag([0.7, 1.9, 3.1]) @ basis.T
        a2 = basis @ np.diag([2.2, 0.9, 1.4]) @ basis.T
        problem = QuadraticMoo([a1, a2], [np.zeros(3)] * 2)
        freq = validate_frequency_vector([3, 1], 2)
        weighted = problem.weighted_matrix(freq)
        independent = min_eig_by_power_iteration(weighted)
        assert pl_constant(problem, freq) == pytest.approx(independent, abs=1e-8)

    def test_singular_weighted_matrix_rejected(self):
        problem = QuadraticMoo([np.diag([1.0, 0.0]), np.diag([2.0, 0.0])], [np.zeros(2)] * 2)
        with pytest.raises(DegenerateInstanceError):
            pl_constant(problem, validate_frequency_vector([1, 1], 2))

    def test_constants_bundle(self):
        problem = QuadraticMoo([np.diag([1.0, 4.0]), np.diag([2.0, 2.0])], [np.zeros(2)] * 2)
        freq = validate_frequency_vector([1, 1], 2)
        constants = problem.constants(freq)
        assert constants.smoothness == pytest.approx(4.0)
        assert constants.pl == pytest.approx(1.5)
        assert constants.optimal_value == pytest.approx(0.0)
        assert constants.second_moment is None

    def test_constants_reject_pl_above_smoothness(self):
        from blocksmoo.problems.base import ProblemConstants

        with pytest.raises(ValueError):
            ProblemConstants(smoothness=1.0, pl=2.0)
        with pytest.raises(ValueError):
            ProblemConstants(second_moment=-1.0)

    def test_minimizer_solves_weighted_system(self):
        rng = np.random.default_rng(2)
        problem = QuadraticMoo.random_instance(3, 5, rng)
        freq = validate_frequency_vector([1, 2, 3], 3)
        x_star = problem.minimizer(freq)
        weighted_grad = sum(
            w * problem.full_gradient(k, x_star) for k, w in enumerate(freq.weights())
        )
        np.testing.assert_allclose(weighted_grad, np.zeros(5), atol=1e-12)


class TestPlInequality:
    def test_holds_pointwise_with_computed_constant(self):
        # ||grad F||^2 >= 2 mu (F - F*) at 1000 random points, 1e-9 slack
        rng = np.random.default_rng(31)
        problem = QuadraticMoo.random_instance(2, 4, rng)
        freq = validate_frequency_vector([2, 3], 2)
        mu = pl_constant(problem, freq)
        f_star = problem.optimal_value(freq)
        weights = freq.weights()
        for _ in range(1000):
            x = rng.standard_normal(4) * 3
            grad = sum(w * problem.full_gradient(k, x) for k, w in enumerate(weights))
            value = sum(w * problem.value(k, x) for k, w in enumerate(weights))
            assert grad @ grad >= 2 * mu * (value - f_star) - 1e-9


class TestSmoothness:
    def test_gradient_lipschitz_with_max_eig(self):
        rng = np.random.default_rng(9)
        problem = QuadraticMoo.random_instance(3, 5, rng, eig_range=(0.2, 4.0))
        smoothness = problem.smoothness_bound()
        for _ in range(200):
            x, y = rng.standard_normal(5), rng.standard_normal(5)
            for k in range(problem.q):
                lhs = np.linalg.norm(problem.full_gradient(k, x) - problem.full_gradient(k, y))
                assert lhs <= smoothness * np.linalg.norm(x - y) * (1 + 1e-12)


class TestFiniteSum:
    def test_mean_linear_term(self):
        rng = np.random.default_rng(5)
        samples = rng.standard_normal((6, 3))
        problem = FiniteSumQuadratic([np.eye(3)], [samples])
        x = rng.standard_normal(3)
        np.testing.assert_allclose(problem.full_gradient(0, x), x - samples.mean(axis=0))

    def test_full_batch_context_recovers_exact(self):
        rng = np.random.default_rng(6)
        samples = rng.standard_normal((5, 2))
        problem = FiniteSumQuadratic([np.diag([1.0, 2.0])], [samples]).with_batch_size(5)
        x = np.array([0.4, -1.1])
        ctx = problem.sample_context(np.random.default_rng(0))
        np.testing.assert_allclose(
            problem.partial_gradient(0, np.arange(2), x, ctx), problem.full_gradient(0, x)
        )

    def test_bad_batch_size_rejected(self):
        problem = FiniteSumQuadratic([np.eye(2)], [np.zeros((4, 2))])
        with pytest.raises(ContractError):
            problem.with_batch_size(9)


class TestSinusoidal:
    def test_is_genuinely_nonconvex(self):
        problem, = [SinusoidalQuadraticMoo([np.eye(2)], [np.zeros(2)], amplitude=0.8, wave=2.0)]
        # second difference along a coordinate goes negative somewhere
        xs = np.linspace(-3, 3, 400)
        vals = np.array([problem.value(0, np.array([x, 0.0])) for x in xs])
        assert np.min(np.diff(vals, 2)) < 0

    def test_lower_bound_is_valid(self):
        problem = SinusoidalQuadraticMoo(
            [np.diag([1.0, 2.0]), np.diag([2.0, 1.0])],
            [np.array([0.5, -0.2]), np.array([-0.3, 0.4])],
            amplitude=0.3,
            wave=2.0,
        )
        freq = validate_frequency_vector([1, 1], 2)
        bound = problem.lower_bound(freq)
        weights = freq.weights()
        rng = np.random.default_rng(14)
        for _ in range(2000):
            x = rng.standard_normal(2) * 4
            value = sum(w * problem.value(k, x) for k, w in enumerate(weights))
            assert value >= bound

    def test_smoothness_includes_sinusoid_curvature(self):
        problem = SinusoidalQuadraticMoo([np.eye(2)], [np.zeros(2)], amplitude=0.5, wave=3.0)
        assert problem.smoothness_bound() == pytest.approx(1.0 + 0.5 * 9.0)
