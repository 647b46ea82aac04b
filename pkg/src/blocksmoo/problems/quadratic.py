"""Quadratic multi-objective instances with analytically known constants.

These are the verification workhorses: smoothness, PL constant, minimizer
and optimal value of any scalarization are all computable in closed form,
so convergence-rate and descent-bound claims can be checked against them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..data.sampling import sample_minibatch
from ..errors import ContractError, DegenerateInstanceError, DimensionError
from ..frequency import FrequencyVector, weighted_sum_weights
from .base import MooProblem, ProblemConstants


class NoiseModel:
    """Additive gradient-noise law; mean zero by construction."""

    bounded: bool = True

    def sample(self, rng: np.random.Generator, dim: int) -> np.ndarray:
        raise NotImplementedError

    def second_moment(self, dim: int) -> float:
        """E ||u||^2 for a draw of the given dimension."""
        raise NotImplementedError

    def radius(self) -> float:
        """Supremum of ||u||, inf if unbounded."""
        raise NotImplementedError


class NoNoise(NoiseModel):
    def sample(self, rng, dim):
        return np.zeros(dim)

    def second_moment(self, dim):
        return 0.0

    def radius(self):
        return 0.0


class GaussianNoise(NoiseModel):
    """Isotropic normal noise; unbounded support, so excluded from bound checks."""

    bounded = False

    def __init__(self, std: float):
        if std < 0:
            raise ValueError("std must be non-negative")
        self.std = float(std)

    def sample(self, rng, dim):
        return self.std * rng.standard_normal(dim)

    def second_moment(self, dim):
        return self.std**2 * dim

    def radius(self):
        return float("inf")


class BallNoise(NoiseModel):
    """Uniform noise on the solid ball of the given radius (compact support)."""

    def __init__(self, radius: float):
        if radius < 0:
            raise ValueError("radius must be non-negative")
        self._radius = float(radius)

    def sample(self, rng, dim):
        direction = rng.standard_normal(dim)
        norm = np.linalg.norm(direction)
        if norm == 0.0:
            direction = np.ones(dim)
            norm = np.linalg.norm(direction)
        scale = self._radius * rng.random() ** (1.0 / dim)
        return (scale / norm) * direction

    def second_moment(self, dim):
        # E r^2 for r = R * U^(1/dim) is R^2 * dim / (dim + 2)
        return self._radius**2 * dim / (dim + 2.0)

    def radius(self):
        return self._radius


class QuadraticMoo(MooProblem):
    """f_k(x) = 0.5 x'A_k x - b_k'x + c_k with additive gradient noise."""

    def __init__(self, mats, vecs, offsets=None, noise: NoiseModel | None = None):
        mats = [np.asarray(a, dtype=float) for a in mats]
        vecs = [np.asarray(b, dtype=float) for b in vecs]
        if len(mats) != len(vecs) or len(mats) == 0:
            raise DimensionError("need one matrix and one vector per objective")
        n = mats[0].shape[0]
        for a, b in zip(mats, vecs):
            if a.shape != (n, n) or b.shape != (n,):
                raise DimensionError("inconsistent quadratic shapes")
        self.mats = mats
        self.vecs = vecs
        self.offsets = np.zeros(len(mats)) if offsets is None else np.asarray(offsets, dtype=float)
        self.noise = noise or NoNoise()
        self.q = len(mats)
        self.n = n
        self.batch_size = 1
        self.sample_count = None

    @classmethod
    def random_instance(
        cls,
        q: int,
        n: int,
        rng: np.random.Generator,
        eig_range: tuple[float, float] = (0.5, 2.0),
        noise: NoiseModel | None = None,
    ) -> "QuadraticMoo":
        """Random strongly convex instance with eigenvalues in eig_range."""
        mats, vecs = [], []
        for _ in range(q):
            basis, _ = np.linalg.qr(rng.standard_normal((n, n)))
            eigs = rng.uniform(*eig_range, size=n)
            mats.append(basis @ np.diag(eigs) @ basis.T)
            vecs.append(rng.standard_normal(n))
        return cls(mats, vecs, noise=noise)

    def value(self, k, x):
        x = self.check_point(x)
        return float(0.5 * x @ self.mats[k] @ x - self.vecs[k] @ x + self.offsets[k])

    def full_gradient(self, k, x):
        return self.mats[k] @ x - self.vecs[k]

    def sample_context(self, rng):
        return rng

    def partial_gradient(self, k, block, x, ctx):
        g = self.mats[k][block, :] @ x - self.vecs[k][block]
        return g + self.noise.sample(ctx, block.size)

    def oracle(self, k: int, x: np.ndarray, rng: np.random.Generator) -> tuple[float, np.ndarray]:
        """Value and full stochastic gradient of objective k in one call."""
        g = self.full_gradient(k, x) + self.noise.sample(rng, self.n)
        return self.value(k, x), g

    # closed-form constants -------------------------------------------------

    def smoothness_bound(self) -> float:
        return max(float(np.linalg.eigvalsh(a)[-1]) for a in self.mats)

    def weighted_matrix(self, freq: FrequencyVector) -> np.ndarray:
        w = weighted_sum_weights(freq)
        return sum(w[k] * self.mats[k] for k in range(self.q))

    def weighted_vector(self, freq: FrequencyVector) -> np.ndarray:
        w = weighted_sum_weights(freq)
        return sum(w[k] * self.vecs[k] for k in range(self.q))

    def minimizer(self, freq: FrequencyVector) -> np.ndarray:
        a = self.weighted_matrix(freq)
        if np.linalg.eigvalsh(a)[0] <= 0:
            raise DegenerateInstanceError("weighted matrix is not positive definite")
        return np.linalg.solve(a, self.weighted_vector(freq))

    def optimal_value(self, freq: FrequencyVector) -> float:
        x_star = self.minimizer(freq)
        w = weighted_sum_weights(freq)
        return float(sum(w[k] * self.value(k, x_star) for k in range(self.q)))

    def constants(self, freq: FrequencyVector) -> ProblemConstants:
        """All closed-form constants of the scalarization induced by freq.

        The second-moment bound is left unset: it does not exist globally
        for quadratics on an unbounded domain.
        """
        return ProblemConstants(
            smoothness=self.smoothness_bound(),
            pl=pl_constant(self, freq),
            optimal_value=self.optimal_value(freq),
        )


def pl_constant(problem: QuadraticMoo, freq: FrequencyVector) -> float:
    """PL constant of the scalarized quadratic: smallest weighted eigenvalue.

    For quadratics the PL inequality holds globally with this constant.
    """
    a = problem.weighted_matrix(freq)
    smallest = float(np.linalg.eigvalsh(a)[0])
    if smallest <= 0:
        raise DegenerateInstanceError("weighted matrix is singular or indefinite")
    return smallest


def quadratic_oracle(problem: QuadraticMoo, k: int, x, rng: np.random.Generator):
    """Functional form of QuadraticMoo.oracle."""
    return problem.oracle(k, np.asarray(x, dtype=float), rng)


@dataclass
class FiniteSumQuadratic(MooProblem):
    """Quadratic objectives whose linear term is an average over samples.

    f_k(x) = 0.5 x'A_k x - mean_i(b_ki)'x + c_k, with the stochastic
    gradient replacing the mean by a minibatch average. Used to exercise
    minibatch enumeration checks on an instance with exact expectations.
    """

    mats: list
    linear_samples: list  # one (N, n) array per objective

    def __post_init__(self):
        self.mats = [np.asarray(a, dtype=float) for a in self.mats]
        self.linear_samples = [np.asarray(b, dtype=float) for b in self.linear_samples]
        self.q = len(self.mats)
        self.n = self.mats[0].shape[0]
        counts = {b.shape[0] for b in self.linear_samples}
        if len(counts) != 1:
            raise DimensionError("all objectives must share the sample count")
        self.sample_count = counts.pop()
        self.batch_size = 1  # set per-run via with_batch_size
        self._means = [b.mean(axis=0) for b in self.linear_samples]

    def with_batch_size(self, batch: int) -> "FiniteSumQuadratic":
        if not 1 <= batch <= self.sample_count:
            raise ContractError(f"batch size {batch} outside [1, {self.sample_count}]")
        out = FiniteSumQuadratic(self.mats, self.linear_samples)
        out.batch_size = int(batch)
        return out

    def value(self, k, x):
        x = self.check_point(x)
        return float(0.5 * x @ self.mats[k] @ x - self._means[k] @ x)

    def full_gradient(self, k, x):
        return self.mats[k] @ x - self._means[k]

    def sample_context(self, rng):
        return sample_minibatch(self.sample_count, self.batch_size, rng)

    def partial_gradient(self, k, block, x, ctx):
        idx = np.asarray(ctx)
        b_batch = self.linear_samples[k][idx].mean(axis=0)
        return self.mats[k][block, :] @ x - b_batch[block]


class SinusoidalQuadraticMoo(QuadraticMoo):
    """Quadratics plus a bounded sinusoid: smooth but genuinely non-convex.

    f_k(x) = 0.5 x'A_k x - b_k'x + amplitude * sum_i sin(wave * x_i).
    The extra term has gradient amplitude*wave*cos(wave*x) per coordinate,
    curvature bounded by amplitude*wave^2, and value within
    amplitude*n of zero, so smoothness and a lower bound on the objective
    stay computable.
    """

    def __init__(self, mats, vecs, amplitude: float, wave: float, noise: NoiseModel | None = None):
        super().__init__(mats, vecs, noise=noise)
        self.amplitude = float(amplitude)
        self.wave = float(wave)

    def value(self, k, x):
        base = super().value(k, x)
        return base + self.amplitude * float(np.sum(np.sin(self.wave * np.asarray(x, dtype=float))))

    def full_gradient(self, k, x):
        return super().full_gradient(k, x) + self.amplitude * self.wave * np.cos(self.wave * x)

    def partial_gradient(self, k, block, x, ctx):
        g = self.mats[k][block, :] @ x - self.vecs[k][block]
        g = g + self.amplitude * self.wave * np.cos(self.wave * x[block])
        return g + self.noise.sample(ctx, block.size)

    def smoothness_bound(self):
        return super().smoothness_bound() + abs(self.amplitude) * self.wave**2

    def lower_bound(self, freq: FrequencyVector) -> float:
        """A valid lower bound on the scalarized objective over all of R^n."""
        quad_min = QuadraticMoo(self.mats, self.vecs, self.offsets).optimal_value(freq)
        return quad_min - abs(self.amplitude) * self.n
