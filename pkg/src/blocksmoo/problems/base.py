"""The multi-objective problem interface consumed by the optimizer.

A problem exposes q objective values, block-partial stochastic gradients,
and (when available) exact gradients and analytically known constants.
All randomness enters through caller-supplied generators, so instances are
read-only after construction and safe to share across concurrent runs.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..errors import ContractError, DimensionError


@dataclass(frozen=True)
class ProblemConstants:
    """Analytically known constants, when the instance admits them.

    smoothness is the gradient Lipschitz bound, second_moment bounds the
    expected squared stochastic-gradient norm, pl is the
    Polyak-Lojasiewicz constant of the scalarized objective, optimal_value
    its infimum, and iterate_radius a bound on distances to the minimizer.
    """

    smoothness: float | None = None
    second_moment: float | None = None
    pl: float | None = None
    optimal_value: float | None = None
    iterate_radius: float | None = None

    def __post_init__(self):
        for name in ("smoothness", "second_moment", "pl", "optimal_value", "iterate_radius"):
            v = getattr(self, name)
            if v is not None and name != "optimal_value" and v < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.pl is not None and self.smoothness is not None and self.pl > self.smoothness + 1e-12:
            raise ValueError("pl constant cannot exceed the smoothness bound")


class MooProblem(abc.ABC):
    """Oracle interface for a stochastic multi-objective problem.

    Subclasses set q (objective count), n (flat dimension), batch_size
    (samples consumed per stochastic gradient draw, 1 for pure-noise
    oracles) and cost_factor (scalar component evaluations needed per
    emitted gradient component, 1 unless the problem wraps several
    objectives).
    """

    q: int
    n: int
    batch_size: int = 1
    cost_factor: int = 1
    #: number of enumerable samples behind the stochastic oracle, or None
    sample_count: int | None = None

    @abc.abstractmethod
    def value(self, k: int, x: np.ndarray) -> float:
        """Full-data objective value of objective k at x."""

    def values(self, x: np.ndarray) -> np.ndarray:
        return np.array([self.value(k, x) for k in range(self.q)])

    def test_values(self, x: np.ndarray) -> np.ndarray:
        """Objective values on held-out data; defaults to the training values."""
        return self.values(x)

    def full_gradient(self, k: int, x: np.ndarray) -> np.ndarray:
        """Exact gradient of objective k, when the problem can provide it."""
        raise ContractError(f"{type(self).__name__} does not expose exact gradients")

    @abc.abstractmethod
    def sample_context(self, rng: np.random.Generator) -> Any:
        """Draw the randomness for one stochastic gradient evaluation.

        Finite-sum problems return minibatch row indices (shared across
        objectives evaluated at the same step); noise-oracle problems
        return the generator itself.
        """

    @abc.abstractmethod
    def partial_gradient(self, k: int, block: np.ndarray, x: np.ndarray, ctx: Any) -> np.ndarray:
        """Stochastic gradient of objective k restricted to the block's coordinates."""

    def check_point(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise DimensionError(f"point has shape {x.shape}, expected ({self.n},)")
        return x


def weighted_value(problem: MooProblem, weights: np.ndarray, x: np.ndarray) -> float:
    """Scalarized objective sum_k weights[k] * f_k(x); zero weights are skipped."""
    total = 0.0
    for k in range(problem.q):
        if weights[k] != 0.0:
            total += weights[k] * problem.value(k, x)
    return total


class ScalarizedProblem(MooProblem):
    """Single-objective view sum_k w_k f_k of an underlying problem.

    One sample context is drawn per step and shared across the underlying
    objectives, and the cost factor reflects that every emitted gradient
    component aggregates one component per active objective.
    """

    def __init__(self, inner: MooProblem, weights: np.ndarray):
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (inner.q,):
            raise DimensionError(f"expected {inner.q} weights, got shape {weights.shape}")
        self.inner = inner
        self.weights = weights
        self.active = np.flatnonzero(weights)
        if self.active.size == 0:
            raise ContractError("scalarization needs at least one nonzero weight")
        self.q = 1
        self.n = inner.n
        self.batch_size = inner.batch_size
        self.cost_factor = inner.cost_factor * int(self.active.size)
        self.sample_count = inner.sample_count

    def value(self, k: int, x: np.ndarray) -> float:
        if k != 0:
            raise DimensionError("scalarized problem has a single objective")
        return weighted_value(self.inner, self.weights, x)

    def test_values(self, x: np.ndarray) -> np.ndarray:
        inner_vals = self.inner.test_values(x)
        return np.array([float(self.weights @ inner_vals)])

    def full_gradient(self, k: int, x: np.ndarray) -> np.ndarray:
        if k != 0:
            raise DimensionError("scalarized problem has a single objective")
        g = np.zeros(self.n)
        for j in self.active:
            g += self.weights[j] * self.inner.full_gradient(int(j), x)
        return g

    def sample_context(self, rng: np.random.Generator):
        return self.inner.sample_context(rng)

    def partial_gradient(self, k: int, block: np.ndarray, x: np.ndarray, ctx) -> np.ndarray:
        if k != 0:
            raise DimensionError("scalarized problem has a single objective")
        g = np.zeros(block.size)
        for j in self.active:
            g += self.weights[j] * self.inner.partial_gradient(int(j), block, x, ctx)
        return g
