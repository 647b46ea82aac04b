"""Reduced-rank multi-target regression posed as a multi-objective problem.

The decision variable packs the two low-rank factors into one flat vector:
U (d x r) in row-major order first, then V (r x q) in row-major order, so
n = d*r + r*q. Objective k is the squared residual of response column k,
which touches only column k of V; that sparsity is what makes row-of-V
blocks cheap to update.
"""

from __future__ import annotations

import numpy as np

from ..data.sampling import sample_minibatch
from ..errors import DimensionError, SamplingError
from ..partition import BlockPartition
from .base import MooProblem


def rrr_objective(k: int, U: np.ndarray, V: np.ndarray, X: np.ndarray, Y: np.ndarray, normalize: bool = True) -> float:
    """Squared residual of response k: ||Y_k - X U V_k||^2, per-sample mean by default."""
    U = np.asarray(U, dtype=float)
    V = np.asarray(V, dtype=float)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.shape[1] != U.shape[0] or U.shape[1] != V.shape[0] or Y.shape[0] != X.shape[0]:
        raise DimensionError(
            f"inconsistent shapes X{X.shape} U{U.shape} V{V.shape} Y{Y.shape}"
        )
    if not 0 <= k < Y.shape[1]:
        raise DimensionError(f"objective index {k} outside [0, {Y.shape[1]})")
    resid = Y[:, k] - X @ (U @ V[:, k])
    total = float(resid @ resid)
    return total / X.shape[0] if normalize else total


class RrrProblem(MooProblem):
    """Stochastic oracle over a fixed (X, Y) training matrix pair."""

    def __init__(
        self,
        X: np.ndarray,
        Y: np.ndarray,
        rank: int,
        batch_size: int,
        normalize: bool = True,
        X_test: np.ndarray | None = None,
        Y_test: np.ndarray | None = None,
    ):
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        if X.ndim != 2 or Y.ndim != 2 or X.shape[0] != Y.shape[0]:
            raise DimensionError(f"X{X.shape} and Y{Y.shape} must share rows")
        if not 1 <= rank <= min(X.shape[1], Y.shape[1]):
            raise DimensionError(f"rank {rank} outside [1, min(d, q)]")
        if not 1 <= batch_size <= X.shape[0]:
            raise SamplingError(f"batch size {batch_size} outside [1, {X.shape[0]}]")
        self.X, self.Y = X, Y
        self.X_test, self.Y_test = X_test, Y_test
        self.d = X.shape[1]
        self.rank = int(rank)
        self.q = Y.shape[1]
        self.n = self.d * self.rank + self.rank * self.q
        self.batch_size = int(batch_size)
        self.normalize = bool(normalize)
        self.sample_count = X.shape[0]
        self._u_size = self.d * self.rank

    @classmethod
    def from_dataset(cls, dataset, rank: int, batch_size: int, normalize: bool = True) -> "RrrProblem":
        return cls(
            dataset.X_train,
            dataset.Y_train,
            rank,
            batch_size,
            normalize=normalize,
            X_test=dataset.X_test,
            Y_test=dataset.Y_test,
        )

    # flat packing ----------------------------------------------------------

    def pack(self, U: np.ndarray, V: np.ndarray) -> np.ndarray:
        return np.concatenate([np.asarray(U, dtype=float).ravel(), np.asarray(V, dtype=float).ravel()])

    def unpack(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        x = self.check_point(x)
        U = x[: self._u_size].reshape(self.d, self.rank)
        V = x[self._u_size :].reshape(self.rank, self.q)
        return U, V

    def two_block_partition(self) -> BlockPartition:
        """Blocks {U, V}."""
        return BlockPartition.from_sizes([self._u_size, self.rank * self.q])

    def per_row_partition(self) -> BlockPartition:
        """Blocks {U, row 1 of V, ..., row r of V}."""
        return BlockPartition.from_sizes([self._u_size] + [self.q] * self.rank)

    def random_init(self, rng: np.random.Generator, std: float = 0.1) -> np.ndarray:
        """Both factors drawn entrywise from N(0, std^2)."""
        return std * rng.standard_normal(self.n)

    # oracle ----------------------------------------------------------------

    def value(self, k, x):
        U, V = self.unpack(x)
        return rrr_objective(k, U, V, self.X, self.Y, normalize=self.normalize)

    def test_values(self, x):
        if self.X_test is None or self.Y_test is None:
            return self.values(x)
        U, V = self.unpack(x)
        return np.array(
            [rrr_objective(k, U, V, self.X_test, self.Y_test, normalize=self.normalize) for k in range(self.q)]
        )

    def full_gradient(self, k, x):
        return self._gradient(k, np.arange(self.n), x, np.arange(self.sample_count))

    def sample_context(self, rng):
        return sample_minibatch(self.sample_count, self.batch_size, rng)

    def partial_gradient(self, k, block, x, ctx):
        idx = np.asarray(ctx)
        if idx.size == 0:
            raise SamplingError("empty minibatch")
        return self._gradient(k, block, x, idx)

    def _gradient(self, k, block, x, rows):
        if not 0 <= k < self.q:
            raise DimensionError(f"objective index {k} outside [0, {self.q})")
        U, V = self.unpack(x)
        Xb = self.X[rows]
        resid = self.Y[rows, k] - Xb @ (U @ V[:, k])
        # raw-sum objectives need the minibatch mean rescaled to full-sum scale
        factor = 2.0 / rows.size if self.normalize else 2.0 * self.sample_count / rows.size

        out = np.empty(block.size)
        in_u = block < self._u_size
        if in_u.any():
            du = -factor * np.outer(Xb.T @ resid, V[:, k])
            out[in_u] = du.ravel()[block[in_u]]
        if (~in_u).any():
            rel = block[~in_u] - self._u_size
            rows_v = rel // self.q
            cols_v = rel % self.q
            dv_col = -factor * ((Xb @ U).T @ resid)  # gradient along column k of V
            vals = np.where(cols_v == k, dv_col[rows_v], 0.0)
            out[~in_u] = vals
        return out


def rrr_partial_gradient(problem: RrrProblem, block: np.ndarray, k: int, x: np.ndarray, minibatch) -> np.ndarray:
    """Functional form of RrrProblem.partial_gradient."""
    return problem.partial_gradient(k, np.asarray(block, dtype=np.intp), np.asarray(x, dtype=float), minibatch)
