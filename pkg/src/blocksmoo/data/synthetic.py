"""Synthetic low-rank regression data with known ground-truth factors."""

from __future__ import annotations

import numpy as np

from ..errors import DimensionError
from .dataset import Dataset


def generate_synthetic(
    seed: int,
    n_train: int = 2**14,
    n_test: int = 2**10,
    d: int = 400,
    q: int = 5,
    rank: int = 3,
    noise_sigma: float = 0.05,
) -> tuple[Dataset, np.ndarray, np.ndarray]:
    """Draw X, ground-truth factors, and noisy responses Y = X U* V* + eps.

    X, U*, V* are i.i.d. standard normal and eps is i.i.d. normal with the
    given standard deviation. Returns (dataset, U_star, V_star); training
    rows come first.
    """
    if rank > min(d, q) or rank < 1:
        raise DimensionError(f"rank {rank} outside [1, min(d={d}, q={q})]")
    if min(n_train, n_test, d, q) < 1:
        raise DimensionError("all sizes must be positive")
    if noise_sigma < 0:
        raise DimensionError("noise_sigma must be non-negative")

    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    n_total = n_train + n_test
    X = rng.standard_normal((n_total, d))
    U_star = rng.standard_normal((d, rank))
    V_star = rng.standard_normal((rank, q))
    Y = X @ U_star @ V_star
    if noise_sigma > 0:
        Y = Y + noise_sigma * rng.standard_normal((n_total, q))

    dataset = Dataset(
        X=X,
        Y=Y,
        n_train=n_train,
        provenance={
            "kind": "synthetic",
            "seed": int(seed),
            "n_train": n_train,
            "n_test": n_test,
            "d": d,
            "q": q,
            "rank": rank,
            "noise_sigma": noise_sigma,
        },
    )
    return dataset, U_star, V_star
