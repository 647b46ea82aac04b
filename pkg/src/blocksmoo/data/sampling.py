"""Minibatch index sampling."""

from __future__ import annotations

import numpy as np

from ..errors import SamplingError


def sample_minibatch(split_size: int, batch: int, rng: np.random.Generator) -> np.ndarray:
    """batch distinct indices drawn uniformly from {0,...,split_size-1}."""
    if batch < 1:
        raise SamplingError("batch size must be >= 1")
    if batch > split_size:
        raise SamplingError(f"batch size {batch} exceeds split size {split_size}")
    return rng.choice(split_size, size=batch, replace=False)
