"""Per-objective step counts and the weights they induce."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidBudgetError, InvalidEntryError


@dataclass(frozen=True)
class FrequencyVector:
    """How many gradient steps each objective receives within one cycle.

    The cycle budget is the sum of the counts; the induced scalarization
    weight of objective k is counts[k] / budget.
    """

    counts: tuple[int, ...]

    @property
    def budget(self) -> int:
        return sum(self.counts)

    @property
    def q(self) -> int:
        return len(self.counts)

    def weights(self) -> np.ndarray:
        return weighted_sum_weights(self)


def validate_frequency_vector(m, q: int) -> FrequencyVector:
    """Validate raw step counts against an objective count.

    Zeros are allowed (an objective may receive no steps) but the total
    budget must be positive and every entry non-negative.
    """
    counts = tuple(int(v) for v in m)
    if len(counts) != q:
        raise DimensionError(f"frequency vector has {len(counts)} entries, problem has q={q}")
    if any(v < 0 for v in counts):
        raise InvalidEntryError(f"negative step count in {counts}")
    if sum(counts) == 0:
        raise InvalidBudgetError("all step counts are zero; the cycle budget must be >= 1")
    return FrequencyVector(counts=counts)


def weighted_sum_weights(freq: FrequencyVector) -> np.ndarray:
    """Scalarization weights counts/budget; they sum to 1 up to rounding."""
    p = freq.budget
    return np.asarray(freq.counts, dtype=float) / float(p)
