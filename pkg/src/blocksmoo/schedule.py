"""Cycle schedules: block order and objective order.

A schedule realizes one cycle of the optimizer: a permutation of the block
indices, and a sequence over objective indices in which each objective k
appears exactly counts[k] times.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .frequency import FrequencyVector

RESHUFFLE = "reshuffle-each-cycle"
FIXED = "fixed-contiguous"
POLICIES = (RESHUFFLE, FIXED)


@dataclass(frozen=True)
class Schedule:
    """One realized cycle: block permutation + objective order."""

    block_order: np.ndarray
    objective_order: np.ndarray


def _check_policy(policy: str) -> None:
    if policy not in POLICIES:
        raise ValueError(f"unknown schedule policy {policy!r}; expected one of {POLICIES}")


def build_block_permutation(s: int, policy: str, rng: np.random.Generator) -> np.ndarray:
    """Permutation of block indices 0..s-1 for one outer iteration.

    fixed-contiguous returns the identity; reshuffle draws uniformly.
    """
    _check_policy(policy)
    if s < 1:
        raise DimensionError("block count must be >= 1")
    if policy == FIXED:
        return np.arange(s)
    return rng.permutation(s)


def build_index_mapping(freq: FrequencyVector, policy: str, rng: np.random.Generator) -> np.ndarray:
    """Objective index for each of the budget's steps.

    Objective k occurs exactly counts[k] times. fixed-contiguous emits k
    repeated counts[k] times in index order; reshuffle permutes that
    multiset uniformly.
    """
    _check_policy(policy)
    base = np.repeat(np.arange(freq.q), freq.counts)
    if policy == FIXED:
        return base
    return rng.permutation(base)


def build_schedule(
    s: int, freq: FrequencyVector, policy: str, sigma_rng: np.random.Generator, pi_rng: np.random.Generator
) -> Schedule:
    return Schedule(
        block_order=build_block_permutation(s, policy, sigma_rng),
        objective_order=build_index_mapping(freq, policy, pi_rng),
    )
