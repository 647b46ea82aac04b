from collections import Counter
from itertools import permutations

import numpy as np
import pytest

from blocksmoo.errors import DimensionError
from blocksmoo.frequency import validate_frequency_vector
from blocksmoo.schedule import (
    FIXED,
    RESHUFFLE,
    build_block_permutation,
    build_index_mapping,
    build_schedule,
)


class TestIndexMapping:
    def test_fixed_contiguous_is_sorted_repeats(self):
        freq = validate_frequency_vector([5, 15], 2)
        mapping = build_index_mapping(freq, FIXED, np.random.default_rng(0))
        assert mapping.tolist() == [0] * 5 + [1] * 15

    def test_single_admissible_sequence(self):
        freq = validate_frequency_vector([1, 0], 2)
        for policy in (FIXED, RESHUFFLE):
            mapping = build_index_mapping(freq, policy, np.random.default_rng(1))
            assert mapping.tolist() == [0]

    def test_multiplicity_over_many_samples(self):
        # every sampled mapping must carry exactly the prescribed counts
        freq = validate_frequency_vector([3, 2], 2)
        rng = np.random.default_rng(42)
        for _ in range(1000):
            mapping = build_index_mapping(freq, RESHUFFLE, rng)
            counts = Counter(mapping.tolist())
            assert counts[0] == 3 and counts[1] == 2

    def test_multiplicity_with_zero_count(self):
        freq = validate_frequency_vector([0, 3, 1], 3)
        rng = np.random.default_rng(7)
        for _ in range(200):
            mapping = build_index_mapping(freq, RESHUFFLE, rng)
            counts = Counter(mapping.tolist())
            assert counts[0] == 0 and counts[1] == 3 and counts[2] == 1


class TestBlockPermutation:
    def test_single_block(self):
        assert build_block_permutation(1, FIXED, np.random.default_rng(0)).tolist() == [0]
        assert build_block_permutation(1, RESHUFFLE, np.random.default_rng(0)).tolist() == [0]

    def test_fixed_is_identity(self):
        assert build_block_permutation(4, FIXED, np.random.default_rng(0)).tolist() == [0, 1, 2, 3]

    def test_zero_blocks_rejected(self):
        with pytest.raises(DimensionError):
            build_block_permutation(0, FIXED, np.random.default_rng(0))

    def test_reshuffle_uniform_over_permutations(self):
        # s=3: each of the 6 permutations should appear with frequency 1/6 +- 0.03
        rng = np.random.default_rng(123)
        counts = Counter()
        n_samples = 6000
        for _ in range(n_samples):
            counts[tuple(build_block_permutation(3, RESHUFFLE, rng).tolist())] += 1
        assert set(counts) == set(permutations(range(3)))
        for perm in counts:
            assert abs(counts[perm] / n_samples - 1 / 6) < 0.03

    def test_unknown_policy_rejected(self):
        with pytest.raises(ValueError):
            build_block_permutation(3, "sometimes", np.random.default_rng(0))


def test_build_schedule_bundles_both_orders():
    freq = validate_frequency_vector([2, 1], 2)
    schedule = build_schedule(
        3, freq, RESHUFFLE, np.random.default_rng(1), np.random.default_rng(2)
    )
    assert sorted(schedule.block_order.tolist()) == [0, 1, 2]
    assert Counter(schedule.objective_order.tolist()) == {0: 2, 1: 1}
