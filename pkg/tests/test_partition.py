import pytest

from blocksmoo.errors import DimensionError
from blocksmoo.partition import BlockPartition


def test_from_sizes_contiguous():
    part = BlockPartition.from_sizes([2, 3, 1])
    assert part.total_dim == 6
    assert part.block_count == 3
    assert part.blocks[1].tolist() == [2, 3, 4]
    assert part.sizes == (2, 3, 1)


def test_single_block_covers_everything():
    part = BlockPartition.single(5)
    assert part.block_count == 1
    assert part.blocks[0].tolist() == [0, 1, 2, 3, 4]


def test_explicit_indices_any_order():
    part = BlockPartition.from_indices([[3, 1], [0, 2]], 4)
    assert part.blocks[0].tolist() == [3, 1]


def test_overlap_rejected():
    with pytest.raises(DimensionError):
        BlockPartition.from_indices([[0, 1], [1, 2]], 3)


def test_gap_rejected():
    with pytest.raises(DimensionError):
        BlockPartition.from_indices([[0], [2]], 3)


def test_empty_block_rejected():
    with pytest.raises(DimensionError):
        BlockPartition.from_indices([[0, 1, 2], []], 3)


def test_no_blocks_rejected():
    with pytest.raises(DimensionError):
        BlockPartition(blocks=(), total_dim=1)
