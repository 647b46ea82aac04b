"""Disjoint block decompositions of a flat decision vector."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError


@dataclass(frozen=True)
class BlockPartition:
    """Ordered list of disjoint index blocks covering {0,...,total_dim-1}.

    Blocks are stored as integer index arrays so selector matrices never
    have to be materialized.
    """

    blocks: tuple[np.ndarray, ...]
    total_dim: int
    _sizes: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.total_dim < 1:
            raise DimensionError("total_dim must be positive")
        if len(self.blocks) == 0:
            raise DimensionError("a partition needs at least one block")
        sizes = []
        for b in self.blocks:
            if b.size == 0:
                raise DimensionError("empty block in partition")
            sizes.append(int(b.size))
        flat = np.concatenate(self.blocks)
        if flat.size != self.total_dim or not np.array_equal(np.sort(flat), np.arange(self.total_dim)):
            raise DimensionError(
                "blocks must be pairwise disjoint and cover exactly {0,...,n-1}"
            )
        object.__setattr__(self, "_sizes", tuple(sizes))

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return self._sizes

    @classmethod
    def single(cls, n: int) -> "BlockPartition":
        """The whole vector as one block."""
        return cls(blocks=(np.arange(n),), total_dim=n)

    @classmethod
    def from_sizes(cls, sizes: list[int] | tuple[int, ...]) -> "BlockPartition":
        """Contiguous blocks of the given sizes, in order."""
        bounds = np.cumsum([0, *sizes])
        blocks = tuple(np.arange(bounds[i], bounds[i + 1]) for i in range(len(sizes)))
        return cls(blocks=blocks, total_dim=int(bounds[-1]))

    @classmethod
    def from_indices(cls, index_lists: list[list[int]], n: int) -> "BlockPartition":
        """Explicit index sets; validated for disjointness and coverage."""
        blocks = tuple(np.asarray(ix, dtype=np.intp) for ix in index_lists)
        return cls(blocks=blocks, total_dim=n)
