"""Exception types raised across the package."""

from __future__ import annotations


class BlockSmooError(Exception):
    """Base class for all package errors."""


class DimensionError(BlockSmooError):
    """Shapes, counts, or index ranges do not line up."""


class InvalidBudgetError(BlockSmooError):
    """Frequency vector sums to zero: an empty cycle is undefined."""


class InvalidEntryError(BlockSmooError):
    """Frequency vector contains a negative entry."""


class NumericFailureError(BlockSmooError):
    """A non-finite value appeared during optimization.

    Carries the loop location (outer, block_pos, step) where it happened.
    """

    def __init__(self, message: str, location: tuple[int, int, int]):
        super().__init__(f"{message} at (t={location[0]}, i={location[1]}, j={location[2]})")
        self.location = location


class SamplingError(BlockSmooError):
    """Minibatch request cannot be satisfied."""


class StateError(BlockSmooError):
    """A run record is missing the data an operation needs."""


class ContractError(BlockSmooError):
    """An operation was called outside its documented preconditions."""


class DegenerateInstanceError(BlockSmooError):
    """Problem instance lacks a property the operation requires (e.g. positive definiteness)."""


class IngestionError(BlockSmooError):
    """Raw dataset files are missing or malformed."""


class SchemaDriftError(BlockSmooError):
    """The produced feature encoding deviates from the pinned schema.

    Carries the list of columns that were actually produced.
    """

    def __init__(self, message: str, columns: list[str]):
        super().__init__(f"{message}; produced columns: {columns}")
        self.columns = columns


class UndefinedMetricError(BlockSmooError):
    """A front metric is undefined for the given input (too few points)."""


class ConfigError(BlockSmooError):
    """Experiment configuration is invalid; carries the offending field path."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
