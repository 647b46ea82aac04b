"""Nondominated filtering and the front containers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionError
from ..frequency import FrequencyVector


@dataclass(frozen=True)
class FrontPoint:
    """One candidate solution mapped into objective space."""

    objectives: np.ndarray
    freq: FrequencyVector | None = None
    seed: int | None = None
    work_units: int | None = None

    def __post_init__(self):
        obj = np.asarray(self.objectives, dtype=float).ravel()
        object.__setattr__(self, "objectives", obj)
        if not np.all(np.isfinite(obj)):
            raise DimensionError("front point has non-finite objective values")


@dataclass
class ParetoFront:
    points: list[FrontPoint] = field(default_factory=list)
    origin: str = ""

    def objective_matrix(self) -> np.ndarray:
        if not self.points:
            return np.empty((0, 0))
        return np.vstack([p.objectives for p in self.points])

    def __len__(self) -> int:
        return len(self.points)


def dominates(a: np.ndarray, b: np.ndarray) -> bool:
    """True when a is at least as good everywhere and strictly better somewhere."""
    return bool(np.all(a <= b) and np.any(a < b))


def nondominated_mask(values: np.ndarray) -> np.ndarray:
    """Boolean mask of rows not weakly dominated by any other row.

    Exact duplicate rows keep exactly one representative (the first).
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    keep = np.ones(n, dtype=bool)
    order = np.lexsort(values.T[::-1])  # ascending by first objective, then the rest
    seen = set()
    for pos, idx in enumerate(order):
        row = values[idx]
        key = row.tobytes()
        if key in seen:
            keep[idx] = False
            continue
        seen.add(key)
        # earlier rows in the sort are the only possible dominators
        for other_pos in range(pos):
            other = values[order[other_pos]]
            if not keep[order[other_pos]]:
                continue
            if np.all(other <= row) and np.any(other < row):
                keep[idx] = False
                break
    return keep


def as_points(front) -> list[FrontPoint]:
    if isinstance(front, ParetoFront):
        return list(front.points)
    out = []
    for p in front:
        out.append(p if isinstance(p, FrontPoint) else FrontPoint(objectives=np.asarray(p, dtype=float)))
    return out


def nondominated_filter(points, origin: str = "") -> ParetoFront:
    """Keep exactly the points no other point weakly dominates."""
    pts = as_points(points)
    if not pts:
        return ParetoFront(points=[], origin=origin)
    dims = {p.objectives.size for p in pts}
    if len(dims) != 1:
        raise DimensionError(f"points mix objective dimensions {sorted(dims)}")
    values = np.vstack([p.objectives for p in pts])
    keep = nondominated_mask(values)
    return ParetoFront(points=[p for p, k in zip(pts, keep) if k], origin=origin)
