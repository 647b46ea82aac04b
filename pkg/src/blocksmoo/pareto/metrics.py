"""Front quality metrics: purity and the two spread measures.

Conventions (normative for this repo): the purity reference front is the
nondominated filter of the union of all compared fronts, membership is
decided after rounding objective vectors to 10 significant digits, and
both spread measures are computed per objective on sorted coordinates and
aggregated by the maximum over objectives.
"""

from __future__ import annotations

import numpy as np

from ..errors import DimensionError, UndefinedMetricError
from .front import as_points, nondominated_filter

SIGNIFICANT_DIGITS = 10


def _round_key(values: np.ndarray) -> tuple:
    return tuple(float(f"{v:.{SIGNIFICANT_DIGITS}g}") for v in values)


def _unique_rows(front) -> np.ndarray:
    pts = as_points(front)
    if not pts:
        raise UndefinedMetricError("empty front")
    dims = {p.objectives.size for p in pts}
    if len(dims) != 1:
        raise DimensionError(f"points mix objective dimensions {sorted(dims)}")
    return np.unique(np.vstack([p.objectives for p in pts]), axis=0)


def purity(front, reference_fronts) -> float:
    """Fraction of the front's own nondominated points that survive in the
    union reference front.

    The reference union always includes the front under evaluation, so the
    result lies in [0, 1] and equals 1 when the front is entirely
    nondominated within the union.
    """
    own = nondominated_filter(front)
    if len(own) == 0:
        raise UndefinedMetricError("purity is undefined for an empty front")
    union_points = as_points(front)
    for other in reference_fronts:
        union_points.extend(as_points(other))
    truth = nondominated_filter(union_points)
    truth_keys = {_round_key(p.objectives) for p in truth.points}
    hits = sum(1 for p in own.points if _round_key(p.objectives) in truth_keys)
    return hits / len(own)


def spread_gamma(front) -> float:
    """Largest gap between consecutive sorted coordinates, over all objectives."""
    values = _unique_rows(front)
    if values.shape[0] < 2:
        raise UndefinedMetricError("spread needs at least two distinct points")
    gaps = np.diff(np.sort(values, axis=0), axis=0)
    return float(gaps.max())


def spread_delta(front, reference=None) -> float:
    """Deviation of the gap distribution from uniform spacing.

    Per objective k, with sorted coordinates c_1..c_M, gaps d_i and mean
    gap dbar: (d_ext + sum|d_i - dbar|) / (d_ext + (M-1)*dbar), where
    d_ext = |c_1 - min_ref_k| + |c_M - max_ref_k| against the reference
    front's coordinate range. Without a reference the extreme terms are
    omitted (callers should flag that in reports). Aggregated by max over
    objectives.
    """
    values = _unique_rows(front)
    if values.shape[0] < 2:
        raise UndefinedMetricError("spread needs at least two distinct points")
    ref_values = None
    if reference is not None:
        ref_values = _unique_rows(reference)

    worst = 0.0
    for k in range(values.shape[1]):
        coords = np.sort(values[:, k])
        gaps = np.diff(coords)
        dbar = gaps.mean()
        deviation = np.abs(gaps - dbar).sum()
        d_ext = 0.0
        if ref_values is not None:
            d_ext = abs(coords[0] - ref_values[:, k].min()) + abs(coords[-1] - ref_values[:, k].max())
        denom = d_ext + (coords.size - 1) * dbar
        delta_k = 0.0 if denom == 0.0 else (d_ext + deviation) / denom
        worst = max(worst, delta_k)
    return worst
