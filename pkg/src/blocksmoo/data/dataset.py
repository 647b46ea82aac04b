"""Dataset container, standardization, and the on-disk cache format.

A Dataset holds the full feature and response matrices with a contiguous
train/test row boundary (train rows come first). The cache is an .npz of
the arrays plus a JSON sidecar carrying column names, standardization
statistics, and provenance, so a preprocessed dataset is reproducible and
self-describing.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionError


@dataclass
class StandardizationStats:
    """Per-column centering and scale, computed on training rows only."""

    x_mean: np.ndarray
    x_scale: np.ndarray
    y_mean: np.ndarray
    y_scale: np.ndarray


@dataclass
class Dataset:
    X: np.ndarray
    Y: np.ndarray
    n_train: int
    provenance: dict = field(default_factory=dict)
    stats: StandardizationStats | None = None
    feature_names: list[str] | None = None
    response_names: list[str] | None = None

    def __post_init__(self):
        if self.X.ndim != 2 or self.Y.ndim != 2 or self.X.shape[0] != self.Y.shape[0]:
            raise DimensionError(f"X{self.X.shape} and Y{self.Y.shape} must share rows")
        if not 0 < self.n_train <= self.X.shape[0]:
            raise DimensionError(f"n_train={self.n_train} outside (0, {self.X.shape[0]}]")
        if not (np.isfinite(self.X).all() and np.isfinite(self.Y).all()):
            raise DimensionError("dataset contains non-finite entries")

    @property
    def n_test(self) -> int:
        return self.X.shape[0] - self.n_train

    @property
    def X_train(self) -> np.ndarray:
        return self.X[: self.n_train]

    @property
    def Y_train(self) -> np.ndarray:
        return self.Y[: self.n_train]

    @property
    def X_test(self) -> np.ndarray:
        return self.X[self.n_train :]

    @property
    def Y_test(self) -> np.ndarray:
        return self.Y[self.n_train :]

    def truncate(self, n_train: int, n_test: int) -> "Dataset":
        """Keep the earliest n_train training and earliest n_test test rows."""
        if n_train > self.n_train or n_test > self.n_test:
            raise DimensionError(
                f"cannot truncate to {n_train}/{n_test} from {self.n_train}/{self.n_test}"
            )
        X = np.vstack([self.X_train[:n_train], self.X_test[:n_test]])
        Y = np.vstack([self.Y_train[:n_train], self.Y_test[:n_test]])
        prov = dict(self.provenance)
        prov["truncated_to"] = [int(n_train), int(n_test)]
        return Dataset(
            X=X,
            Y=Y,
            n_train=n_train,
            provenance=prov,
            stats=self.stats,
            feature_names=self.feature_names,
            response_names=self.response_names,
        )


def standardize_columns(train: np.ndarray, full: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Center and scale every column of `full` by `train` statistics.

    Zero-variance columns keep scale 1 so they are centered but not divided.
    Returns (standardized, mean, scale).
    """
    mean = train.mean(axis=0)
    scale = train.std(axis=0)
    scale = np.where(scale > 0.0, scale, 1.0)
    return (full - mean) / scale, mean, scale


def destandardize_columns(standardized: np.ndarray, mean: np.ndarray, scale: np.ndarray) -> np.ndarray:
    return standardized * scale + mean


def file_digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def save_dataset(dataset: Dataset, path: str) -> str:
    """Write <path>.npz and <path>.json; returns the npz path."""
    base, _ = os.path.splitext(path)
    npz_path = base + ".npz"
    json_path = base + ".json"
    parent = os.path.dirname(os.path.abspath(npz_path))
    os.makedirs(parent, exist_ok=True)
    np.savez_compressed(npz_path, X=dataset.X, Y=dataset.Y, n_train=np.int64(dataset.n_train))
    sidecar = {
        "n_train": int(dataset.n_train),
        "n_test": int(dataset.n_test),
        "d": int(dataset.X.shape[1]),
        "q": int(dataset.Y.shape[1]),
        "feature_names": dataset.feature_names,
        "response_names": dataset.response_names,
        "provenance": dataset.provenance,
        "stats": None
        if dataset.stats is None
        else {
            "x_mean": dataset.stats.x_mean.tolist(),
            "x_scale": dataset.stats.x_scale.tolist(),
            "y_mean": dataset.stats.y_mean.tolist(),
            "y_scale": dataset.stats.y_scale.tolist(),
        },
        "array_digest": hashlib.sha256(dataset.X.tobytes() + dataset.Y.tobytes()).hexdigest(),
    }
    with open(json_path, "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
    return npz_path


def load_dataset(path: str) -> Dataset:
    base, _ = os.path.splitext(path)
    with np.load(base + ".npz") as arrays:
        X, Y, n_train = arrays["X"], arrays["Y"], int(arrays["n_train"])
    with open(base + ".json") as fh:
        sidecar = json.load(fh)
    stats = None
    if sidecar.get("stats"):
        raw = sidecar["stats"]
        stats = StandardizationStats(
            x_mean=np.asarray(raw["x_mean"]),
            x_scale=np.asarray(raw["x_scale"]),
            y_mean=np.asarray(raw["y_mean"]),
            y_scale=np.asarray(raw["y_scale"]),
        )
    return Dataset(
        X=X,
        Y=Y,
        n_train=n_train,
        provenance=sidecar.get("provenance", {}),
        stats=stats,
        feature_names=sidecar.get("feature_names"),
        response_names=sidecar.get("response_names"),
    )
