"""Beijing multi-site air-quality ingestion and preprocessing.

The raw input is the published per-station layout: one comma-separated
file per monitoring station, hourly rows, header-driven columns. The
pipeline concatenates the stations, drops rows with any missing value,
one-hot encodes wind direction and station against fixed vocabularies,
encodes hour-of-day cyclically, splits chronologically 70/30, and
standardizes features and responses with training-set statistics. The
exact 35-column feature recipe is pinned in air_quality_schema.json and
enforced at runtime.
"""

from __future__ import annotations

import io
import json
import os
import urllib.request
import zipfile
from importlib import resources

import numpy as np
import pandas as pd

from ..errors import IngestionError, SchemaDriftError
from .dataset import Dataset, StandardizationStats, file_digest, standardize_columns

UCI_ARCHIVE_URL = "https://archive.ics.uci.edu/static/public/501/beijing+multi+site+air+quality+data.zip"

TIME_COLUMNS = ["year", "month", "day", "hour"]
RAW_NUMERIC = ["PM2.5", "PM10", "SO2", "NO2", "CO", "O3", "TEMP", "PRES", "DEWP", "RAIN", "WSPM"]
RAW_REQUIRED = TIME_COLUMNS + RAW_NUMERIC + ["wd", "station"]


def load_schema() -> dict:
    with resources.files("blocksmoo.data").joinpath("air_quality_schema.json").open() as fh:
        return json.load(fh)


def feature_columns(schema: dict | None = None) -> list[str]:
    """The pinned feature column names, in encoding order."""
    schema = schema or load_schema()
    cols = list(schema["numeric_features"]) + list(schema["hour_features"])
    cols += [f"wd={w}" for w in schema["wind_directions"]]
    cols += [f"station={s}" for s in schema["stations"]]
    return cols


def load_air_quality(path: str) -> pd.DataFrame:
    """Concatenate every station file under `path` into one raw table.

    Parsing is header-driven, so column order in the files does not
    matter. Unparseable numeric cells become missing values and are
    dropped later in preprocessing.
    """
    if not os.path.isdir(path):
        raise IngestionError(f"dataset directory not found: {path}")
    files = sorted(f for f in os.listdir(path) if f.lower().endswith(".csv"))
    if not files:
        raise IngestionError(f"no station files (*.csv) in {path}")

    frames = []
    digests = {}
    for name in files:
        full = os.path.join(path, name)
        try:
            frame = pd.read_csv(full)
        except Exception as exc:
            raise IngestionError(f"cannot parse station file {name}: {exc}") from exc
        missing = [c for c in RAW_REQUIRED if c not in frame.columns]
        if missing:
            raise IngestionError(f"station file {name} lacks required columns {missing}")
        frames.append(frame[RAW_REQUIRED])
        digests[name] = file_digest(full)

    raw = pd.concat(frames, ignore_index=True)
    raw.attrs["source_digests"] = digests
    raw.attrs["source_dir"] = os.path.abspath(path)
    return raw


def preprocess_air_quality(raw: pd.DataFrame) -> Dataset:
    """Raw table to a standardized, chronologically split Dataset.

    Responses are the six pollutant concentrations; features follow the
    pinned schema (d must land at 35 or a schema-drift error is raised).
    The first ceil(70%) of time-sorted rows form the training set.
    """
    schema = load_schema()
    table = raw.copy()

    for col in TIME_COLUMNS + RAW_NUMERIC:
        table[col] = pd.to_numeric(table[col], errors="coerce")
    table["wd"] = table["wd"].astype("string").str.strip()
    table["station"] = table["station"].astype("string").str.strip()
    table.loc[table["wd"].isin(["", "NA"]), "wd"] = pd.NA
    table.loc[table["station"].isin(["", "NA"]), "station"] = pd.NA

    table = table.dropna(subset=RAW_REQUIRED).reset_index(drop=True)
    if len(table) == 0:
        raise IngestionError("no complete rows survive missing-value removal")

    unknown_wd = sorted(set(table["wd"]) - set(schema["wind_directions"]))
    unknown_station = sorted(set(table["station"]) - set(schema["stations"]))
    if unknown_wd or unknown_station:
        raise SchemaDriftError(
            f"values outside the pinned vocabularies (wd: {unknown_wd}, station: {unknown_station})",
            feature_columns(schema),
        )

    table = table.sort_values(TIME_COLUMNS + ["station"], kind="stable").reset_index(drop=True)

    features = {}
    for col in schema["numeric_features"]:
        features[col] = table[col].to_numpy(dtype=float)
    hour_angle = 2.0 * np.pi * table["hour"].to_numpy(dtype=float) / 24.0
    features["hour_sin"] = np.sin(hour_angle)
    features["hour_cos"] = np.cos(hour_angle)
    for w in schema["wind_directions"]:
        features[f"wd={w}"] = (table["wd"] == w).to_numpy(dtype=float)
    for s in schema["stations"]:
        features[f"station={s}"] = (table["station"] == s).to_numpy(dtype=float)

    names = list(features.keys())
    expected = feature_columns(schema)
    if names != expected or len(names) != schema["expected_feature_count"]:
        raise SchemaDriftError(
            f"encoding produced {len(names)} feature columns, expected {schema['expected_feature_count']}",
            names,
        )

    X = np.column_stack([features[c] for c in names])
    Y = np.column_stack([table[c].to_numpy(dtype=float) for c in schema["responses"]])

    n_rows = X.shape[0]
    n_test = int(np.floor(0.3 * n_rows))
    n_train = n_rows - n_test
    if n_train < 1:
        raise IngestionError(f"too few rows ({n_rows}) for a 70/30 split")

    X_std, x_mean, x_scale = standardize_columns(X[:n_train], X)
    Y_std, y_mean, y_scale = standardize_columns(Y[:n_train], Y)

    stamps = table[TIME_COLUMNS].to_numpy(dtype=int)
    provenance = {
        "kind": "air-quality",
        "source_dir": raw.attrs.get("source_dir"),
        "source_digests": raw.attrs.get("source_digests", {}),
        "rows_in": int(len(raw)),
        "rows_kept": int(n_rows),
        "train_time_range": [stamps[0].tolist(), stamps[n_train - 1].tolist()],
        "test_time_range": [stamps[n_train].tolist(), stamps[-1].tolist()] if n_test else None,
    }
    return Dataset(
        X=X_std,
        Y=Y_std,
        n_train=n_train,
        provenance=provenance,
        stats=StandardizationStats(x_mean=x_mean, x_scale=x_scale, y_mean=y_mean, y_scale=y_scale),
        feature_names=names,
        response_names=list(schema["responses"]),
    )


def fetch_air_quality(dest_dir: str, url: str = UCI_ARCHIVE_URL) -> list[str]:
    """Download and extract the public archive; returns extracted file paths.

    Digests of the extracted files are recorded by the loader, not checked
    against a pinned constant here.
    """
    os.makedirs(dest_dir, exist_ok=True)
    with urllib.request.urlopen(url) as response:
        payload = response.read()
    extracted = _extract_station_csvs(payload, dest_dir)
    if not extracted:
        raise IngestionError(f"archive from {url} contained no station files")
    return sorted(extracted)


def _extract_station_csvs(payload: bytes, dest_dir: str) -> list[str]:
    out = []
    with zipfile.ZipFile(io.BytesIO(payload)) as archive:
        for info in archive.infolist():
            name = os.path.basename(info.filename)
            if name.lower().endswith(".zip"):
                out.extend(_extract_station_csvs(archive.read(info), dest_dir))
            elif name.lower().endswith(".csv"):
                target = os.path.join(dest_dir, name)
                with open(target, "wb") as fh:
                    fh.write(archive.read(info))
                out.append(target)
    return out
