from .air_quality import (
    feature_columns,
    fetch_air_quality,
    load_air_quality,
    load_schema,
    preprocess_air_quality,
)
from .dataset import (
    Dataset,
    StandardizationStats,
    destandardize_columns,
    load_dataset,
    save_dataset,
    standardize_columns,
)
from .sampling import sample_minibatch
from .synthetic import generate_synthetic

__all__ = [
    "Dataset",
    "StandardizationStats",
    "standardize_columns",
    "destandardize_columns",
    "save_dataset",
    "load_dataset",
    "sample_minibatch",
    "generate_synthetic",
    "load_air_quality",
    "preprocess_air_quality",
    "fetch_air_quality",
    "feature_columns",
    "load_schema",
]
