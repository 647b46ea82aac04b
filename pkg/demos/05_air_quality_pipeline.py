"""Air-quality ingestion walkthrough: raw station files to a model-ready cache.

Usage: python demos/05_air_quality_pipeline.py <dir-with-station-csvs>

The directory should contain the hourly per-station files of the Beijing
multi-site air-quality dataset (the `blocksmoo ingest --fetch` command can
download them). This script loads, preprocesses, reports the schema, and
fits a quick low-rank model on a truncated slice.
"""

import sys

import numpy as np

from blocksmoo import OptimizerConfig, StepSizeRule, run_block_smoo, validate_frequency_vector
from blocksmoo.data import load_air_quality, preprocess_air_quality
from blocksmoo.problems import RrrProblem

if len(sys.argv) != 2:
    print(__doc__)
    sys.exit(0)

raw = load_air_quality(sys.argv[1])
print(f"loaded {len(raw)} raw rows from {len(raw.attrs['source_digests'])} station files")

dataset = preprocess_air_quality(raw)
print(f"kept {dataset.X.shape[0]} complete rows; d={dataset.X.shape[1]}, q={dataset.Y.shape[1]}")
print(f"chronological split: {dataset.n_train} train / {dataset.n_test} test")

small = dataset.truncate(min(dataset.n_train, 2**14), min(dataset.n_test, 2**10))
problem = RrrProblem.from_dataset(small, rank=3, batch_size=512)
freq = validate_frequency_vector([2] * problem.q, problem.q)
config = OptimizerConfig(
    n_outer=20,
    partition=problem.two_block_partition(),
    freq=freq,
    step_rule=StepSizeRule.fixed(0.02),
    seed=0,
    x0=problem.random_init(np.random.default_rng(0)),
)
record = run_block_smoo(problem, config)
losses = problem.test_values(record.output)
print("test loss per pollutant after 20 cycles:")
for name, loss in zip(small.response_names, losses):
    print(f"  {name:>6}: {loss:.4f}")
