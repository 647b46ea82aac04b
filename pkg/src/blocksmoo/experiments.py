"""Grid experiments: algorithms x step sizes x seeds under matched budgets.

A config describes one benchmark: the dataset, the model, the algorithm
grid, and a shared budget. Every cell runs independently and emits a CSV
of checkpointed losses; the summary selects, per algorithm, the step size
with the lowest seed-averaged final test loss. Output files carry no
timestamps so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .data.dataset import Dataset, load_dataset
from .data.synthetic import generate_synthetic
from .engine import LAST_ITERATE, OptimizerConfig, run_block_smoo
from .errors import BlockSmooError, ConfigError
from .frequency import FrequencyVector, validate_frequency_vector
from .partition import BlockPartition
from .pareto.sweep import _atomic_write
from .problems.base import MooProblem, ScalarizedProblem
from .problems.lowrank import RrrProblem
from .problems.quadratic import BallNoise, GaussianNoise, NoNoise, QuadraticMoo
from .rng import purpose_stream
from .schedule import POLICIES, RESHUFFLE
from .steps import StepSizeRule

BLOCK_SMOO = "block-smoo"
WEIGHTED_SUM = "weighted-sum"
FUNCTION_ALTERNATE = "function-alternate"
BLOCK_ALTERNATE = "block-alternate"
ALGORITHMS = (BLOCK_SMOO, WEIGHTED_SUM, FUNCTION_ALTERNATE, BLOCK_ALTERNATE)

PARTITION_PRESETS = ("two-block", "per-row", "single")
BUDGET_KINDS = ("work-units", "data-passes", "wall-clock")

DEFAULT_STEP_GRID = (0.001, 0.002, 0.005, 0.01, 0.02, 0.05)


@dataclass
class ExperimentConfig:
    problem: dict
    rank: int
    batch_size: int
    budget: dict
    algorithms: list = field(default_factory=lambda: list(ALGORITHMS))
    step_sizes: list = field(default_factory=lambda: list(DEFAULT_STEP_GRID))
    seeds: list = field(default_factory=lambda: list(range(10)))
    m: list | None = None
    partition: str = "two-block"
    schedule_policy: str = RESHUFFLE
    normalize: bool = True
    init_std: float = 0.1
    checkpoints: int = 20
    out_dir: str = "results"

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not isinstance(self.problem, dict) or "kind" not in self.problem:
            raise ConfigError("must be a mapping with a 'kind'", "problem")
        if self.rank < 1:
            raise ConfigError("must be >= 1", "rank")
        if self.batch_size < 1:
            raise ConfigError("must be >= 1", "batch_size")
        kind = self.budget.get("kind") if isinstance(self.budget, dict) else None
        if kind not in BUDGET_KINDS:
            raise ConfigError(f"kind must be one of {BUDGET_KINDS}", "budget.kind")
        if not self.budget.get("amount") or self.budget["amount"] <= 0:
            raise ConfigError("amount must be positive", "budget.amount")
        for idx, name in enumerate(self.algorithms):
            if name not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {name!r}", f"algorithms[{idx}]")
        for idx, step in enumerate(self.step_sizes):
            if step <= 0:
                raise ConfigError("step sizes must be positive", f"step_sizes[{idx}]")
        if self.m is not None:
            if any(int(v) < 0 for v in self.m) or sum(self.m) == 0:
                raise ConfigError("entries must be non-negative with positive sum", "m")
        if self.partition not in PARTITION_PRESETS:
            raise ConfigError(f"must be one of {PARTITION_PRESETS}", "partition")
        if self.schedule_policy not in POLICIES:
            raise ConfigError(f"must be one of {POLICIES}", "schedule_policy")
        if self.checkpoints < 1:
            raise ConfigError("must be >= 1", "checkpoints")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ConfigError(f"unknown fields {unknown}", unknown[0])
        missing = [f for f in ("problem", "rank", "batch_size", "budget") if f not in raw]
        if missing:
            raise ConfigError(f"missing required fields {missing}", missing[0])
        return cls(**raw)


def build_dataset(problem_cfg: dict) -> Dataset:
    kind = problem_cfg["kind"]
    if kind == "synthetic":
        dataset, _, _ = generate_synthetic(
            seed=problem_cfg.get("seed", 0),
            n_train=problem_cfg.get("n_train", 2**14),
            n_test=problem_cfg.get("n_test", 2**10),
            d=problem_cfg.get("d", 400),
            q=problem_cfg.get("q", 5),
            rank=problem_cfg.get("rank", 3),
            noise_sigma=problem_cfg.get("noise_sigma", 0.05),
        )
    elif kind == "cache":
        dataset = load_dataset(problem_cfg["path"])
    else:
        raise ConfigError(f"unknown problem kind {kind!r}", "problem.kind")
    truncate = problem_cfg.get("truncate")
    if truncate:
        dataset = dataset.truncate(int(truncate[0]), int(truncate[1]))
    responses = problem_cfg.get("responses")
    if responses:
        dataset = select_responses(dataset, [int(r) for r in responses])
    return dataset


def select_responses(dataset: Dataset, columns: list) -> Dataset:
    """Restrict the response matrix to the given columns (objective subset)."""
    if not columns or any(not 0 <= c < dataset.Y.shape[1] for c in columns):
        raise ConfigError(f"response columns {columns} outside [0, {dataset.Y.shape[1]})", "problem.responses")
    names = dataset.response_names
    return Dataset(
        X=dataset.X,
        Y=dataset.Y[:, columns],
        n_train=dataset.n_train,
        provenance={**dataset.provenance, "responses": list(columns)},
        stats=dataset.stats,
        feature_names=dataset.feature_names,
        response_names=[names[c] for c in columns] if names else None,
    )


def build_problem(config: ExperimentConfig, dataset: Dataset | None = None) -> MooProblem:
    if config.problem["kind"] == "quadratic":
        return _quadratic_from_cfg(config.problem)
    dataset = dataset if dataset is not None else build_dataset(config.problem)
    return RrrProblem.from_dataset(
        dataset, rank=config.rank, batch_size=config.batch_size, normalize=config.normalize
    )


def _quadratic_from_cfg(problem_cfg: dict) -> QuadraticMoo:
    rng = np.random.default_rng(problem_cfg.get("seed", 0))
    noise_cfg = problem_cfg.get("noise", {"kind": "gaussian", "scale": 0.3})
    makers = {"none": NoNoise, "gaussian": GaussianNoise, "ball": BallNoise}
    kind = noise_cfg.get("kind", "gaussian")
    if kind not in makers:
        raise ConfigError(f"unknown noise kind {kind!r}", "problem.noise.kind")
    noise = NoNoise() if kind == "none" else makers[kind](noise_cfg.get("scale", 0.3))
    return QuadraticMoo.random_instance(
        problem_cfg.get("q", 2), problem_cfg.get("n", 6), rng, noise=noise
    )


def partition_for(problem: MooProblem, preset: str) -> BlockPartition:
    if preset == "single":
        return BlockPartition.single(problem.n)
    if isinstance(problem, RrrProblem):
        return problem.two_block_partition() if preset == "two-block" else problem.per_row_partition()
    if preset == "two-block":
        if problem.n < 2:
            raise ConfigError("two-block partition needs n >= 2", "partition")
        half = problem.n // 2
        return BlockPartition.from_sizes([half, problem.n - half])
    raise ConfigError("per-row partitions only apply to factored regression problems", "partition")


@dataclass
class CellResult:
    algorithm: str
    step_size: float
    seed: int
    rows: list
    final_test_loss: float | None
    work_units: int
    failed: bool = False
    error: str = ""


def _cycle_work(problem: MooProblem, budget_steps: int) -> int:
    """Work units consumed by one outer iteration (all blocks, all inner steps)."""
    return problem.n * problem.batch_size * problem.cost_factor * budget_steps


def _outer_iterations(problem, partition, freq, budget: dict) -> tuple[int, float | None]:
    """Translate the configured budget into an outer-iteration count.

    Returns (n_outer, wall_clock_seconds or None).
    """
    kind, amount = budget["kind"], budget["amount"]
    if kind == "wall-clock":
        return 10**9, float(amount)
    per_outer = _cycle_work(problem, freq.budget)
    if kind == "work-units":
        return max(1, int(amount) // per_outer), None
    # data passes: every inner step consumes one minibatch of rows
    if problem.sample_count is None:
        raise ConfigError("data-pass budgets need a finite-sample problem", "budget.kind")
    draws = amount * problem.sample_count / problem.batch_size
    cycle_draws = partition.block_count * freq.budget
    return max(1, round(draws / cycle_draws)), None


def _cell_setup(problem: MooProblem, config: ExperimentConfig, algorithm: str, freq: FrequencyVector):
    """Resolve (problem view, partition, frequency vector) for one algorithm."""
    if algorithm == BLOCK_SMOO:
        return problem, partition_for(problem, config.partition), freq
    if algorithm == FUNCTION_ALTERNATE:
        return problem, BlockPartition.single(problem.n), freq
    scalarized = ScalarizedProblem(problem, freq.weights())
    single_freq = validate_frequency_vector([1], 1)
    if algorithm == WEIGHTED_SUM:
        return scalarized, BlockPartition.single(problem.n), single_freq
    return scalarized, partition_for(problem, config.partition), single_freq  # block-alternate


def run_cell(problem: MooProblem, config: ExperimentConfig, algorithm: str, step_size: float, seed: int) -> CellResult:
    """One (algorithm, step size, seed) run with checkpointed losses."""
    freq = validate_frequency_vector(config.m if config.m is not None else [2] * problem.q, problem.q)
    view, partition, view_freq = _cell_setup(problem, config, algorithm, freq)
    n_outer, max_seconds = _outer_iterations(view, partition, view_freq, config.budget)
    x0 = config.init_std * purpose_stream(seed, "init").standard_normal(problem.n)
    run_config = OptimizerConfig(
        n_outer=n_outer,
        partition=partition,
        freq=view_freq,
        step_rule=StepSizeRule.fixed(step_size),
        output_rule=LAST_ITERATE,
        seed=seed,
        schedule_policy=config.schedule_policy,
        x0=x0,
    )
    try:
        # grid cells are allowed to diverge; overflow there is data, not a bug
        with np.errstate(over="ignore", invalid="ignore"):
            record = run_block_smoo(view, run_config, max_seconds=max_seconds)
    except BlockSmooError as exc:
        return CellResult(algorithm, step_size, seed, [], None, 0, failed=True, error=str(exc))

    weights = freq.weights()
    per_outer = _cycle_work(view, view_freq.budget)
    realized = record.outer_points.shape[0] - 1
    picks = sorted(set(np.linspace(0, realized, min(config.checkpoints, realized) + 1).astype(int)))
    rows = []
    for t in picks:
        x = record.outer_points[t]
        train = problem.values(x)
        test = problem.test_values(x)
        rows.append(
            {
                "work_units": int(t) * per_outer,
                "train": train,
                "test": test,
                "fm_train": float(weights @ train),
                "fm_test": float(weights @ test),
            }
        )
    record.losses = rows
    return CellResult(
        algorithm,
        step_size,
        seed,
        rows,
        final_test_loss=rows[-1]["fm_test"],
        work_units=record.work_units,
    )


def _cell_filename(algorithm: str, step_size: float, seed: int) -> str:
    return f"{algorithm}_step{step_size:g}_seed{seed}.csv"


def write_cell_csv(result: CellResult, q: int, path: str) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf)
    header = (
        ["work_units"]
        + [f"train_loss_{k}" for k in range(q)]
        + [f"test_loss_{k}" for k in range(q)]
        + ["fm_train", "fm_test", "algorithm", "step_size", "seed"]
    )
    writer.writerow(header)
    for row in result.rows:
        writer.writerow(
            [row["work_units"]]
            + [repr(float(v)) for v in row["train"]]
            + [repr(float(v)) for v in row["test"]]
            + [repr(row["fm_train"]), repr(row["fm_test"])]
            + [result.algorithm, repr(float(result.step_size)), result.seed]
        )
    _atomic_write(path, buf.getvalue())


def _run_cell_task(args):
    problem, config_dict, algorithm, step, seed = args
    config = ExperimentConfig.from_dict(config_dict)
    return run_cell(problem, config, algorithm, step, seed)


def run_experiment(config: ExperimentConfig, workers: int = 1, out_dir: str | None = None) -> dict:
    """Run the whole grid and write cell CSVs plus the selection summary."""
    out = out_dir or config.out_dir
    cells_dir = os.path.join(out, "cells")
    os.makedirs(cells_dir, exist_ok=True)

    dataset = None if config.problem["kind"] == "quadratic" else build_dataset(config.problem)
    problem = build_problem(config, dataset)
    grid = [
        (algorithm, step, seed)
        for algorithm in config.algorithms
        for step in config.step_sizes
        for seed in config.seeds
    ]

    if workers > 1:
        tasks = [(problem, config.to_dict(), a, st, sd) for a, st, sd in grid]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell_task, tasks))
    else:
        results = [run_cell(problem, config, a, st, sd) for a, st, sd in grid]

    for result in results:
        if not result.failed:
            write_cell_csv(result, problem.q, os.path.join(cells_dir, _cell_filename(result.algorithm, result.step_size, result.seed)))

    summary = summarize(results)
    summary["config"] = config.to_dict()
    _atomic_write(os.path.join(out, "summary.json"), json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary


def summarize(results: list) -> dict:
    """Best step per algorithm by lowest seed-averaged final test loss."""
    summary: dict = {"algorithms": {}, "cells": len(results), "failed_cells": 0}
    by_algorithm: dict = {}
    for result in results:
        if result.failed:
            summary["failed_cells"] += 1
            continue
        by_algorithm.setdefault(result.algorithm, {}).setdefault(result.step_size, []).append(
            result.final_test_loss
        )
    for algorithm, per_step in by_algorithm.items():
        averages = {step: float(np.mean(losses)) for step, losses in per_step.items()}
        best_step = min(averages, key=lambda stp: averages[stp])
        summary["algorithms"][algorithm] = {
            "best_step_size": best_step,
            "best_mean_final_test_loss": averages[best_step],
            "per_step_mean_final_test_loss": {repr(k): v for k, v in sorted(averages.items())},
        }
    return summary
