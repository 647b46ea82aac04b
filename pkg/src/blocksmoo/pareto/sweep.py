"""Sweeping the frequency simplex to trace out a Pareto front.

One optimization run per frequency vector, either with the alternating
optimizer or with the scalarized minibatch-SGD comparator, each run
reproducible from (root seed, vector index). Fronts and their quality
metrics are emitted as plain CSV and JSON.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from ..engine import LAST_ITERATE, OptimizerConfig, run_block_smoo
from ..errors import BlockSmooError, ContractError, DimensionError
from ..frequency import FrequencyVector, validate_frequency_vector
from ..partition import BlockPartition
from ..problems.base import MooProblem, ScalarizedProblem
from ..rng import purpose_stream
from ..schedule import RESHUFFLE
from ..steps import StepSizeRule
from .front import FrontPoint, as_points, nondominated_filter
from .metrics import purity, spread_delta, spread_gamma

BLOCK_SMOO = "block-smoo"
WEIGHTED_SUM = "weighted-sum"
COMPARATORS = (BLOCK_SMOO, WEIGHTED_SUM)


def enumerate_frequency_vectors(q: int, p: int) -> list[FrequencyVector]:
    """All length-q non-negative integer vectors summing to p, lexicographic.

    There are C(p+q-1, q-1) of them.
    """
    if q < 1 or p < 1:
        raise DimensionError("need q >= 1 and p >= 1")
    out: list[FrequencyVector] = []

    def extend(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            out.append(FrequencyVector(counts=tuple(prefix + [remaining])))
            return
        for v in range(remaining + 1):
            extend(prefix + [v], remaining - v, slots - 1)

    extend([], p, q)
    return out


@dataclass
class SweepConfig:
    """Shared settings for every run of a sweep.

    Budget is given either as data passes (translated through the
    problem's sample count and batch size into minibatch draws) or as an
    explicit outer-iteration count for problems without finite samples.
    """

    partition: BlockPartition
    seed: int = 0
    step_size: float = 0.02
    data_passes: int = 20
    n_outer: int | None = None
    init_std: float = 0.1
    schedule_policy: str = RESHUFFLE


def _draw_budget(problem: MooProblem, config: SweepConfig, cycle_steps: int) -> int:
    """Total minibatch draws granted to one run, then split into cycles."""
    if config.n_outer is not None:
        return config.n_outer * cycle_steps
    if problem.sample_count is None:
        raise ContractError("data-pass budgets need a finite-sample problem; set n_outer instead")
    draws = config.data_passes * problem.sample_count / problem.batch_size
    return max(1, round(draws))


def run_one(
    problem: MooProblem,
    config: SweepConfig,
    freq: FrequencyVector,
    comparator: str,
    run_index: int,
) -> FrontPoint:
    """Execute a single sweep cell and map its output into objective space."""
    if comparator not in COMPARATORS:
        raise ValueError(f"unknown comparator {comparator!r}")
    init_rng = purpose_stream(config.seed, "init", run_index)
    x0 = config.init_std * init_rng.standard_normal(problem.n)
    step_rule = StepSizeRule.fixed(config.step_size)

    if comparator == BLOCK_SMOO:
        cycle = config.partition.block_count * freq.budget
        n_outer = max(1, _draw_budget(problem, config, cycle) // cycle)
        run_cfg = OptimizerConfig(
            n_outer=n_outer,
            partition=config.partition,
            freq=freq,
            step_rule=step_rule,
            output_rule=LAST_ITERATE,
            seed=config.seed,
            schedule_policy=config.schedule_policy,
            x0=x0,
            run_index=run_index,
        )
        record = run_block_smoo(problem, run_cfg)
    else:
        scalarized = ScalarizedProblem(problem, freq.weights())
        run_cfg = OptimizerConfig(
            n_outer=_draw_budget(problem, config, 1),
            partition=BlockPartition.single(problem.n),
            freq=validate_frequency_vector([1], 1),
            step_rule=step_rule,
            output_rule=LAST_ITERATE,
            seed=config.seed,
            schedule_policy=config.schedule_policy,
            x0=x0,
            run_index=run_index,
        )
        record = run_block_smoo(scalarized, run_cfg)

    return FrontPoint(
        objectives=problem.test_values(record.output),
        freq=freq,
        seed=config.seed,
        work_units=record.work_units,
    )


def _run_one_task(args):
    problem, config, freq, comparator, index = args
    try:
        with np.errstate(over="ignore", invalid="ignore"):
            return index, run_one(problem, config, freq, comparator, run_index=index), None
    except (BlockSmooError, FloatingPointError) as exc:
        return index, None, str(exc)


def run_sweep(
    problem: MooProblem,
    config: SweepConfig,
    vectors: list[FrequencyVector],
    comparator: str,
    workers: int = 1,
) -> tuple[list[FrontPoint], list[dict]]:
    """One run per frequency vector; failed runs are logged, not fatal.

    Runs are independent (one stream namespace per vector index), so they
    may execute on a process pool; results come back in vector order
    either way.
    """
    for freq in vectors:
        if freq.q != problem.q:
            raise DimensionError(f"vector {freq.counts} does not match problem q={problem.q}")
    tasks = [(problem, config, freq, comparator, index) for index, freq in enumerate(vectors)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_one_task, tasks))
    else:
        outcomes = [_run_one_task(task) for task in tasks]

    points: list[FrontPoint] = []
    failures: list[dict] = []
    for index, point, error in outcomes:
        if point is not None:
            points.append(point)
        else:
            failures.append({"vector_index": index, "counts": list(vectors[index].counts), "error": error})
    return points, failures


def front_metrics(fronts: dict[str, list[FrontPoint]], failures: dict[str, int] | None = None) -> dict:
    """Purity and spread for each labeled front against the shared reference."""
    union: list[FrontPoint] = []
    for pts in fronts.values():
        union.extend(as_points(pts))
    reference = nondominated_filter(union)

    report: dict = {"counts": {}, "metrics": {}, "delta_extremes_included": True}
    for label, pts in fronts.items():
        own = nondominated_filter(pts, origin=label)
        others = [p for other_label, p in fronts.items() if other_label != label]
        report["counts"][label] = {"runs": len(pts), "nondominated": len(own)}
        entry = {"purity": purity(pts, others)}
        if len(own) >= 2:
            entry["spread_gamma"] = spread_gamma(own)
            entry["spread_delta"] = spread_delta(own, reference=reference)
        else:
            entry["spread_gamma"] = None
            entry["spread_delta"] = None
        report["metrics"][label] = entry
    if failures:
        report["failures"] = dict(failures)
    return report


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.remove(tmp)


def write_front_csv(points: list[FrontPoint], path: str) -> None:
    """One row per run: the frequency counts, the test losses, seed, work."""
    if not points:
        _atomic_write(path, "")
        return
    q = points[0].objectives.size
    m_len = len(points[0].freq.counts) if points[0].freq is not None else 0
    header = [f"m_{i}" for i in range(m_len)] + [f"loss_{k}" for k in range(q)] + ["seed", "work_units"]
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    for p in points:
        counts = list(p.freq.counts) if p.freq is not None else []
        writer.writerow(
            counts + [repr(float(v)) for v in p.objectives] + [p.seed, p.work_units]
        )
    _atomic_write(path, buf.getvalue())


def write_metrics_json(report: dict, path: str) -> None:
    _atomic_write(path, json.dumps(report, indent=2, sort_keys=True) + "\n")
