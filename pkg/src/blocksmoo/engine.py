"""The alternating optimizer: blocks in the outer cycle, objectives inside.

One run executes a two-loop structure. Each outer iteration draws a block
permutation; for each block in that order it draws an objective sequence
honoring the per-objective step counts, then applies one stochastic
partial-gradient step per entry of that sequence. Only the active block's
coordinates change within a step. Snapshots are taken at every outer
iteration boundary, and the final output point is selected according to
the rule matching the convergence regime of interest.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NumericFailureError, StateError
from .frequency import FrequencyVector
from .partition import BlockPartition
from .problems.base import MooProblem
from .rng import purpose_stream
from .schedule import RESHUFFLE, build_block_permutation, build_index_mapping
from .steps import StepSizeRule

UNIFORM_ITERATE = "uniform-random-iterate"
AVERAGE_ITERATE = "average-iterate"
LAST_ITERATE = "last-iterate"
OUTPUT_RULES = (UNIFORM_ITERATE, AVERAGE_ITERATE, LAST_ITERATE)


@dataclass
class OptimizerConfig:
    """Everything a run needs besides the problem itself.

    n_outer is the outer-iteration count. The output rule must match the
    regime being studied: uniform-random-iterate for non-convex gradient
    norms, average-iterate for convex gaps, last-iterate under the PL
    condition. run_index namespaces the random streams so sweeps can run
    many configurations off one root seed.

    snapshot_stride > 1 thins the stored outer snapshots (every stride-th
    boundary plus the final point); output rules then operate on the
    thinned set. Intended for memory relief on very long runs only.
    """

    n_outer: int
    partition: BlockPartition
    freq: FrequencyVector
    step_rule: StepSizeRule
    output_rule: str = LAST_ITERATE
    seed: int = 0
    schedule_policy: str = RESHUFFLE
    x0: np.ndarray | None = None
    run_index: int = 0
    snapshot_stride: int = 1

    def __post_init__(self):
        if self.n_outer < 0:
            raise DimensionError("outer-iteration count must be non-negative")
        if self.output_rule not in OUTPUT_RULES:
            raise ValueError(f"unknown output rule {self.output_rule!r}")
        if self.snapshot_stride < 1:
            raise ValueError("snapshot stride must be >= 1")

    def start_point(self) -> np.ndarray:
        if self.x0 is None:
            return np.zeros(self.partition.total_dim)
        x0 = np.asarray(self.x0, dtype=float)
        if x0.shape != (self.partition.total_dim,):
            raise DimensionError(f"x0 has shape {x0.shape}, expected ({self.partition.total_dim},)")
        return x0.copy()


@dataclass
class IterateState:
    """Mutable loop state: current point, loop counters, accumulated cost."""

    x: np.ndarray
    t: int = 0
    i: int = 0
    j: int = 0
    work_units: int = 0


@dataclass
class RunRecord:
    """Trajectory summary of one run.

    outer_points holds the outer-boundary snapshots (n_outer+1 of them at
    stride 1, fewer when thinned); output is the point the configured rule
    selected; n_outer is the realized outer-iteration count; losses stays
    None unless a caller fills it in afterwards.
    """

    outer_points: np.ndarray
    output: np.ndarray
    work_units: int
    seed: int
    output_rule: str
    n_outer: int
    losses: list | None = field(default=None)


def smoo_step(
    state: IterateState,
    block: np.ndarray,
    objective: int,
    alpha: float,
    problem: MooProblem,
    rng: np.random.Generator,
) -> IterateState:
    """One stochastic partial-gradient step on the given block and objective.

    Mutates and returns the state: the block's coordinates move against the
    sampled gradient, everything else is untouched, and the work counter
    grows by block size * batch size * the problem's cost factor.
    """
    if alpha <= 0:
        raise ValueError("step size must be strictly positive")
    ctx = problem.sample_context(rng)
    g = problem.partial_gradient(objective, block, state.x, ctx)
    if not np.all(np.isfinite(g)):
        raise NumericFailureError("non-finite gradient component", (state.t, state.i, state.j))
    state.x[block] -= alpha * g
    state.work_units += int(block.size) * problem.batch_size * problem.cost_factor
    return state


def run_block_smoo(problem: MooProblem, config: OptimizerConfig, max_seconds: float | None = None) -> RunRecord:
    """Execute the full two-loop run and select the output point.

    The run is a pure function of (problem, config): identical inputs give a
    bit-identical record. max_seconds optionally caps wall-clock time by
    stopping at an outer-iteration boundary (intended for wall-clock
    budget modes only; it breaks determinism).
    """
    if config.freq.q != problem.q:
        raise DimensionError(f"frequency vector has q={config.freq.q}, problem has q={problem.q}")
    if config.partition.total_dim != problem.n:
        raise DimensionError(
            f"partition covers {config.partition.total_dim} coordinates, problem has n={problem.n}"
        )

    sigma_rng = purpose_stream(config.seed, "sigma", config.run_index)
    pi_rng = purpose_stream(config.seed, "pi", config.run_index)
    batch_rng = purpose_stream(config.seed, "minibatch", config.run_index)

    state = IterateState(x=config.start_point())
    snapshots = [state.x.copy()]
    s = config.partition.block_count
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    completed = 0

    for t in range(config.n_outer):
        state.t = t
        alpha = config.step_rule.alpha(t, config.n_outer)
        block_order = build_block_permutation(s, config.schedule_policy, sigma_rng)
        for i in range(s):
            state.i = i
            block = config.partition.blocks[block_order[i]]
            objective_order = build_index_mapping(config.freq, config.schedule_policy, pi_rng)
            for j, k in enumerate(objective_order):
                state.j = j
                smoo_step(state, block, int(k), alpha, problem, batch_rng)
        completed = t + 1
        if completed % config.snapshot_stride == 0 or completed == config.n_outer:
            snapshots.append(state.x.copy())
        if deadline is not None and time.monotonic() >= deadline:
            if np.any(snapshots[-1] != state.x):
                snapshots.append(state.x.copy())
            break

    points = np.asarray(snapshots)
    output_rng = purpose_stream(config.seed, "output", config.run_index)
    output = select_output(points, config.output_rule, output_rng)
    return RunRecord(
        outer_points=points,
        output=output,
        work_units=state.work_units,
        seed=config.seed,
        output_rule=config.output_rule,
        n_outer=completed,
    )


def select_output(record, rule: str, rng: np.random.Generator | None = None) -> np.ndarray:
    """Pick the run's output point from its outer-boundary snapshots.

    uniform-random-iterate draws one of the first n_outer snapshots with
    equal probability, average-iterate averages those same snapshots, and
    last-iterate returns the final one. A record holding a single snapshot
    returns it under every rule.
    """
    points = record.outer_points if isinstance(record, RunRecord) else np.asarray(record)
    if points.ndim != 2 or points.shape[0] < 1:
        raise StateError("record has no snapshots to select from")
    if rule not in OUTPUT_RULES:
        raise ValueError(f"unknown output rule {rule!r}")
    if points.shape[0] == 1:
        return points[0].copy()
    if rule == LAST_ITERATE:
        return points[-1].copy()
    starts = points[:-1]
    if rule == AVERAGE_ITERATE:
        return starts.mean(axis=0)
    if rng is None:
        raise StateError("uniform-random-iterate needs a generator")
    return starts[int(rng.integers(starts.shape[0]))].copy()
