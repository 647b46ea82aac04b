"""Independent single-objective reference loops used as equivalence oracles.

These deliberately do not call the main engine: they re-derive the update
sequence from scratch so the engine's two-loop bookkeeping can be checked
bit-for-bit against them in the degenerate single-objective settings.
"""

from __future__ import annotations

import numpy as np

from ..engine import OptimizerConfig, RunRecord, select_output
from ..errors import ContractError
from ..problems.base import MooProblem
from ..rng import purpose_stream
from ..schedule import FIXED


def reference_sgd(problem: MooProblem, config: OptimizerConfig) -> RunRecord:
    """Plain stochastic gradient descent; valid only for q=1, s=1."""
    if problem.q != 1:
        raise ContractError("reference SGD is a single-objective oracle (q=1)")
    if config.partition.block_count != 1:
        raise ContractError("reference SGD treats the variable as one block (s=1)")

    batch_rng = purpose_stream(config.seed, "minibatch", config.run_index)
    x = config.start_point()
    snapshots = [x.copy()]
    everything = np.arange(problem.n)
    steps_per_cycle = config.freq.budget
    work = 0
    for t in range(config.n_outer):
        alpha = config.step_rule.alpha(t, config.n_outer)
        for _ in range(steps_per_cycle):
            ctx = problem.sample_context(batch_rng)
            g = problem.partial_gradient(0, everything, x, ctx)
            x[everything] -= alpha * g
            work += problem.n * problem.batch_size * problem.cost_factor
        snapshots.append(x.copy())
    points = np.asarray(snapshots)
    output_rng = purpose_stream(config.seed, "output", config.run_index)
    return RunRecord(
        outer_points=points,
        output=select_output(points, config.output_rule, output_rng),
        work_units=work,
        seed=config.seed,
        output_rule=config.output_rule,
        n_outer=config.n_outer,
    )


def reference_bcd(problem: MooProblem, config: OptimizerConfig) -> RunRecord:
    """Stochastic block coordinate descent; valid only for q=1."""
    if problem.q != 1:
        raise ContractError("reference BCD is a single-objective oracle (q=1)")

    sigma_rng = purpose_stream(config.seed, "sigma", config.run_index)
    batch_rng = purpose_stream(config.seed, "minibatch", config.run_index)
    x = config.start_point()
    snapshots = [x.copy()]
    s = config.partition.block_count
    steps_per_block = config.freq.budget
    work = 0
    for t in range(config.n_outer):
        alpha = config.step_rule.alpha(t, config.n_outer)
        order = np.arange(s) if config.schedule_policy == FIXED else sigma_rng.permutation(s)
        for i in range(s):
            block = config.partition.blocks[order[i]]
            for _ in range(steps_per_block):
                ctx = problem.sample_context(batch_rng)
                g = problem.partial_gradient(0, block, x, ctx)
                x[block] -= alpha * g
                work += block.size * problem.batch_size * problem.cost_factor
        snapshots.append(x.copy())
    points = np.asarray(snapshots)
    output_rng = purpose_stream(config.seed, "output", config.run_index)
    return RunRecord(
        outer_points=points,
        output=select_output(points, config.output_rule, output_rng),
        work_units=work,
        seed=config.seed,
        output_rule=config.output_rule,
        n_outer=config.n_outer,
    )
