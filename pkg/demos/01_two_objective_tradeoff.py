"""Two conflicting quadratic objectives, one optimizer, several preferences.

The frequency vector decides how many gradient steps each objective gets
per cycle, which scalarizes the problem with weights m_k / p. Sliding the
counts from (1,7) to (7,1) walks the solution along the trade-off curve.
"""

import numpy as np

from blocksmoo import (
    BlockPartition,
    OptimizerConfig,
    StepSizeRule,
    run_block_smoo,
    validate_frequency_vector,
)
from blocksmoo.problems import BallNoise, QuadraticMoo

# two bowls with different minimizers: objective 0 wants x = (2, 2, 0, 0),
# objective 1 wants x = (0, 0, -2, -2)
mats = [np.eye(4), np.diag([1.5, 1.5, 1.0, 1.0])]
vecs = [np.array([2.0, 2.0, 0.0, 0.0]), np.array([0.0, 0.0, -2.0, -2.0])]
problem = QuadraticMoo(mats, vecs, noise=BallNoise(0.2))

partition = BlockPartition.from_sizes([2, 2])

print(f"{'counts':>10} {'f0':>10} {'f1':>10}")
for counts in [(1, 7), (2, 6), (4, 4), (6, 2), (7, 1)]:
    freq = validate_frequency_vector(list(counts), 2)
    config = OptimizerConfig(
        n_outer=400,
        partition=partition,
        freq=freq,
        step_rule=StepSizeRule.fixed(0.05),
        output_rule="average-iterate",
        seed=0,
    )
    record = run_block_smoo(problem, config)
    f0, f1 = problem.values(record.output)
    print(f"{str(counts):>10} {f0:>10.4f} {f1:>10.4f}")

print()
print("more steps for an objective pulls its loss down at the other's expense")
