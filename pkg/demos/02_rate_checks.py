"""Empirical convergence rates against the three theoretical regimes.

Each experiment runs the optimizer on a quadratic instance with known
constants across growing horizons, averages over seeds, and fits a
log-log slope. Expected: about -1 under the PL step rule with the last
iterate, about -0.5 for the time-averaged convex gap and for the
trajectory-averaged squared gradient norm on the non-convex instance.

Pass --full for the acceptance-sized horizons and seed counts.
"""

import sys

from blocksmoo.verify import (
    convex_rate_experiment,
    nonconvex_rate_experiment,
    pl_rate_experiment,
)

full = "--full" in sys.argv
kwargs = {} if full else {"horizons": (100, 200, 400, 800), "n_seeds": 8}

print(f"{'regime':>12} {'slope':>8} {'stderr':>8}  window")
for name, experiment in [
    ("pl", pl_rate_experiment),
    ("convex", convex_rate_experiment),
    ("non-convex", nonconvex_rate_experiment),
]:
    result = experiment(**kwargs)
    window = result.get("slope_window") or f"<= {result['slope_cap']}"
    flag = "ok" if result["passed"] else "OUT OF WINDOW"
    print(f"{name:>12} {result['slope']:>8.3f} {result['stderr']:>8.3f}  {window}  {flag}")

print()
print("levels per horizon (non-convex) vs. the theorem bound with measured constants:")
result = nonconvex_rate_experiment(**kwargs)
for horizon, level, rhs in zip(result["horizons"], result["levels"], result["bound_rhs"]):
    print(f"  T={horizon:>5}: level {level:.4e}  <=  bound {rhs:.4e}")
