"""A miniature experiment matrix.

The real experiment sweeps every builtin scenario x team over ten seeds
(use `affectsim matrix --out results/` for that; it takes a few
minutes). This demo shrinks the grid to one scenario, two teams and
three seeds so the shape of the output is visible in seconds: per-cell
navigation scores and mean reported pleasure, both straight out of the
summary rows.
"""

import time

from affectsim import builtin_teams, run_matrix

teams = builtin_teams()

start = time.time()
report = run_matrix(
    scenarios=["scenario1"],
    teams=[teams["sanguine"], teams["melancholic"]],
    runs=3,
    base_seed=0,
)
elapsed = time.time() - start

print(f"{'scenario':<12} {'team':<12} {'mean time':>10} {'best':>7} {'pleasure':>9}")
for cell in report.cells:
    print(
        f"{cell.scenario:<12} {cell.team:<12} "
        f"{cell.mean_time_mean:10.1f} {cell.best_time_mean:7.1f} "
        f"{cell.pleasure:+9.3f}"
    )
print(f"\n{len(report.agent_rows)} agent rows in {elapsed:.1f}s")
print("sanguine robots hurry and cheer up; melancholics trail and sour.")
