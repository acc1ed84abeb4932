"""Comparing the three searchers on an exhaustively checkable instance.

An 8x8-element array in 2x2 subarrays with 3-bit shifters has only two
free distance groups: 64 candidate settings, so brute force finds the
certified optimum in milliseconds. All three metaheuristics are then run
from many seeds under the same 500-evaluation budget and scored by how
often they land exactly on that optimum.

Run: python3 demos/04_optimizer_comparison.py
"""

import numpy as np

from broadbeam import (GAParams, PSOParams, brute_force_search, run_ga,
                       run_pso, run_sa)
from broadbeam.verify import tiny_problem, tiny_sa_params

problem = tiny_problem(budget=500)
print(f"tiny instance: {problem.free_count} free dimensions, "
      f"{problem.phase_levels ** problem.free_count} candidates, budget 500")

optimum, opt_cost = brute_force_search(problem)
print(f"brute-force optimum: indices {optimum.tolist()} "
      f"(phases {(optimum * problem.config.phase_step_deg).tolist()} deg), "
      f"cost {opt_cost:.6f}\n")

RUNS = 50
print(f"{'algorithm':<10} {'hits':>8} {'mean final':>12} {'worst final':>12}")
for name, runner, params in (("sa", run_sa, tiny_sa_params()),
                             ("ga", run_ga, GAParams()),
                             ("pso", run_pso, PSOParams())):
    finals = [runner(problem, params, np.random.default_rng(seed)).cost
              for seed in range(RUNS)]
    hits = sum(f <= opt_cost + 1e-12 for f in finals)
    print(f"{name:<10} {hits:>5}/{RUNS} {np.mean(finals):>12.6f} "
          f"{np.max(finals):>12.6f}")

print("\nconvergence of one seeded run each (best cost so far):")
curves = {
    "sa": run_sa(problem, tiny_sa_params(), np.random.default_rng(3)),
    "ga": run_ga(problem, GAParams(), np.random.default_rng(3)),
    "pso": run_pso(problem, PSOParams(), np.random.default_rng(3)),
}
checkpoints = [1, 25, 50, 100, 250, 500]
print(f"{'eval':>6} " + " ".join(f"{n:>10}" for n in curves))
for i in checkpoints:
    row = " ".join(f"{curves[n].best_costs[i - 1]:>10.6f}" for n in curves)
    print(f"{i:>6} {row}")
