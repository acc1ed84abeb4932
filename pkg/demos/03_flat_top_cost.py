"""The flat-top mask and the log-compressed cost it induces.

The broadening target is a disc-shaped main beam (12 degrees wide) held
near 0 dB, with everything outside it pushed below -13 dB. The cost sums
one-sided squared dB errors over both regions and log-compresses the
total; pattern effectiveness maps that cost back to an intuitive 0-100%
score. A focused pencil beam scores poorly against this mask because
nearly the whole 12-degree disc sits far below 0 dB.

Run: python3 demos/03_flat_top_cost.py
"""

import numpy as np

from broadbeam import (ArrayConfig, SearchProblem, build_mask,
                       evaluate_cost, expand_solution, make_uv_grid,
                       pattern_effectiveness, synthesize_fft)

config = ArrayConfig(40, 40, 5, 5, phase_bits=6)
grid = make_uv_grid(256, config.spacing)
mask = build_mask(beamwidth_deg=12.0, sidelobe_db=-13.0,
                  transition_deg=0.0, grid=grid)
print(f"mask: {mask.mainbeam.sum()} main-beam bins, "
      f"{mask.sidelobe.sum()} sidelobe bins, beta = {mask.beta}")

problem = SearchProblem(config, beamwidth_deg=12.0, grid_size=256,
                        budget=10)

# all-zero phases: the focused pencil beam
pencil = synthesize_fft(np.ones((40, 40)), 256)
bd = evaluate_cost(pencil, mask)
print("focused pencil beam (all phases 0)")
print(f"  e_mb = {bd.e_mb:10.1f}   e_sl = {bd.e_sl:10.1f}")
print(f"  cost = {bd.cost:.4f}   P_eff = {bd.p_eff:.2f}%")

# a symmetric random quantized setting already trades main-beam fill
# against sidelobe spill
rng = np.random.default_rng(0)
best = None
for _ in range(200):
    sol = rng.integers(0, config.phase_levels, size=problem.free_count)
    pat = synthesize_fft(expand_solution(sol, problem.symmetry, config), 256)
    cand = evaluate_cost(pat, mask)
    if best is None or cand.cost < best.cost:
        best = cand
print("best of 200 random symmetric settings")
print(f"  e_mb = {best.e_mb:10.1f}   e_sl = {best.e_sl:10.1f}")
print(f"  cost = {best.cost:.4f}   P_eff = {best.p_eff:.2f}%")

print("effectiveness scale:")
for cost in (0.0, 5.0, 9.0, 9.44, 12.0):
    print(f"  cost {cost:5.2f} -> P_eff {pattern_effectiveness(cost, mask.beta):6.2f}%")
