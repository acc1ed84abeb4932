"""Self-verification suites behind the `verify` CLI command.

Each suite checks one correctness pillar against an independent oracle:
symmetry group counts by brute-force distance enumeration, FFT synthesis
against direct summation, the circular displacement correction, optimizer
budget accounting, and global-optimum recovery on an exhaustively
enumerable tiny instance. The whole set runs in well under a minute.
"""

import numpy as np

from .array_model import ArrayConfig, build_symmetry_map
from .optimizers import (GAParams, PSOParams, SAParams, SearchProblem,
                         brute_force_search, circular_distance, run_ga,
                         run_pso, run_sa)
from .pattern import synthesize_direct, synthesize_fft


def tiny_problem(budget: int = 500) -> SearchProblem:
    """8x8 elements in 2x2 subarrays, 3-bit shifters: 2 free dims, 64 candidates."""
    config = ArrayConfig(8, 8, 2, 2, spacing=0.5, phase_bits=3)
    return SearchProblem(config, beamwidth_deg=24.0, sidelobe_db=-13.0,
                         grid_size=32, budget=budget)


def tiny_sa_params() -> SAParams:
    # Schedule compressed so the full temperature range fits the 500-eval
    # budget; k raised so the short chain still accepts uphill moves early.
    return SAParams(alpha=0.97, k=0.3, iters_per_temp=5, t_stops=100)


def check_symmetry() -> tuple[bool, str]:
    ok = True
    details = []
    for n in range(2, 17):
        config = ArrayConfig(5 * n, 5 * n, 5, 5)
        got = build_symmetry_map(config).group_count
        offsets = [2 * i - n + 1 for i in range(n)]
        expected = len({a * a + b * b for a in offsets for b in offsets})
        if got != expected:
            ok = False
        if n in (8, 16):
            details.append(f"{n}x{n}->{got}")
    ok = ok and build_symmetry_map(ArrayConfig(40, 40, 5, 5)).group_count == 9
    ok = ok and build_symmetry_map(ArrayConfig(80, 80, 5, 5)).group_count == 32
    return ok, "group counts " + ", ".join(details)


def check_synthesis(sets: int = 20, rtol: float = 1e-9) -> tuple[bool, str]:
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(sets):
        exc = np.exp(2j * np.pi * rng.random((8, 8)))
        pat = synthesize_fft(exc, 64)
        vis = pat.grid.visible
        uu, vv = np.meshgrid(pat.grid.coords, pat.grid.coords, indexing="ij")
        # evaluate the oracle over the whole grid so both sides share the
        # full-grid peak normalization, then compare on the visible bins
        points = np.column_stack([uu.ravel(), vv.ravel()])
        direct = synthesize_direct(exc, points).reshape(pat.magnitude.shape)
        rel = (np.abs(pat.magnitude[vis] - direct[vis])
               / np.maximum(direct[vis], 1e-300))
        worst = max(worst, float(rel.max()))
    return worst <= rtol, f"max relative FFT/direct deviation {worst:.3e}"


def check_circular(samples: int = 10000) -> tuple[bool, str]:
    rng = np.random.default_rng(11)
    ok = float(circular_distance(10.0, 290.0)) == -80.0
    a = rng.uniform(-720, 720, samples)
    b = rng.uniform(-720, 720, samples)
    d = circular_distance(a, b)
    ok = ok and bool(np.all((d > -180.0) & (d <= 180.0)))
    # minimum-magnitude representative among all mod-360 equivalents
    alts = np.abs(d[:, None] + 360.0 * np.array([[-2, -1, 1, 2]]))
    ok = ok and bool(np.all(np.abs(d)[:, None] <= alts + 1e-9))
    return ok, "wrap-around displacement in (-180, 180], minimal magnitude"


def check_budget() -> tuple[bool, str]:
    problem = tiny_problem(budget=120)
    rng = np.random.default_rng(0)
    sa = run_sa(problem, SAParams(iters_per_temp=10, t_stops=5), rng)
    ok = sa.evaluations == 1 + 10 * 5
    sa_cap = run_sa(problem, SAParams(iters_per_temp=100, t_stops=100),
                    np.random.default_rng(1))
    ok = ok and sa_cap.evaluations == 120
    ga = run_ga(problem, GAParams(population=25), np.random.default_rng(2))
    pso = run_pso(problem, PSOParams(population=25), np.random.default_rng(3))
    ok = ok and ga.evaluations == 120 and pso.evaluations == 120
    return ok, f"SA {sa.evaluations}/{1 + 10 * 5}, capped {sa_cap.evaluations}/120"


def check_oracle_recovery(runs: int = 30) -> tuple[bool, str]:
    problem = tiny_problem()
    optimum, opt_cost = brute_force_search(problem)
    hits = {}
    for name, fn, params in (("sa", run_sa, tiny_sa_params()),
                             ("ga", run_ga, GAParams()),
                             ("pso", run_pso, PSOParams())):
        count = 0
        for e in range(runs):
            curve = fn(problem, params, np.random.default_rng(1000 + e))
            if curve.cost <= opt_cost + 1e-12:
                count += 1
        hits[name] = count
    ok = (hits["sa"] >= 0.7 * runs and hits["pso"] >= 0.7 * runs
          and hits["ga"] >= 0.5 * runs)
    rates = ", ".join(f"{k} {v}/{runs}" for k, v in hits.items())
    return ok, f"optimum cost {opt_cost:.4f}; hit rates {rates}"


SUITES = (
    ("symmetry", check_symmetry),
    ("synthesis", check_synthesis),
    ("circular", check_circular),
    ("budget", check_budget),
    ("oracle-recovery", check_oracle_recovery),
)


def run_all(out=print) -> bool:
    all_ok = True
    for name, fn in SUITES:
        ok, detail = fn()
        all_ok = all_ok and ok
        out(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return all_ok
