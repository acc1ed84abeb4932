"""Command-line entry point: run experiments, verify, inspect, re-export.

Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.
The BEAM_SEED environment variable (integer) overrides the configured
base seed.
"""

import argparse
import os
import sys

from .errors import ConfigurationError
from .experiment import (ALGORITHMS, AggregateStats, AlgorithmStats,
                         ExperimentConfig, RunRecord, aggregate,
                         export_artifacts, load_config, load_solution_csv,
                         run_experiment)


def _load(path) -> ExperimentConfig:
    if path is None:
        return ExperimentConfig()
    return load_config(path)


def _apply_seed_override(cfg: ExperimentConfig):
    env = os.environ.get("BEAM_SEED")
    if env is not None:
        try:
            cfg.budget.base_seed = int(env)
        except ValueError:
            raise ConfigurationError(f"BEAM_SEED must be an integer, got {env!r}")


def cmd_run(args) -> int:
    cfg = _load(args.config)
    if args.algo != "all":
        cfg.algorithms = (args.algo,)
    if args.executions is not None:
        cfg.budget.executions = args.executions
    _apply_seed_override(cfg)
    cfg.validate()
    records = run_experiment(cfg, jobs=args.jobs)
    stats = aggregate(records)
    export_artifacts(stats, records, cfg, args.out, decimate=args.decimate)
    print(f"{'algorithm':<10}{'best':>14}{'mean final':>14}{'best P_eff %':>14}")
    for algo in cfg.algorithms:
        s = stats.per_algorithm[algo]
        print(f"{algo:<10}{s.best_record.curve.cost:>14.6f}"
              f"{s.mean_final:>14.6f}{s.best_record.breakdown.p_eff:>14.6f}")
    print(f"artifacts written to {args.out}")
    return 0


def cmd_verify(args) -> int:
    from .verify import run_all
    return 0 if run_all() else 1


def cmd_info(args) -> int:
    cfg = _load(args.config)
    problem = cfg.make_problem()
    levels = cfg.array.phase_levels
    print(f"array: {cfg.array.elements_x}x{cfg.array.elements_y} elements, "
          f"{cfg.array.subarray_x}x{cfg.array.subarray_y} subarrays, "
          f"{cfg.array.phase_bits}-bit phase shifters")
    print(f"distance groups: {problem.symmetry.group_count}")
    print(f"free dimensions: {problem.free_count}, "
          f"space: {levels}^{problem.free_count}")
    print(f"grid size: {cfg.pattern.grid_size}")
    print(f"beta (classified bins): {problem.mask.beta}")
    return 0


def cmd_export(args) -> int:
    cfg = _load(args.config)
    solution = load_solution_csv(args.solution)
    problem = cfg.make_problem()
    if solution.size != problem.free_count:
        raise ConfigurationError(
            f"solution has {solution.size} free phases, config needs "
            f"{problem.free_count}")
    breakdown = problem.breakdown_of(solution)
    import numpy as np

    from .optimizers import ConvergenceCurve
    curve = ConvergenceCurve(best_costs=np.array([breakdown.cost]),
                             solution=solution, cost=breakdown.cost)
    rec = RunRecord(algorithm="stored", execution=0, seed=cfg.budget.base_seed,
                    curve=curve, solution=solution, breakdown=breakdown,
                    wall_time=0.0)
    stats = AggregateStats(per_algorithm={"stored": AlgorithmStats(
        algorithm="stored", executions=1, mean_curve=curve.best_costs,
        best_record=rec, mean_final=breakdown.cost, min_final=breakdown.cost,
        max_final=breakdown.cost, std_final=0.0)})
    cfg.algorithms = ("stored",)
    export_artifacts(stats, [rec], cfg, args.out)
    print(f"re-synthesized stored solution: cost {breakdown.cost:.6f}, "
          f"P_eff {breakdown.p_eff:.4f}%")
    print(f"artifacts written to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="broadbeam",
        description="Phase-only beam broadening of subarrayed planar arrays "
                    "via SA, GA, and PSO")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment and export artifacts")
    p_run.add_argument("--config", help="experiment config file (defaults: 40x40 benchmark)")
    p_run.add_argument("--algo", default="all", choices=(*ALGORITHMS, "all"))
    p_run.add_argument("--out", default="out", help="output directory")
    p_run.add_argument("--executions", type=int, default=None)
    p_run.add_argument("--decimate", type=int, default=1,
                       help="keep every k-th convergence-curve point")
    p_run.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                       help="worker processes for executions")
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify", help="run the built-in oracle suites")
    p_verify.set_defaults(func=cmd_verify)

    p_info = sub.add_parser("info", help="show solution-space sizing for a config")
    p_info.add_argument("--config")
    p_info.set_defaults(func=cmd_info)

    p_export = sub.add_parser("export",
                              help="re-synthesize artifacts from a stored solution")
    p_export.add_argument("--config")
    p_export.add_argument("--solution", required=True,
                          help="best_solution.csv from a previous run")
    p_export.add_argument("--out", default="out")
    p_export.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
