"""Experiment configuration, repeated seeded runs, statistics, and CSV export.

A config file uses INI-style sections [array], [pattern], [budget], [sa],
[ga], [pso] with key = value pairs and '#' comments; every key is optional
and defaults reproduce the 40x40 benchmark (5x5 subarrays, 6-bit shifters,
half-wavelength spacing, 12 degree flat top at -13 dB, 20,000 evaluations,
100 executions). Execution e of every algorithm is seeded base_seed + e, so
reruns are byte-identical regardless of worker parallelism.
"""

import concurrent.futures
import configparser
import csv
import math
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .array_model import (ArrayConfig, dequantize_phase, element_group_map,
                          expand_solution)
from .cost import CostBreakdown
from .errors import AggregationError, ConfigurationError
from .optimizers import (ConvergenceCurve, GAParams, PSOParams, SAParams,
                         SearchProblem, run_ga, run_pso, run_sa)
from .pattern import extract_cut, synthesize_fft

ALGORITHMS = ("sa", "ga", "pso")


@dataclass
class PatternSettings:
    grid_size: int = 256
    beamwidth_deg: float = 12.0
    sidelobe_db: float = -13.0
    transition_deg: float = 0.0
    db_floor: float = -100.0


@dataclass
class BudgetSettings:
    evaluations: int = 20000
    executions: int = 100
    base_seed: int = 0


@dataclass
class ExperimentConfig:
    array: ArrayConfig = field(default_factory=lambda: ArrayConfig(40, 40, 5, 5))
    pattern: PatternSettings = field(default_factory=PatternSettings)
    budget: BudgetSettings = field(default_factory=BudgetSettings)
    algorithms: tuple = ALGORITHMS
    sa: SAParams = field(default_factory=SAParams)
    ga: GAParams = None
    pso: PSOParams = None

    def __post_init__(self):
        # Population defaults follow the benchmark sizing: 25 for arrays
        # below 80 elements per axis, 50 at 80 and above.
        default_pop = 50 if max(self.array.elements_x, self.array.elements_y) >= 80 else 25
        if self.ga is None:
            self.ga = GAParams(population=default_pop)
        if self.pso is None:
            self.pso = PSOParams(population=default_pop)
        self.validate()

    def validate(self):
        if self.budget.executions < 1:
            raise ConfigurationError("executions must be >= 1")
        if self.budget.evaluations < 1:
            raise ConfigurationError("evaluations must be >= 1")
        largest = max(p.population for p in (self.ga, self.pso))
        if self.budget.evaluations < largest:
            raise ConfigurationError(
                f"evaluations ({self.budget.evaluations}) must be >= the "
                f"largest population ({largest})")
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise ConfigurationError(f"unknown algorithm {algo!r}")

    def make_problem(self) -> SearchProblem:
        return SearchProblem(self.array,
                             beamwidth_deg=self.pattern.beamwidth_deg,
                             sidelobe_db=self.pattern.sidelobe_db,
                             transition_deg=self.pattern.transition_deg,
                             grid_size=self.pattern.grid_size,
                             db_floor=self.pattern.db_floor,
                             budget=self.budget.evaluations)


@dataclass
class RunRecord:
    algorithm: str
    execution: int
    seed: int
    curve: ConvergenceCurve
    solution: np.ndarray
    breakdown: CostBreakdown
    wall_time: float


@dataclass
class AlgorithmStats:
    algorithm: str
    executions: int
    mean_curve: np.ndarray
    best_record: RunRecord
    mean_final: float
    min_final: float
    max_final: float
    std_final: float


@dataclass
class AggregateStats:
    per_algorithm: dict  # algorithm id -> AlgorithmStats


_SECTION_KEYS = {
    "array": ("elements_x", "elements_y", "subarray_x", "subarray_y",
              "spacing", "phase_bits"),
    "pattern": ("grid_size", "beamwidth_deg", "sidelobe_db", "transition_deg",
                "db_floor"),
    "budget": ("evaluations", "executions", "base_seed", "algorithms"),
    "sa": ("t0", "alpha", "k", "iters_per_temp", "t_stops"),
    "ga": ("population", "crossover_fraction", "mutation_rate", "elite_fraction"),
    "pso": ("population", "omega", "c1", "c2"),
}

_INT_KEYS = {"elements_x", "elements_y", "subarray_x", "subarray_y", "phase_bits",
             "grid_size", "evaluations", "executions", "base_seed",
             "iters_per_temp", "t_stops", "population"}


def load_config(path) -> ExperimentConfig:
    """Parse and validate a config file, applying benchmark defaults.

    Unknown sections or keys, unparseable values, and invariant violations
    all raise ConfigurationError naming the offender.
    """
    if not os.path.exists(path):
        raise ConfigurationError(f"config file not found: {path}")
    parser = configparser.ConfigParser(comment_prefixes=("#",),
                                       inline_comment_prefixes=("#",))
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigurationError(f"cannot parse {path}: {exc}") from exc

    values = {}
    for section in parser.sections():
        if section not in _SECTION_KEYS:
            raise ConfigurationError(f"unknown section [{section}] in {path}")
        values[section] = {}
        for key, raw in parser.items(section):
            if key not in _SECTION_KEYS[section]:
                raise ConfigurationError(f"unknown key '{key}' in section [{section}]")
            if key == "algorithms":
                algos = tuple(a.strip() for a in raw.split(",") if a.strip())
                values[section][key] = algos
                continue
            try:
                values[section][key] = int(raw) if key in _INT_KEYS else float(raw)
            except ValueError as exc:
                raise ConfigurationError(f"bad value for '{key}': {raw!r}") from exc

    array_kwargs = values.get("array", {})
    array = ArrayConfig(**{"elements_x": 40, "elements_y": 40,
                           "subarray_x": 5, "subarray_y": 5, **array_kwargs})
    budget_kwargs = dict(values.get("budget", {}))
    algorithms = budget_kwargs.pop("algorithms", ALGORITHMS)
    return ExperimentConfig(
        array=array,
        pattern=PatternSettings(**values.get("pattern", {})),
        budget=BudgetSettings(**budget_kwargs),
        algorithms=algorithms,
        sa=SAParams(**values.get("sa", {})) if "sa" in values else SAParams(),
        ga=GAParams(population=_default_population(array), **values.get("ga", {}))
        if "ga" in values and "population" not in values["ga"]
        else (GAParams(**values["ga"]) if "ga" in values else None),
        pso=PSOParams(population=_default_population(array), **values.get("pso", {}))
        if "pso" in values and "population" not in values["pso"]
        else (PSOParams(**values["pso"]) if "pso" in values else None),
    )


def _default_population(array: ArrayConfig) -> int:
    return 50 if max(array.elements_x, array.elements_y) >= 80 else 25


_RUNNERS = {"sa": run_sa, "ga": run_ga, "pso": run_pso}

# Per-process problem cache for worker pools: rebuilding the FFT basis for
# every run would dominate small experiments.
_PROBLEM_CACHE = {}


def _run_one(cfg: ExperimentConfig, algorithm: str, execution: int) -> RunRecord:
    key = (cfg.array, cfg.pattern.grid_size, cfg.pattern.beamwidth_deg,
           cfg.pattern.sidelobe_db, cfg.pattern.transition_deg,
           cfg.pattern.db_floor, cfg.budget.evaluations)
    problem = _PROBLEM_CACHE.get(key)
    if problem is None:
        problem = cfg.make_problem()
        _PROBLEM_CACHE[key] = problem
    seed = cfg.budget.base_seed + execution
    rng = np.random.default_rng(seed)
    params = getattr(cfg, algorithm)
    start = time.perf_counter()
    curve = _RUNNERS[algorithm](problem, params, rng, seed=seed)
    elapsed = time.perf_counter() - start
    return RunRecord(algorithm=algorithm, execution=execution, seed=seed,
                     curve=curve, solution=curve.solution,
                     breakdown=problem.breakdown_of(curve.solution),
                     wall_time=elapsed)


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> list:
    """Run executions x algorithms seeded searches; deterministic ordering.

    jobs > 1 dispatches runs to a process pool; results are collected in
    the same (algorithm, execution) order either way, so outputs are
    identical to a serial run.
    """
    tasks = [(algo, e) for algo in cfg.algorithms
             for e in range(cfg.budget.executions)]
    if jobs <= 1:
        return [_run_one(cfg, algo, e) for algo, e in tasks]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_one, cfg, algo, e) for algo, e in tasks]
        return [f.result() for f in futures]


def aggregate(records) -> AggregateStats:
    """Pointwise mean convergence curves and final-cost statistics."""
    by_algo = {}
    for rec in records:
        by_algo.setdefault(rec.algorithm, []).append(rec)
    if not by_algo:
        raise AggregationError("no records to aggregate")
    stats = {}
    for algo, recs in by_algo.items():
        lengths = {rec.curve.evaluations for rec in recs}
        if len(lengths) != 1:
            raise AggregationError(
                f"mixed curve lengths {sorted(lengths)} for algorithm {algo}")
        curves = np.stack([rec.curve.best_costs for rec in recs])
        finals = np.array([rec.curve.cost for rec in recs])
        best = min(recs, key=lambda r: (r.curve.cost, r.execution))
        stats[algo] = AlgorithmStats(
            algorithm=algo, executions=len(recs),
            mean_curve=curves.mean(axis=0), best_record=best,
            mean_final=float(finals.mean()), min_final=float(finals.min()),
            max_final=float(finals.max()), std_final=float(finals.std()))
    return AggregateStats(per_algorithm=stats)


def _fmt(x) -> str:
    # 17 significant digits round-trips any float64 exactly
    return format(float(x), ".17g")


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def export_artifacts(stats: AggregateStats, records, cfg: ExperimentConfig,
                     out_dir, decimate: int = 1) -> dict:
    """Write all experiment artifacts as CSV files; returns name -> path.

    The overall best solution (lowest final cost across algorithms) is
    re-synthesized at full grid resolution for the pattern, cut, and
    per-element phase exports. decimate > 1 keeps every decimate-th curve
    point (the final point is always kept).
    """
    if decimate < 1:
        raise ConfigurationError("decimate must be >= 1")
    os.makedirs(out_dir, exist_ok=True)
    manifest = {}

    def indices(length):
        idx = list(range(decimate - 1, length, decimate))
        if not idx or idx[-1] != length - 1:
            idx.append(length - 1)
        return idx

    rows = []
    for rec in records:
        best = rec.curve.best_costs
        for i in indices(len(best)):
            rows.append([rec.algorithm, rec.execution, rec.seed, i + 1, _fmt(best[i])])
    manifest["curves.csv"] = os.path.join(out_dir, "curves.csv")
    _write_csv(manifest["curves.csv"],
               ["algorithm", "execution", "seed", "eval_index", "best_cost"], rows)

    rows = []
    for algo in cfg.algorithms:
        if algo not in stats.per_algorithm:
            continue
        mean = stats.per_algorithm[algo].mean_curve
        for i in indices(len(mean)):
            rows.append([algo, i + 1, _fmt(mean[i])])
    manifest["mean_curves.csv"] = os.path.join(out_dir, "mean_curves.csv")
    _write_csv(manifest["mean_curves.csv"],
               ["algorithm", "eval_index", "mean_best_cost"], rows)

    overall = min((s.best_record for s in stats.per_algorithm.values()),
                  key=lambda r: (r.curve.cost, r.algorithm, r.execution))
    problem = cfg.make_problem()
    solution = overall.solution
    bits = cfg.array.phase_bits

    rows = [[0, 0, _fmt(0.0)]]
    for g, idx in enumerate(solution, start=1):
        rows.append([g, int(idx), _fmt(dequantize_phase(int(idx), bits))])
    manifest["best_solution.csv"] = os.path.join(out_dir, "best_solution.csv")
    _write_csv(manifest["best_solution.csv"],
               ["group_id", "phase_index", "phase_deg"], rows)

    groups = element_group_map(problem.symmetry, cfg.array)
    group_phase = dequantize_phase(np.concatenate(([0], solution)), bits)
    rows = [[r, c, _fmt(group_phase[groups[r, c]])]
            for r in range(cfg.array.elements_x)
            for c in range(cfg.array.elements_y)]
    manifest["element_phases.csv"] = os.path.join(out_dir, "element_phases.csv")
    _write_csv(manifest["element_phases.csv"], ["row", "col", "phase_deg"], rows)

    exc = expand_solution(solution, problem.symmetry, cfg.array)
    pat = synthesize_fft(exc, cfg.pattern.grid_size, cfg.array.spacing,
                         cfg.pattern.db_floor)
    coords = pat.grid.coords
    vis = pat.grid.visible
    rows = []
    for i in range(pat.grid.size):
        for j in range(pat.grid.size):
            if vis[i, j]:
                u, v = coords[i], coords[j]
                rows.append([_fmt(u), _fmt(v),
                             _fmt(math.degrees(math.asin(max(-1.0, min(1.0, u))))),
                             _fmt(math.degrees(math.asin(max(-1.0, min(1.0, v))))),
                             _fmt(pat.db[i, j])])
    manifest["pattern.csv"] = os.path.join(out_dir, "pattern.csv")
    _write_csv(manifest["pattern.csv"], ["u", "v", "az_deg", "el_deg", "mag_db"], rows)

    rows = []
    for axis in ("u", "v"):
        angles, dbs = extract_cut(pat, axis)
        rows.extend([axis, _fmt(a), _fmt(db)] for a, db in zip(angles, dbs))
    manifest["cuts.csv"] = os.path.join(out_dir, "cuts.csv")
    _write_csv(manifest["cuts.csv"], ["axis", "angle_deg", "mag_db"], rows)

    rows = []
    for algo in cfg.algorithms:
        if algo not in stats.per_algorithm:
            continue
        s = stats.per_algorithm[algo]
        rows.append([algo, s.executions, _fmt(s.best_record.curve.cost),
                     _fmt(s.mean_final), _fmt(s.std_final),
                     _fmt(s.best_record.breakdown.p_eff)])
    manifest["summary.csv"] = os.path.join(out_dir, "summary.csv")
    _write_csv(manifest["summary.csv"],
               ["algorithm", "executions", "best_cost", "mean_final_cost",
                "std_final_cost", "best_p_eff"], rows)
    return manifest


def load_solution_csv(path) -> np.ndarray:
    """Read a best_solution.csv back into a free-group phase-index vector."""
    indices = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            indices[int(row["group_id"])] = int(row["phase_index"])
    free = [indices[g] for g in sorted(indices) if g != 0]
    return np.array(free, dtype=int)
