"""Budgeted metaheuristic search over quantized subarray phase settings.

Three algorithms (simulated annealing, genetic algorithm with elitism,
particle swarm optimization) share one contract: each consumes a
SearchProblem whose cost callback expands a group-phase solution into
element excitations, synthesizes the FFT pattern, and scores it against the
flat-top mask; each returns a best-so-far ConvergenceCurve with exactly one
point per cost evaluation, stopping at the evaluation budget. An exhaustive
enumeration oracle is provided for tiny instances.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .array_model import (ArrayConfig, build_symmetry_map, element_group_map,
                          expand_solution, random_solution)
from .cost import COST_EPSILON, CostBreakdown, build_mask, pattern_effectiveness
from .errors import ConfigurationError
from .pattern import DB_FLOOR_DEFAULT, _aperture_transform, make_uv_grid


@dataclass
class SAParams:
    """Simulated annealing constants (defaults from the 40x40 benchmark)."""
    t0: float = 1.0
    alpha: float = 0.97
    k: float = 0.01
    iters_per_temp: int = 200
    t_stops: int = 100

    def validate(self):
        if not 0.0 < self.alpha < 1.0:
            raise ConfigurationError("alpha must be in (0, 1)")
        if self.k <= 0.0:
            raise ConfigurationError("k must be positive")
        if self.iters_per_temp < 1 or self.t_stops < 1:
            raise ConfigurationError("iters_per_temp and t_stops must be >= 1")


@dataclass
class GAParams:
    population: int = 25
    crossover_fraction: float = 1.0
    mutation_rate: float = 0.07
    elite_fraction: float = 0.25

    def validate(self):
        if self.population < 2:
            raise ConfigurationError("population must be >= 2")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ConfigurationError("mutation_rate must be in [0, 1]")
        if not 0.0 < self.crossover_fraction <= 1.0:
            raise ConfigurationError("crossover_fraction must be in (0, 1]")
        if not 0.0 <= self.elite_fraction < 1.0:
            raise ConfigurationError("elite_fraction must be in [0, 1)")


@dataclass
class PSOParams:
    population: int = 25
    omega: float = 0.729
    c1: float = 1.49445
    c2: float = 1.49445

    def validate(self):
        if self.population < 2:
            raise ConfigurationError("population must be >= 2")


@dataclass
class ConvergenceCurve:
    """Best-so-far cost per evaluation plus the winning solution."""
    best_costs: np.ndarray
    solution: np.ndarray
    cost: float
    seed: int | None = None

    @property
    def evaluations(self) -> int:
        return len(self.best_costs)


class SearchProblem:
    """Array + mask + budget bundle exposing the cost callback.

    The pattern of any solution is a fixed linear combination of the
    per-group aperture spectra, so those spectra are synthesized once (via
    the same zero-padded FFT as the pattern module) and each evaluation is a
    small complex matrix-vector product instead of a fresh 2D FFT. cost_of
    is pure and does not touch the evaluation budget; optimizers charge the
    budget through _Session.
    """

    def __init__(self, config: ArrayConfig, beamwidth_deg: float = 12.0,
                 sidelobe_db: float = -13.0, transition_deg: float = 0.0,
                 grid_size: int = 256, db_floor: float = DB_FLOOR_DEFAULT,
                 budget: int = 20000):
        if budget < 1:
            raise ConfigurationError("budget must be >= 1")
        self.config = config
        self.symmetry = build_symmetry_map(config)
        self.grid = make_uv_grid(grid_size, config.spacing)
        self.mask = build_mask(beamwidth_deg, sidelobe_db, transition_deg, self.grid)
        self.budget = budget
        self.db_floor = db_floor
        levels = config.phase_levels
        self._phasors = np.exp(2j * np.pi * np.arange(levels) / levels)
        groups = element_group_map(self.symmetry, config)
        basis = np.empty((self.symmetry.group_count, grid_size * grid_size), dtype=complex)
        for g in range(self.symmetry.group_count):
            basis[g] = _aperture_transform(
                (groups == g).astype(complex), grid_size).ravel()
        self._basis = basis
        self._mb_idx = np.flatnonzero(self.mask.mainbeam.ravel())
        self._sl_idx = np.flatnonzero(self.mask.sidelobe.ravel())
        self._sl_thresh = 10.0 ** (sidelobe_db / 10.0)  # linear power ratio

    @property
    def free_count(self) -> int:
        return self.symmetry.free_count

    @property
    def phase_levels(self) -> int:
        return self.config.phase_levels

    def _errors_of(self, solution) -> tuple[float, float]:
        indices = np.concatenate(([0], np.asarray(solution, dtype=int)))
        field_ = self._phasors[indices] @ self._basis
        p2 = field_.real ** 2 + field_.imag ** 2
        peak2 = p2.max()
        with np.errstate(divide="ignore"):
            db_mb = np.maximum(10.0 * np.log10(p2[self._mb_idx] / peak2), self.db_floor)
        e_mb = float(db_mb @ db_mb)
        sl = p2[self._sl_idx]
        viol = sl > self._sl_thresh * peak2
        if viol.any():
            over = 10.0 * np.log10(sl[viol] / peak2) - self.mask.sidelobe_db
            e_sl = float(over @ over)
        else:
            e_sl = 0.0
        return e_mb, e_sl

    def cost_of(self, solution) -> float:
        """Cost of one solution; pure, does not consume the budget."""
        e_mb, e_sl = self._errors_of(solution)
        return math.log(e_mb + e_sl + COST_EPSILON)

    def breakdown_of(self, solution) -> CostBreakdown:
        """Full cost breakdown, numerically identical to cost_of."""
        e_mb, e_sl = self._errors_of(solution)
        cost = math.log(e_mb + e_sl + COST_EPSILON)
        return CostBreakdown(e_mb=e_mb, e_sl=e_sl, cost=cost, beta=self.mask.beta,
                             p_eff=pattern_effectiveness(cost, self.mask.beta))

    def reference_cost_of(self, solution) -> float:
        """Cost via the unfused expand -> synthesize_fft -> evaluate_cost chain."""
        from .cost import evaluate_cost
        from .pattern import synthesize_fft
        exc = expand_solution(solution, self.symmetry, self.config)
        pat = synthesize_fft(exc, self.grid.size, self.config.spacing, self.db_floor)
        return evaluate_cost(pat, self.mask).cost


@dataclass
class _Session:
    """Budget accounting for one optimizer run: one curve point per evaluation."""
    problem: SearchProblem
    count: int = 0
    best_cost: float = math.inf
    best_solution: np.ndarray | None = None
    curve: list = field(default_factory=list)

    @property
    def remaining(self) -> int:
        return self.problem.budget - self.count

    def evaluate(self, solution) -> float:
        if self.remaining <= 0:
            raise RuntimeError("evaluation budget exhausted")
        cost = self.problem.cost_of(solution)
        self.count += 1
        if cost < self.best_cost:
            self.best_cost = cost
            self.best_solution = np.array(solution, dtype=int)
        self.curve.append(self.best_cost)
        return cost

    def result(self, seed=None) -> ConvergenceCurve:
        return ConvergenceCurve(best_costs=np.array(self.curve),
                                solution=self.best_solution, cost=self.best_cost,
                                seed=seed)


def _empty_run(problem: SearchProblem, seed) -> ConvergenceCurve:
    # Degenerate zero-dimensional search space: the empty solution is the
    # only candidate, one evaluation total.
    session = _Session(problem)
    session.evaluate(np.empty(0, dtype=int))
    return session.result(seed)


def run_sa(problem: SearchProblem, params: SAParams, rng: np.random.Generator,
           seed: int | None = None) -> ConvergenceCurve:
    """Simulated annealing with Boltzmann acceptance and geometric cooling.

    A neighbor resamples one uniformly chosen free group's phase uniformly
    over all quantized levels. Performs 1 + iters_per_temp * t_stops
    evaluations, clamped to the budget.
    """
    params.validate()
    if problem.free_count == 0:
        return _empty_run(problem, seed)
    session = _Session(problem)
    levels = problem.phase_levels
    current = random_solution(rng, problem.symmetry, problem.config.phase_bits)
    current_cost = session.evaluate(current)
    temp = params.t0
    for _ in range(params.t_stops):
        for _ in range(params.iters_per_temp):
            if session.remaining <= 0:
                return session.result(seed)
            candidate = current.copy()
            pos = rng.integers(problem.free_count)
            candidate[pos] = rng.integers(levels)
            cand_cost = session.evaluate(candidate)
            if cand_cost < current_cost or rng.random() < math.exp(
                    min(0.0, (current_cost - cand_cost) / (params.k * temp))):
                current, current_cost = candidate, cand_cost
        temp *= params.alpha
    return session.result(seed)


def _roulette_probabilities(costs: np.ndarray) -> np.ndarray:
    # Weight of candidate i is max(C) - C(i); all-equal populations fall
    # back to the uniform distribution.
    weights = costs.max() - costs
    total = weights.sum()
    if total <= 0.0:
        return np.full(len(costs), 1.0 / len(costs))
    return weights / total


def run_ga(problem: SearchProblem, params: GAParams, rng: np.random.Generator,
           seed: int | None = None) -> ConvergenceCurve:
    """Generational GA: roulette selection, single-point crossover,
    per-gene uniform-resample mutation, and lowest-cost elitism.

    Each generation builds a full population of size N (offspring plus
    elites) and re-evaluates all of it, so the budget is consumed N
    evaluations per generation after the N-evaluation initialization.
    """
    params.validate()
    if problem.free_count == 0:
        return _empty_run(problem, seed)
    session = _Session(problem)
    n = params.population
    d = problem.free_count
    levels = problem.phase_levels
    n_elite = int(params.elite_fraction * n)
    n_offspring = n - n_elite
    pop = np.stack([random_solution(rng, problem.symmetry, problem.config.phase_bits)
                    for _ in range(n)])
    costs = np.empty(n)
    for i in range(n):
        if session.remaining <= 0:
            return session.result(seed)
        costs[i] = session.evaluate(pop[i])
    n_parents = max(2, round(params.crossover_fraction * n))
    while session.remaining > 0:
        probs = _roulette_probabilities(costs)
        parents = rng.choice(n, size=n_parents, replace=True, p=probs)
        offspring = []
        pair = 0
        while len(offspring) < n_offspring:
            a = pop[parents[(2 * pair) % n_parents]]
            b = pop[parents[(2 * pair + 1) % n_parents]]
            pair += 1
            if d >= 2:
                cut = rng.integers(1, d)
                offspring.append(np.concatenate([a[:cut], b[cut:]]))
                offspring.append(np.concatenate([b[:cut], a[cut:]]))
            else:
                offspring.append(a.copy())
                offspring.append(b.copy())
        offspring = np.stack(offspring[:n_offspring])
        mutate = rng.random(offspring.shape) < params.mutation_rate
        offspring[mutate] = rng.integers(levels, size=int(mutate.sum()))
        elites = np.argsort(costs, kind="stable")[:n_elite]
        new_pop = np.concatenate([offspring, pop[elites]])
        new_costs = np.empty(n)
        for i in range(n):
            if session.remaining <= 0:
                return session.result(seed)
            new_costs[i] = session.evaluate(new_pop[i])
        pop, costs = new_pop, new_costs
    return session.result(seed)


def circular_distance(from_deg, to_deg):
    """Signed shortest angular displacement from one phase to another.

    Result lies in (-180, 180]: e.g. 10 -> 290 degrees is -80 (through the
    wrap-around), not +280. Accepts scalars or arrays.
    """
    delta = (np.asarray(to_deg, dtype=float) - np.asarray(from_deg, dtype=float)) % 360.0
    return np.where(delta > 180.0, delta - 360.0, delta)[()]


def run_pso(problem: SearchProblem, params: PSOParams, rng: np.random.Generator,
            seed: int | None = None) -> ConvergenceCurve:
    """Particle swarm with inertia and wrap-aware velocity updates.

    Positions are continuous degrees in [0, 360), quantized to the phase
    shifter levels only when a particle is evaluated. Displacements toward
    the personal and global bests go through circular_distance, so no
    velocity clamp is needed.
    """
    params.validate()
    if problem.free_count == 0:
        return _empty_run(problem, seed)
    session = _Session(problem)
    n = params.population
    d = problem.free_count
    levels = problem.phase_levels
    step = 360.0 / levels

    def quantized(pos):
        return np.floor(pos / step + 0.5).astype(int) % levels

    x = rng.uniform(0.0, 360.0, size=(n, d))
    v = rng.uniform(-360.0, 360.0, size=(n, d))
    pbest = x.copy()
    pbest_cost = np.full(n, math.inf)
    gbest = x[0].copy()
    gbest_cost = math.inf
    for i in range(n):
        if session.remaining <= 0:
            return session.result(seed)
        c = session.evaluate(quantized(x[i]))
        pbest_cost[i] = c
        if c < gbest_cost:
            gbest_cost, gbest = c, x[i].copy()
    while session.remaining > 0:
        for i in range(n):
            if session.remaining <= 0:
                return session.result(seed)
            v[i] = (params.omega * v[i]
                    + params.c1 * rng.random(d) * circular_distance(x[i], pbest[i])
                    + params.c2 * rng.random(d) * circular_distance(x[i], gbest))
            x[i] = (x[i] + v[i]) % 360.0
            c = session.evaluate(quantized(x[i]))
            if c < pbest_cost[i]:
                pbest_cost[i] = c
                pbest[i] = x[i].copy()
            if c < gbest_cost:
                gbest_cost = c
                gbest = x[i].copy()
    return session.result(seed)


BRUTE_FORCE_LIMIT = 10 ** 6


def brute_force_search(problem: SearchProblem):
    """Exact global optimum by full enumeration of the quantized space.

    Refuses spaces larger than 10^6 candidates. Deterministic: ties keep
    the lexicographically first solution. Returns (solution, cost).
    """
    levels = problem.phase_levels
    space = levels ** problem.free_count
    if space > BRUTE_FORCE_LIMIT:
        raise ConfigurationError(
            f"solution space {levels}^{problem.free_count} = {space} exceeds "
            f"brute-force limit {BRUTE_FORCE_LIMIT}")
    best_cost = math.inf
    best = np.empty(0, dtype=int)
    for candidate in itertools.product(range(levels), repeat=problem.free_count):
        c = problem.cost_of(np.array(candidate, dtype=int))
        if c < best_cost:
            best_cost = c
            best = np.array(candidate, dtype=int)
    return best, best_cost
