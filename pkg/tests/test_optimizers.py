import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from broadbeam import (ArrayConfig, ConfigurationError, GAParams, PSOParams,
                       SAParams, SearchProblem, brute_force_search,
                       circular_distance, run_ga, run_pso, run_sa)


def tiny_problem(budget=200):
    # 4x4 subarrays of 2x2 elements, 3-bit shifters: 2 free dims, 64 candidates
    return SearchProblem(ArrayConfig(8, 8, 2, 2, phase_bits=3),
                         beamwidth_deg=24.0, grid_size=32, budget=budget)


def degenerate_problem(budget=50):
    # 2x2 subarray grid: every subarray equidistant, zero free dimensions
    return SearchProblem(ArrayConfig(4, 4, 2, 2, phase_bits=3),
                         beamwidth_deg=30.0, grid_size=16, budget=budget)


RUNNERS = [
    ("sa", run_sa, SAParams(iters_per_temp=10, t_stops=20)),
    ("ga", run_ga, GAParams(population=10)),
    ("pso", run_pso, PSOParams(population=10)),
]


class TestCircularDistance:
    def test_worked_example(self):
        assert circular_distance(10.0, 290.0) == -80.0

    def test_zero(self):
        assert circular_distance(0.0, 0.0) == 0.0

    def test_wrap_forward(self):
        assert circular_distance(350.0, 10.0) == 20.0

    def test_antipodal_maps_to_positive_180(self):
        assert circular_distance(0.0, 180.0) == 180.0

    @given(st.floats(-1000, 1000), st.floats(-1000, 1000))
    def test_minimum_magnitude_representative(self, a, b):
        d = float(circular_distance(a, b))
        assert -180.0 < d <= 180.0
        for k in (-2, -1, 1, 2):
            assert abs(d) <= abs(d + 360.0 * k) + 1e-9

    def test_array_input(self):
        d = circular_distance(np.array([10.0, 350.0]), np.array([290.0, 10.0]))
        np.testing.assert_array_equal(d, [-80.0, 20.0])


class TestSearchProblemCost:
    def test_fused_matches_reference_chain(self):
        problem = tiny_problem()
        rng = np.random.default_rng(0)
        for _ in range(20):
            sol = rng.integers(0, 8, size=2)
            assert problem.cost_of(sol) == pytest.approx(
                problem.reference_cost_of(sol), abs=1e-9)

    def test_cost_is_pure(self):
        problem = tiny_problem()
        sol = np.array([3, 5])
        assert problem.cost_of(sol) == problem.cost_of(sol)

    def test_breakdown_consistent_with_cost(self):
        problem = tiny_problem()
        sol = np.array([1, 6])
        bd = problem.breakdown_of(sol)
        assert bd.cost == problem.cost_of(sol)
        assert math.exp(bd.cost) == pytest.approx(bd.e_mb + bd.e_sl + 1e-12,
                                                  rel=1e-12)


class TestBudgetAccounting:
    def test_sa_exact_count(self):
        problem = tiny_problem(budget=2000)
        curve = run_sa(problem, SAParams(iters_per_temp=10, t_stops=20),
                       np.random.default_rng(1))
        assert curve.evaluations == 1 + 10 * 20

    def test_sa_clamped_to_budget(self):
        problem = tiny_problem(budget=150)
        curve = run_sa(problem, SAParams(iters_per_temp=200, t_stops=100),
                       np.random.default_rng(1))
        assert curve.evaluations == 150

    @pytest.mark.parametrize("name,runner,params", RUNNERS[1:])
    def test_population_methods_stop_at_budget(self, name, runner, params):
        problem = tiny_problem(budget=105)
        curve = runner(problem, params, np.random.default_rng(2))
        assert curve.evaluations == 105

    @pytest.mark.parametrize("name,runner,params", RUNNERS)
    def test_degenerate_space_single_evaluation(self, name, runner, params):
        curve = runner(degenerate_problem(), params, np.random.default_rng(3))
        assert curve.evaluations == 1
        assert curve.solution.size == 0


class TestCurveInvariants:
    @pytest.mark.parametrize("name,runner,params", RUNNERS)
    def test_non_increasing(self, name, runner, params):
        curve = runner(tiny_problem(), params, np.random.default_rng(4))
        assert np.all(np.diff(curve.best_costs) <= 0)

    @pytest.mark.parametrize("name,runner,params", RUNNERS)
    def test_final_matches_curve(self, name, runner, params):
        problem = tiny_problem()
        curve = runner(problem, params, np.random.default_rng(5))
        assert curve.cost == curve.best_costs[-1]
        assert problem.cost_of(curve.solution) == curve.cost

    @pytest.mark.parametrize("name,runner,params", RUNNERS)
    def test_deterministic_given_seed(self, name, runner, params):
        problem = tiny_problem()
        a = runner(problem, params, np.random.default_rng(6))
        b = runner(problem, params, np.random.default_rng(6))
        np.testing.assert_array_equal(a.best_costs, b.best_costs)
        np.testing.assert_array_equal(a.solution, b.solution)


class TestSimulatedAnnealing:
    def test_final_temperature_schedule(self):
        p = SAParams()
        assert p.alpha ** p.t_stops == pytest.approx(0.04755, abs=1e-5)

    def test_improving_moves_always_accepted(self):
        # with k tiny, any worse move is effectively always rejected, so the
        # walk is pure descent; best-so-far equals current throughout
        problem = tiny_problem(budget=300)
        curve = run_sa(problem, SAParams(k=1e-9, iters_per_temp=10, t_stops=20),
                       np.random.default_rng(7))
        assert np.all(np.diff(curve.best_costs) <= 0)


class TestGeneticAlgorithm:
    def test_all_equal_costs_select_uniformly(self):
        from broadbeam.optimizers import _roulette_probabilities
        probs = _roulette_probabilities(np.full(8, 3.7))
        np.testing.assert_allclose(probs, 1.0 / 8)

    def test_roulette_excludes_worst(self):
        from broadbeam.optimizers import _roulette_probabilities
        probs = _roulette_probabilities(np.array([1.0, 2.0, 4.0]))
        np.testing.assert_allclose(probs, [3 / 5, 2 / 5, 0.0])
        assert probs.sum() == pytest.approx(1.0)

    def test_population_too_small_rejected(self):
        with pytest.raises(ConfigurationError):
            run_ga(tiny_problem(), GAParams(population=1),
                   np.random.default_rng(0))

    def test_elitism_preserves_best(self):
        problem = tiny_problem(budget=300)
        curve = run_ga(problem, GAParams(population=10, elite_fraction=0.3),
                       np.random.default_rng(8))
        assert np.all(np.diff(curve.best_costs) <= 0)


class TestParticleSwarm:
    def test_population_too_small_rejected(self):
        with pytest.raises(ConfigurationError):
            run_pso(tiny_problem(), PSOParams(population=1),
                    np.random.default_rng(0))

    def test_stationary_particle(self):
        # v = 0 and x = p = g: the velocity update is exactly zero
        x = np.array([45.0, 170.0])
        v = 0.729 * np.zeros(2) + 1.49445 * 0.5 * circular_distance(x, x) \
            + 1.49445 * 0.5 * circular_distance(x, x)
        np.testing.assert_array_equal(v, 0.0)

    def test_positions_stay_wrapped(self, monkeypatch):
        import broadbeam.optimizers as opt
        seen = []
        problem = tiny_problem(budget=120)
        original = opt.SearchProblem.cost_of

        def spy(self, solution):
            seen.append(np.array(solution))
            return original(self, solution)

        monkeypatch.setattr(opt.SearchProblem, "cost_of", spy)
        run_pso(problem, PSOParams(population=8), np.random.default_rng(9))
        levels = problem.phase_levels
        for sol in seen:
            assert np.all((0 <= sol) & (sol < levels))


class TestBruteForce:
    def test_degenerate_space(self):
        sol, cost = brute_force_search(degenerate_problem())
        assert sol.size == 0
        assert math.isfinite(cost)

    def test_enumerates_64_candidates(self, monkeypatch):
        problem = tiny_problem()
        calls = []
        original = SearchProblem.cost_of

        def spy(self, solution):
            calls.append(1)
            return original(self, solution)

        monkeypatch.setattr(SearchProblem, "cost_of", spy)
        brute_force_search(problem)
        assert len(calls) == 64

    def test_refuses_large_space(self):
        problem = SearchProblem(ArrayConfig(40, 40, 5, 5), grid_size=64,
                                budget=10)
        with pytest.raises(ConfigurationError, match="exceeds"):
            brute_force_search(problem)

    @pytest.mark.parametrize("name,runner,params", RUNNERS)
    def test_optimum_lower_bounds_metaheuristics(self, name, runner, params):
        problem = tiny_problem(budget=150)
        _, opt_cost = brute_force_search(problem)
        curve = runner(problem, params, np.random.default_rng(10))
        assert opt_cost <= curve.cost + 1e-12
