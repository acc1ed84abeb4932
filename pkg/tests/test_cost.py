import math

import numpy as np
import pytest

from broadbeam import (ConfigurationError, DimensionError, MagnitudePattern,
                       build_mask, evaluate_cost, make_uv_grid,
                       pattern_effectiveness)
from broadbeam.cost import COST_EPSILON

GRID = make_uv_grid(64, 0.5)
MASK = build_mask(12.0, -13.0, 0.0, GRID)


def ideal_pattern(mask=MASK, sidelobe_mag=0.1):
    """Pattern matching the mask exactly: 0 dB mainbeam, quiet sidelobes."""
    mag = np.full((mask.grid.size,) * 2, sidelobe_mag)
    mag[mask.mainbeam] = 1.0
    return MagnitudePattern(grid=mask.grid, magnitude=mag)


class TestBuildMask:
    def test_mainbeam_is_disc_in_angle(self):
        grid = make_uv_grid(256, 0.5)
        mask = build_mask(12.0, -13.0, 0.0, grid)
        expected = grid.visible & (grid.radius <= math.sin(math.radians(6.0)))
        np.testing.assert_array_equal(mask.mainbeam, expected)

    def test_zero_transition_classifies_every_visible_bin(self):
        np.testing.assert_array_equal(MASK.mainbeam | MASK.sidelobe,
                                      GRID.visible)
        assert not np.any(MASK.mainbeam & MASK.sidelobe)

    def test_beta_counts_classified_bins(self):
        assert MASK.beta == int(GRID.visible.sum())
        with_gap = build_mask(12.0, -13.0, 3.0, GRID)
        assert with_gap.beta < MASK.beta

    def test_boresight_in_mainbeam(self):
        assert MASK.mainbeam[GRID.size // 2, GRID.size // 2]

    @pytest.mark.parametrize("kwargs", [
        dict(beamwidth_deg=0.0), dict(beamwidth_deg=180.0),
        dict(sidelobe_db=0.0), dict(transition_deg=-1.0),
    ])
    def test_bad_parameters_rejected(self, kwargs):
        params = dict(beamwidth_deg=12.0, sidelobe_db=-13.0, transition_deg=0.0)
        params.update(kwargs)
        with pytest.raises(ConfigurationError):
            build_mask(grid=GRID, **params)


class TestEvaluateCost:
    def test_perfect_match(self):
        out = evaluate_cost(ideal_pattern(), MASK)
        assert out.e_mb == 0.0 and out.e_sl == 0.0
        assert out.cost == pytest.approx(math.log(1e-12))
        assert out.cost == pytest.approx(-27.631, abs=1e-3)

    def test_one_mainbeam_bin_down_2db(self):
        pat = ideal_pattern()
        mag = pat.magnitude.copy()
        mb = np.argwhere(MASK.mainbeam)
        # perturb a non-boresight mainbeam bin so the peak stays at 1
        target = next(tuple(p) for p in mb if tuple(p) != (32, 32))
        mag[target] = 10 ** (-2 / 20)
        out = evaluate_cost(MagnitudePattern(grid=GRID, magnitude=mag), MASK)
        assert out.e_mb == pytest.approx(4.0, rel=1e-12)
        assert out.cost == pytest.approx(math.log(4.0), rel=1e-9)

    def test_one_sidelobe_bin_3db_over(self):
        pat = ideal_pattern()
        mag = pat.magnitude.copy()
        target = tuple(np.argwhere(MASK.sidelobe)[0])
        mag[target] = 10 ** (-10 / 20)
        out = evaluate_cost(MagnitudePattern(grid=GRID, magnitude=mag), MASK)
        assert out.e_sl == pytest.approx(9.0, rel=1e-12)
        assert out.cost == pytest.approx(math.log(9.0), rel=1e-9)

    def test_one_sidedness(self):
        # mainbeam at 0 dB and sidelobes at or below the level contribute 0
        at_level = ideal_pattern(sidelobe_mag=10 ** (-13.01 / 20))
        out = evaluate_cost(at_level, MASK)
        assert out.e_mb == 0.0 and out.e_sl == 0.0

    def test_monotonicity_sidelobe(self):
        base = ideal_pattern()
        target = tuple(np.argwhere(MASK.sidelobe)[5])
        costs = []
        for db in (-12.0, -10.0, -8.0):
            mag = base.magnitude.copy()
            mag[target] = 10 ** (db / 20)
            costs.append(evaluate_cost(
                MagnitudePattern(grid=GRID, magnitude=mag), MASK).e_sl)
        assert costs[0] < costs[1] < costs[2]

    def test_monotonicity_mainbeam(self):
        base = ideal_pattern()
        mb = np.argwhere(MASK.mainbeam)
        target = next(tuple(p) for p in mb if tuple(p) != (32, 32))
        errors = []
        for db in (-6.0, -4.0, -2.0):
            mag = base.magnitude.copy()
            mag[target] = 10 ** (db / 20)
            errors.append(evaluate_cost(
                MagnitudePattern(grid=GRID, magnitude=mag), MASK).e_mb)
        assert errors[0] > errors[1] > errors[2]

    def test_pure_function(self):
        rng = np.random.default_rng(2)
        mag = rng.random((64, 64))
        mag.flat[0] = 1.0
        pat = MagnitudePattern(grid=GRID, magnitude=mag)
        a = evaluate_cost(pat, MASK)
        b = evaluate_cost(pat, MASK)
        assert a == b

    def test_log_exp_round_trip(self):
        rng = np.random.default_rng(4)
        mag = rng.random((64, 64))
        mag.flat[100] = 1.0
        out = evaluate_cost(MagnitudePattern(grid=GRID, magnitude=mag), MASK)
        assert math.exp(out.cost) - COST_EPSILON == pytest.approx(
            out.e_mb + out.e_sl, rel=1e-12)

    def test_grid_mismatch_rejected(self):
        other = MagnitudePattern(grid=make_uv_grid(32, 0.5),
                                 magnitude=np.ones((32, 32)))
        with pytest.raises(DimensionError):
            evaluate_cost(other, MASK)


class TestPatternEffectiveness:
    def test_vanishing_error_gives_100_percent(self):
        assert pattern_effectiveness(-1000.0, MASK.beta) == pytest.approx(
            100.0, abs=1e-12)

    def test_radicand_one_gives_10_percent(self):
        cost = math.log(MASK.beta * 100.0)
        assert pattern_effectiveness(cost, MASK.beta) == pytest.approx(
            10.0, abs=1e-12)

    def test_reported_benchmark_cost_value(self):
        # cost 10.8 with the default 40x40 grid's beta, frozen by direct
        # formula evaluation
        beta = 51431
        expected = 10.0 ** (-math.sqrt(math.exp(10.8) / (beta * 100.0))) * 100.0
        assert pattern_effectiveness(10.8, beta) == pytest.approx(
            expected, rel=1e-15)
        assert 0.0 < pattern_effectiveness(10.8, beta) <= 100.0

    def test_bad_beta_rejected(self):
        with pytest.raises(ConfigurationError):
            pattern_effectiveness(1.0, 0)

    def test_breakdown_p_eff_in_range(self):
        rng = np.random.default_rng(6)
        mag = rng.random((64, 64))
        mag.flat[7] = 1.0
        out = evaluate_cost(MagnitudePattern(grid=GRID, magnitude=mag), MASK)
        assert 0.0 < out.p_eff <= 100.0
