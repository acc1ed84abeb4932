"""Flat-top desired mask and the pattern scoring function.

The mask splits the visible u-v bins into a circular mainbeam disc
(target 0 dB) and a sidelobe region (ceiling at a negative dB level), with
an optional don't-care transition annulus between them. The cost is the
natural log of the summed one-sided squared dB errors over both regions; a
pattern effectiveness percentage maps the same total error to (0, 100].
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DimensionError
from .pattern import MagnitudePattern, UVGrid

COST_EPSILON = 1e-12


@dataclass(frozen=True)
class DesiredMask:
    """Classification of visible bins into mainbeam / sidelobe regions."""

    grid: UVGrid
    beamwidth_deg: float
    sidelobe_db: float
    transition_deg: float
    mainbeam: np.ndarray  # bool, angle off boresight <= beamwidth/2
    sidelobe: np.ndarray  # bool, beyond beamwidth/2 + transition
    beta: int             # number of classified bins


@dataclass(frozen=True)
class CostBreakdown:
    e_mb: float
    e_sl: float
    cost: float
    beta: int
    p_eff: float


def build_mask(beamwidth_deg: float, sidelobe_db: float, transition_deg: float,
               grid: UVGrid) -> DesiredMask:
    """Classify visible grid bins by angle off boresight.

    Mainbeam: asin(sqrt(u^2+v^2)) <= beamwidth/2. Sidelobe: beyond
    beamwidth/2 + transition. Bins inside the transition annulus are
    excluded from scoring.
    """
    if not 0.0 < beamwidth_deg < 180.0:
        raise ConfigurationError("beamwidth_deg must be in (0, 180)")
    if sidelobe_db >= 0.0:
        raise ConfigurationError("sidelobe_db must be negative")
    if transition_deg < 0.0:
        raise ConfigurationError("transition_deg must be non-negative")
    visible = grid.visible
    if not visible.any():
        raise ConfigurationError("grid has no visible bins")
    # r <= sin(half-angle) is equivalent to asin(r) <= half-angle and avoids
    # evaluating asin near r = 1
    r = grid.radius
    mainbeam = visible & (r <= math.sin(math.radians(beamwidth_deg / 2.0)))
    sl_limit = (beamwidth_deg + 2.0 * transition_deg) / 2.0
    if sl_limit >= 90.0:
        sidelobe = np.zeros_like(visible)
    else:
        sidelobe = visible & (r > math.sin(math.radians(sl_limit)))
    return DesiredMask(grid=grid, beamwidth_deg=beamwidth_deg,
                       sidelobe_db=sidelobe_db, transition_deg=transition_deg,
                       mainbeam=mainbeam, sidelobe=sidelobe,
                       beta=int(mainbeam.sum() + sidelobe.sum()))


def evaluate_cost(pattern: MagnitudePattern, mask: DesiredMask) -> CostBreakdown:
    """Score a normalized pattern against the mask.

    e_mb sums db^2 over mainbeam bins below 0 dB; e_sl sums (db - sll)^2
    over sidelobe bins above the sidelobe level; cost = ln(e_mb + e_sl + eps).
    """
    if pattern.grid.size != mask.grid.size or pattern.grid.spacing != mask.grid.spacing:
        raise DimensionError("pattern and mask grids do not match")
    db = pattern.db
    mb = db[mask.mainbeam]
    e_mb = float(np.sum(mb[mb < 0.0] ** 2))
    sl = db[mask.sidelobe]
    over = sl[sl > mask.sidelobe_db] - mask.sidelobe_db
    e_sl = float(np.sum(over ** 2))
    cost = math.log(e_mb + e_sl + COST_EPSILON)
    return CostBreakdown(e_mb=e_mb, e_sl=e_sl, cost=cost, beta=mask.beta,
                         p_eff=pattern_effectiveness(cost, mask.beta))


def pattern_effectiveness(cost: float, beta: int) -> float:
    """Percentage effectiveness 10**(-sqrt(exp(cost)/(beta*100))) * 100."""
    if beta <= 0:
        raise ConfigurationError("beta must be positive")
    return 10.0 ** (-math.sqrt(math.exp(cost) / (beta * 100.0))) * 100.0
