"""Phase-only beam broadening of contiguous uniform subarrayed planar arrays.

Quantized subarray phase settings are searched with simulated annealing, a
genetic algorithm with elitism, and particle swarm optimization; candidate
patterns are synthesized by 2D FFT over a direction-cosine grid and scored
against a flat-top desired mask.
"""

from .array_model import (ArrayConfig, SymmetryMap, build_symmetry_map,
                          dequantize_phase, element_group_map,
                          expand_solution, quantize_phase, random_solution)
from .cost import (CostBreakdown, DesiredMask, build_mask, evaluate_cost,
                   pattern_effectiveness)
from .errors import AggregationError, ConfigurationError, DimensionError
from .experiment import (AggregateStats, ExperimentConfig, RunRecord,
                         aggregate, export_artifacts, load_config,
                         load_solution_csv, run_experiment)
from .optimizers import (ConvergenceCurve, GAParams, PSOParams, SAParams,
                         SearchProblem, brute_force_search, circular_distance,
                         run_ga, run_pso, run_sa)
from .pattern import (MagnitudePattern, UVGrid, extract_cut, make_uv_grid,
                      synthesize_direct, synthesize_fft, to_db)

__version__ = "0.1.0"

__all__ = [
    "ArrayConfig", "SymmetryMap", "build_symmetry_map", "quantize_phase",
    "dequantize_phase", "element_group_map", "expand_solution",
    "random_solution",
    "UVGrid", "MagnitudePattern", "make_uv_grid", "synthesize_fft",
    "synthesize_direct", "to_db", "extract_cut",
    "DesiredMask", "CostBreakdown", "build_mask", "evaluate_cost",
    "pattern_effectiveness",
    "SearchProblem", "SAParams", "GAParams", "PSOParams", "ConvergenceCurve",
    "run_sa", "run_ga", "run_pso", "circular_distance", "brute_force_search",
    "ExperimentConfig", "RunRecord", "AggregateStats", "load_config",
    "run_experiment", "aggregate", "export_artifacts", "load_solution_csv",
    "ConfigurationError", "DimensionError", "AggregationError",
]
