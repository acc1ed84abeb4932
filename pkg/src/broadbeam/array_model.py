"""Planar array geometry, subarray symmetry grouping, and phase quantization.

A rectangular array of elements_x * elements_y isotropic elements is tiled by
equal contiguous subarrays; every element in a subarray shares one phase
shifter setting. Subarrays whose centers are equidistant from the array center
are forced to the same phase, and the innermost group is pinned to zero, so a
candidate solution is just the vector of phase indices of the remaining
distance groups.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DimensionError


@dataclass(frozen=True)
class ArrayConfig:
    """Geometry and quantization of a uniformly spaced subarrayed array.

    spacing is the element pitch in wavelengths; phase_bits is the phase
    shifter resolution (6 bits -> 64 levels of 5.625 degrees).
    """

    elements_x: int
    elements_y: int
    subarray_x: int
    subarray_y: int
    spacing: float = 0.5
    phase_bits: int = 6

    def __post_init__(self):
        if self.elements_x < 1 or self.elements_y < 1:
            raise ConfigurationError("element counts must be positive")
        if self.subarray_x < 1 or self.subarray_y < 1:
            raise ConfigurationError("subarray sizes must be positive")
        if self.elements_x % self.subarray_x or self.elements_y % self.subarray_y:
            raise ConfigurationError(
                "subarrays do not tile the array: "
                f"{self.elements_x}x{self.elements_y} elements with "
                f"{self.subarray_x}x{self.subarray_y} subarrays"
            )
        if self.spacing <= 0:
            raise ConfigurationError("spacing must be positive")
        if self.phase_bits < 1:
            raise ConfigurationError("phase_bits must be at least 1")

    @property
    def subarrays_x(self) -> int:
        return self.elements_x // self.subarray_x

    @property
    def subarrays_y(self) -> int:
        return self.elements_y // self.subarray_y

    @property
    def phase_levels(self) -> int:
        return 2 ** self.phase_bits

    @property
    def phase_step_deg(self) -> float:
        return 360.0 / self.phase_levels


@dataclass(frozen=True)
class SymmetryMap:
    """Assignment of subarrays to center-distance equivalence groups.

    group_of has shape (subarrays_x, subarrays_y); ids run 0..group_count-1
    in order of increasing distance from the array center. Group 0 is the
    innermost group and is always pinned to zero phase, leaving
    free_count = group_count - 1 independent settings.
    """

    group_of: np.ndarray
    group_count: int
    fixed_group: int = 0

    @property
    def free_count(self) -> int:
        return self.group_count - 1

    def group_sizes(self, config: ArrayConfig) -> np.ndarray:
        """Number of elements controlled by each group."""
        per_subarray = config.subarray_x * config.subarray_y
        return np.bincount(self.group_of.ravel(), minlength=self.group_count) * per_subarray


def build_symmetry_map(config: ArrayConfig) -> SymmetryMap:
    """Group subarrays by exact equality of center-to-array-center distance.

    Distances are compared through the integer key
    (subarray_x*(2i - nx + 1))**2 + (subarray_y*(2j - ny + 1))**2, i.e. four
    times the squared center offset in element pitches, so the grouping is
    exact and never depends on floating point.
    """
    nx, ny = config.subarrays_x, config.subarrays_y
    ox = config.subarray_x * (2 * np.arange(nx) - nx + 1)
    oy = config.subarray_y * (2 * np.arange(ny) - ny + 1)
    key = ox[:, None] ** 2 + oy[None, :] ** 2
    distinct = np.unique(key)  # sorted ascending -> group 0 is innermost
    group_of = np.searchsorted(distinct, key)
    return SymmetryMap(group_of=group_of, group_count=len(distinct))


def quantize_phase(phase_deg: float, bits: int) -> int:
    """Index of the nearest quantized phase level, ties rounding up.

    The result is wrapped into [0, 2**bits), so 358.6 degrees at 6 bits
    quantizes through 360 back to index 0.
    """
    levels = 2 ** bits
    step = 360.0 / levels
    return int(np.floor(phase_deg / step + 0.5)) % levels


def dequantize_phase(index, bits: int):
    """Phase in degrees for a quantization index (scalar or array)."""
    return np.asarray(index) * (360.0 / 2 ** bits)


def element_group_map(sym: SymmetryMap, config: ArrayConfig) -> np.ndarray:
    """Group id of every element on the elements_x * elements_y lattice."""
    return np.kron(sym.group_of, np.ones((config.subarray_x, config.subarray_y), dtype=int))


def expand_solution(solution, sym: SymmetryMap, config: ArrayConfig) -> np.ndarray:
    """Expand group phase indices into unit-amplitude element excitations.

    The fixed innermost group carries phase 0; group g > 0 carries
    solution[g-1] converted to degrees. Returns a complex
    (elements_x, elements_y) array with |w| = 1 everywhere.
    """
    solution = np.asarray(solution, dtype=int)
    if solution.shape != (sym.free_count,):
        raise DimensionError(
            f"solution length {solution.size} != free group count {sym.free_count}"
        )
    indices = np.concatenate(([0], solution))
    phase_rad = 2.0 * np.pi * indices / config.phase_levels
    phasors = np.exp(1j * phase_rad)
    return phasors[element_group_map(sym, config)]


def random_solution(rng: np.random.Generator, sym: SymmetryMap, bits: int) -> np.ndarray:
    """Uniform random phase indices for every free group."""
    return rng.integers(0, 2 ** bits, size=sym.free_count)
