"""Far-field array-factor synthesis on a direction-cosine (u-v) grid.

The magnitude pattern is produced by zero-padding the element excitations
into a size x size buffer, taking the 2D inverse FFT, and centering the
result so that bin (size/2, size/2) is boresight. A brute-force direct
summation over arbitrary (u, v) points is kept alongside as a verification
oracle.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionError

DB_FLOOR_DEFAULT = -100.0


@dataclass(frozen=True)
class UVGrid:
    """Uniform direction-cosine grid of size x size bins.

    coords[i] = (i - size/2) / (size * spacing); for half-wavelength spacing
    this spans u in [-1, 1). Bins with u^2 + v^2 <= 1 are physically visible.
    """

    size: int
    spacing: float
    coords: np.ndarray

    @cached_property
    def visible(self) -> np.ndarray:
        u2 = self.coords ** 2
        return u2[:, None] + u2[None, :] <= 1.0

    @cached_property
    def radius(self) -> np.ndarray:
        u2 = self.coords ** 2
        return np.sqrt(u2[:, None] + u2[None, :])


def make_uv_grid(size: int, spacing: float = 0.5) -> UVGrid:
    coords = (np.arange(size) - size // 2) / (size * spacing)
    return UVGrid(size=size, spacing=spacing, coords=coords)


@dataclass(frozen=True)
class MagnitudePattern:
    """Normalized |array factor| over a UVGrid, peak exactly 1 (0 dB)."""

    grid: UVGrid
    magnitude: np.ndarray
    db_floor: float = DB_FLOOR_DEFAULT

    @cached_property
    def db(self) -> np.ndarray:
        return to_db(self.magnitude, self.db_floor)


def _aperture_transform(exc: np.ndarray, size: int) -> np.ndarray:
    """Centered complex aperture spectrum of zero-padded excitations.

    Uses the positive-exponent (inverse) FFT so bin (i, j) holds
    sum_{m,n} w[m,n] exp(+2j*pi*(m*(i - size/2) + n*(j - size/2))/size),
    matching the direct summation up to a unit-modulus centering ramp.
    """
    return np.fft.fftshift(np.fft.ifft2(exc, s=(size, size)))


def synthesize_fft(exc: np.ndarray, size: int, spacing: float = 0.5,
                   db_floor: float = DB_FLOOR_DEFAULT) -> MagnitudePattern:
    """FFT-based magnitude pattern of element excitations, unit peak.

    size must be a power of two no smaller than either array dimension
    (zero-padding only, never truncation).
    """
    exc = np.asarray(exc, dtype=complex)
    if size < max(exc.shape):
        raise DimensionError(f"grid size {size} smaller than array {exc.shape}")
    if size & (size - 1):
        raise DimensionError(f"grid size {size} is not a power of two")
    mag = np.abs(_aperture_transform(exc, size))
    peak = mag.max()
    if peak == 0.0:
        raise ValueError("all-zero excitations: peak normalization undefined")
    return MagnitudePattern(grid=make_uv_grid(size, spacing), magnitude=mag / peak,
                            db_floor=db_floor)


def synthesize_direct(exc: np.ndarray, points, spacing: float = 0.5) -> np.ndarray:
    """Direct-summation |array factor| at arbitrary (u, v) points.

    AF(u, v) = |sum_{m,n} w[m,n] exp(2j*pi*spacing*(m_c*u + n_c*v))| with
    element indices centered on the aperture, normalized so the largest
    computed magnitude is 1. Verification oracle for synthesize_fft;
    O(elements * points).
    """
    exc = np.asarray(exc, dtype=complex)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    mx = np.arange(exc.shape[0]) - (exc.shape[0] - 1) / 2.0
    ny = np.arange(exc.shape[1]) - (exc.shape[1] - 1) / 2.0
    eu = np.exp(2j * np.pi * spacing * np.outer(pts[:, 0], mx))
    ev = np.exp(2j * np.pi * spacing * np.outer(pts[:, 1], ny))
    mag = np.abs(np.einsum("pm,mn,pn->p", eu, exc, ev, optimize=True))
    peak = mag.max()
    if peak == 0.0:
        raise ValueError("all-zero excitations: peak normalization undefined")
    return mag / peak


def to_db(linear, floor: float = DB_FLOOR_DEFAULT):
    """20*log10 of a linear magnitude, clamped from below at floor."""
    linear = np.asarray(linear, dtype=float)
    with np.errstate(divide="ignore"):
        return np.maximum(20.0 * np.log10(linear), floor)


def extract_cut(pattern: MagnitudePattern, axis: str):
    """Principal-plane cut through boresight.

    axis "u" varies u at v = 0, axis "v" the converse. Returns
    (angles_deg, db) over the visible part of the axis, with
    angle = asin(coordinate).
    """
    if axis not in ("u", "v"):
        raise ValueError(f"axis must be 'u' or 'v', got {axis!r}")
    grid = pattern.grid
    center = grid.size // 2
    line = pattern.db[:, center] if axis == "u" else pattern.db[center, :]
    vis = np.abs(grid.coords) <= 1.0
    angles = np.degrees(np.arcsin(grid.coords[vis]))
    return angles, line[vis]
