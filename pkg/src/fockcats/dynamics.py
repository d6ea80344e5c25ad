"""Harmonic time evolution and probability-density surfaces.

With equally spaced levels, evolution is an amplitude-wise phase rotation
``c_n -> exp(-i (n + 1/2) t) c_n``; the zero-point 1/2 is a global phase,
invisible in every density and expectation value, but fixed here so that
amplitude dumps are comparable across implementations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .fock import FockState
from .states import PhaseSpacePoint, PositionGrid, phase_space_from_alpha

__all__ = [
    "DensitySurface",
    "SliceFeatures",
    "TimeGrid",
    "classical_trajectory",
    "density_surface",
    "evolve",
    "overlap_snapshot_features",
]


@dataclass(frozen=True)
class TimeGrid:
    """``n_steps`` uniform time samples spanning [t_min, t_max]."""

    t_min: float
    t_max: float
    n_steps: int

    def __post_init__(self):
        if not (math.isfinite(self.t_min) and math.isfinite(self.t_max)):
            raise ValueError("time bounds must be finite")
        if self.t_min > self.t_max:
            raise ValueError("t_min must not exceed t_max")
        if self.n_steps < 1:
            raise ValueError("a time grid needs at least 1 step")
        if self.n_steps == 1 and self.t_min != self.t_max:
            raise ValueError("a single-step grid must have t_min == t_max")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.n_steps)


@dataclass(frozen=True)
class DensitySurface:
    """rho(x_i, t_j) on a rectangular grid; rows are time slices."""

    x_grid: PositionGrid
    t_grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        expected = (self.t_grid.n_steps, self.x_grid.n_points)
        if values.shape != expected:
            raise ValueError(f"values shape {values.shape} != grid shape {expected}")
        if values.min() < 0.0:
            raise ValueError("probability density cannot be negative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def slice_index(self, t: float) -> int:
        """Index of the time sample nearest ``t`` (no interpolation)."""
        if not self.t_grid.t_min <= t <= self.t_grid.t_max:
            raise ValueError(
                f"t={t} outside grid range [{self.t_grid.t_min}, {self.t_grid.t_max}]"
            )
        return int(np.argmin(np.abs(self.t_grid.values - t)))


@dataclass(frozen=True)
class SliceFeatures:
    """Local maxima of one time slice plus the density at the origin."""

    time: float
    time_index: int
    peaks: tuple[tuple[float, float], ...]  # (position, height), by position
    center_value: float

    def dominant_peaks(self, fraction: float = 0.5) -> tuple[tuple[float, float], ...]:
        """Peaks at least ``fraction`` of the tallest peak's height."""
        if not self.peaks:
            return ()
        cutoff = fraction * max(h for _, h in self.peaks)
        return tuple(p for p in self.peaks if p[1] >= cutoff)


def evolve(state: FockState, t: float) -> FockState:
    """Rotate each amplitude by its level phase; norm is preserved exactly."""
    n = np.arange(state.dim)
    return FockState(state.amps * np.exp(-1j * (n + 0.5) * t))


def classical_trajectory(alpha: complex, t: float) -> PhaseSpacePoint:
    """Phase-space point of the rotating label ``alpha exp(-i t)``."""
    return phase_space_from_alpha(complex(alpha) * np.exp(-1j * t))


def density_surface(
    state: FockState,
    x_grid: PositionGrid,
    t_grid: TimeGrid,
) -> DensitySurface:
    """|psi(x, t)|^2 for the evolved state on the full rectangular grid."""
    basis = kernels.hermite_basis(x_grid.values, state.dim)
    values = kernels.density_surface_values(basis, state.amps, t_grid.values)
    return DensitySurface(x_grid, t_grid, values)


def _local_maxima(x: np.ndarray, y: np.ndarray) -> list[tuple[float, float]]:
    """Strict interior maxima; plateau ties resolve to the leftmost index."""
    peaks = []
    m = y.shape[0]
    i = 1
    while i < m - 1:
        if y[i] > y[i - 1]:
            j = i
            while j + 1 < m and y[j + 1] == y[i]:
                j += 1
            if j < m - 1 and y[j + 1] < y[i]:
                peaks.append((float(x[i]), float(y[i])))
            i = j + 1
        else:
            i += 1
    return peaks


def overlap_snapshot_features(surface: DensitySurface, t: float) -> SliceFeatures:
    """Peak structure of the time slice nearest ``t``."""
    idx = surface.slice_index(t)
    xs = surface.x_grid.values
    row = surface.values[idx]
    center = int(np.argmin(np.abs(xs)))
    return SliceFeatures(
        time=float(surface.t_grid.values[idx]),
        time_index=idx,
        peaks=tuple(_local_maxima(xs, row)),
        center_value=float(row[center]),
    )
