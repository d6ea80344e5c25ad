"""Expectation values, uncertainties, photon statistics, ordered moments.

Quadrature convention: ``x = (a + a+)/sqrt(2)``, ``p = (a - a+)/(i sqrt(2))``
in natural units, fixed so the phase-space mapping in :mod:`.states`
round-trips exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import FockState, lowering_matrix

__all__ = [
    "UncertaintyReport",
    "g2_zero",
    "normally_ordered_moment",
    "photon_distribution",
    "quadrature_expectations",
]

_NORM_SLACK = 1e-6


@dataclass(frozen=True)
class UncertaintyReport:
    """First and second quadrature moments of a state."""

    mean_x: float
    mean_p: float
    var_x: float
    var_p: float

    @property
    def product(self) -> float:
        """Uncertainty product; at least 1/4 for any physical state."""
        return self.var_x * self.var_p


def _require_normalized(state: FockState) -> None:
    deviation = abs(state.norm() - 1.0)
    if deviation > _NORM_SLACK:
        raise ValueError(
            f"state norm deviates from 1 by {deviation:.3g}; "
            "observables are defined for normalized states"
        )


def quadrature_expectations(state: FockState) -> UncertaintyReport:
    """Means and variances of x and p, exact on the truncated space."""
    _require_normalized(state)
    low = lowering_matrix(state.dim).entries
    x_op = (low + low.conj().T) / math.sqrt(2.0)
    p_op = (low - low.conj().T) / (1j * math.sqrt(2.0))
    v = state.amps
    xv = x_op @ v
    pv = p_op @ v
    mean_x = float(np.vdot(v, xv).real)
    mean_p = float(np.vdot(v, pv).real)
    # x and p are Hermitian, so <x^2> = ||x v||^2 on the truncated space
    var_x = max(0.0, float(np.vdot(xv, xv).real) - mean_x**2)
    var_p = max(0.0, float(np.vdot(pv, pv).real) - mean_p**2)
    return UncertaintyReport(mean_x, mean_p, var_x, var_p)


def photon_distribution(state: FockState) -> np.ndarray:
    """Occupation probabilities p_n = |c_n|^2 (sums to 1 within tolerance)."""
    _require_normalized(state)
    return np.abs(state.amps) ** 2


def _lowered(amps: np.ndarray) -> np.ndarray:
    out = np.zeros_like(amps)
    n = amps.shape[0]
    out[: n - 1] = np.sqrt(np.arange(1.0, n)) * amps[1:]
    return out


def normally_ordered_moment(state: FockState, m: int, n: int) -> complex:
    """<(a+)^m a^n>, computed by repeated ladder application.

    Cost is O(dim * (m + n)); no operator powers are materialized. The
    Hermitian pairing <(a+)^m a^n> = <a^m psi | a^n psi> makes
    ``moment(m, n) == conj(moment(n, m))`` hold to rounding.
    """
    if m < 0 or n < 0:
        raise ValueError("moment orders must be non-negative")
    if m + n >= state.dim:
        raise ValueError(
            f"moment order {m + n} is not resolvable at truncation {state.dim}: "
            "the result would be dominated by missing levels"
        )
    bra = state.amps
    for _ in range(m):
        bra = _lowered(bra)
    ket = state.amps
    for _ in range(n):
        ket = _lowered(ket)
    return complex(np.vdot(bra, ket))


def g2_zero(state: FockState) -> float:
    """Zero-delay second-order coherence <a+a+aa> / <a+a>^2."""
    occupancy = normally_ordered_moment(state, 1, 1).real
    if occupancy <= 1e-12:
        raise ValueError("g2 is undefined for a vacuum-like state")
    return normally_ordered_moment(state, 2, 2).real / occupancy**2
