"""State constructors and position-space wavefunctions.

Coherent states are built three ways that must agree: directly from their
number-basis amplitudes, by exponentiating the displacement generator, and
(in position space) from the closed-form Gaussian. Even/odd superpositions
of +-alpha ("cat" states) get the same treatment. All cross-form
comparisons are physical, i.e. up to one global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from . import fock, kernels
from .fock import DEFAULT_TOLERANCES, FockOperator, FockState, Tolerances, TruncationError

__all__ = [
    "Parity",
    "PhaseSpacePoint",
    "PositionGrid",
    "alpha_from_phase_space",
    "cat_state",
    "cat_wavefunction_closed",
    "coherent_state",
    "coherent_via_displacement",
    "displacement_generator",
    "displacement_operator",
    "gaussian_wavefunction",
    "hermite_functions",
    "number_state",
    "phase_space_from_alpha",
    "position_wavefunction",
]

Parity = Literal["even", "odd"]
_PARITIES = ("even", "odd")


class PhaseSpacePoint(NamedTuple):
    """Expectation values (<x>, <p>) in natural units."""

    x0: float
    p0: float


@dataclass(frozen=True)
class PositionGrid:
    """Uniform grid of ``n_points`` positions spanning [x_min, x_max]."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("grid bounds must be finite")
        if self.x_min >= self.x_max:
            raise ValueError("x_min must be below x_max")
        if self.n_points < 2:
            raise ValueError("a position grid needs at least 2 points")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)


def _check_parity(parity: str) -> str:
    if parity not in _PARITIES:
        raise ValueError(f"parity must be one of {_PARITIES}, got {parity!r}")
    return parity


def _resolve_dim(alpha: complex, dim: int | None, tol: Tolerances) -> int:
    if dim is None:
        return fock.auto_dim(alpha, tol)
    dim = int(dim)
    needed = fock.required_dim(alpha, tol.eps_norm)
    if dim < needed:
        raise TruncationError(
            f"dim={dim} cannot hold alpha={alpha} at eps_norm={tol.eps_norm:g}; "
            f"need at least {needed} (auto rule gives {needed + tol.pad})",
            required_dim=needed + tol.pad,
        )
    return dim


def number_state(n: int, dim: int) -> FockState:
    """The number state |n> in a basis of size ``dim``."""
    n = int(n)
    if not 0 <= n < dim:
        raise ValueError(f"number state index {n} out of range for dim {dim}")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[n] = 1.0
    return FockState(amps)


def _monomial_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    """alpha^n / sqrt(n!) for n < dim, accumulated multiplicatively."""
    ratios = np.ones(dim, dtype=np.complex128)
    if dim > 1:
        ratios[1:] = alpha / np.sqrt(np.arange(1.0, dim))
    return np.cumprod(ratios)


def coherent_state(
    alpha: complex,
    dim: int | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> FockState:
    """Coherent state with label ``alpha`` from its number-basis amplitudes.

    Parameters
    ----------
    alpha : complex
        Coherent-state label; the annihilation eigenvalue.
    dim : int, optional
        Basis size. Defaults to the tail rule plus safety pad; an explicit
        value below the tail rule raises :class:`TruncationError`.
    tol : Tolerances, optional
        Truncation tolerances used for the automatic sizing and validation.

    Returns
    -------
    FockState
        Amplitudes ``exp(-|alpha|^2/2) alpha^n / sqrt(n!)``, unit norm
        within ``tol.eps_norm``.
    """
    alpha = complex(alpha)
    dim = _resolve_dim(alpha, dim, tol)
    amps = math.exp(-0.5 * abs(alpha) ** 2) * _monomial_amplitudes(alpha, dim)
    return FockState(amps)


def displacement_generator(alpha: complex, dim: int) -> FockOperator:
    """Skew-Hermitian generator ``alpha a+ - conj(alpha) a``."""
    low = fock.lowering_matrix(dim).entries
    return FockOperator(alpha * low.conj().T - np.conj(alpha) * low)


def displacement_operator(
    alpha: complex,
    dim: int,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> FockOperator:
    """Displacement operator on ``dim`` levels.

    Exponentiated at ``dim + tol.pad`` and projected back down, because the
    top rows of an exponential taken in a truncated basis are corrupted.
    The projected matrix is column-truncated, hence not flagged unitary.
    """
    alpha = complex(alpha)
    big = fock.matrix_exponential(displacement_generator(alpha, dim + tol.pad))
    return FockOperator(big.entries[:dim, :dim])


def coherent_via_displacement(
    alpha: complex,
    dim: int | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> FockState:
    """Displace the vacuum: the operator route to the same coherent state."""
    alpha = complex(alpha)
    dim = _resolve_dim(alpha, dim, tol)
    big = fock.matrix_exponential(displacement_generator(alpha, dim + tol.pad))
    return FockState(big.entries[:dim, 0])


def alpha_from_phase_space(
    pt: PhaseSpacePoint,
    mass: float = 1.0,
    omega: float = 1.0,
    hbar: float = 1.0,
) -> complex:
    """Map (<x>, <p>) to the coherent label.

    ``Re alpha = <x> sqrt(m w / 2 hbar)``, ``Im alpha = <p> / sqrt(2 m w hbar)``;
    in natural units this is ``(x0 + i p0) / sqrt(2)``.
    """
    if mass <= 0 or omega <= 0 or hbar <= 0:
        raise ValueError("mass, omega and hbar must be positive")
    x0, p0 = float(pt[0]), float(pt[1])
    return complex(
        x0 * math.sqrt(mass * omega / (2.0 * hbar)),
        p0 / math.sqrt(2.0 * mass * omega * hbar),
    )


def phase_space_from_alpha(
    alpha: complex,
    mass: float = 1.0,
    omega: float = 1.0,
    hbar: float = 1.0,
) -> PhaseSpacePoint:
    """Inverse of :func:`alpha_from_phase_space`."""
    if mass <= 0 or omega <= 0 or hbar <= 0:
        raise ValueError("mass, omega and hbar must be positive")
    alpha = complex(alpha)
    return PhaseSpacePoint(
        alpha.real / math.sqrt(mass * omega / (2.0 * hbar)),
        alpha.imag * math.sqrt(2.0 * mass * omega * hbar),
    )


def cat_state(
    alpha: complex,
    parity: Parity,
    dim: int | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> FockState:
    """Even or odd superposition of |alpha> and |-alpha>.

    Parameters
    ----------
    alpha : complex
        Displacement label of the two superposed components.
    parity : {"even", "odd"}
        Which superposition: even lives on n = 0, 2, 4, ..., odd on
        n = 1, 3, 5, ...
    dim : int, optional
        Basis size, defaulting to the tail rule plus pad.
    tol : Tolerances, optional

    Returns
    -------
    FockState
        ``alpha^n / sqrt(n!)`` on the supported parity class, normalized by
        ``cosh(|alpha|^2)`` (even) or ``sinh(|alpha|^2)`` (odd). The
        normalization is exact for complex alpha as well, since the
        occupied-level weights depend only on |alpha|.

    Raises
    ------
    ValueError
        For the odd superposition at alpha = 0, where the normalization is
        singular; the limit state is |1>, available as ``number_state(1, dim)``.
    """
    alpha = complex(alpha)
    parity = _check_parity(parity)
    if parity == "odd" and alpha == 0:
        raise ValueError(
            "odd cat state is undefined at alpha = 0; "
            "use number_state(1, dim) for the one-quantum state"
        )
    dim = _resolve_dim(alpha, dim, tol)
    mono = _monomial_amplitudes(alpha, dim)
    amps = np.zeros(dim, dtype=np.complex128)
    nbar = abs(alpha) ** 2
    if parity == "even":
        amps[0::2] = mono[0::2] / math.sqrt(math.cosh(nbar))
    else:
        amps[1::2] = mono[1::2] / math.sqrt(math.sinh(nbar))
    return FockState(amps)


def hermite_functions(x, n_max: int) -> np.ndarray:
    """Orthonormal oscillator eigenfunctions phi_0(x) .. phi_{n_max}(x).

    Uses the normalized recurrence
    ``phi_n = sqrt(2/n) x phi_{n-1} - sqrt((n-1)/n) phi_{n-2}`` with
    ``phi_0 = pi^(-1/4) exp(-x^2/2)``. The normalized form is the
    stability-critical choice: raw Hermite polynomials overflow near
    n = 150, while these stay bounded. For |x| large enough that phi_0
    underflows, the whole column is (correctly) zero.

    Scalar ``x`` gives a 1-D array of length ``n_max + 1``; a 1-D array
    gives shape ``(len(x), n_max + 1)``.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    scalar = np.ndim(x) == 0
    table = kernels.hermite_basis(np.atleast_1d(np.asarray(x, dtype=float)), n_max + 1)
    return table[0] if scalar else table


def position_wavefunction(state: FockState, grid: PositionGrid) -> np.ndarray:
    """psi(x_i) = sum_n c_n phi_n(x_i) on the grid."""
    basis = kernels.hermite_basis(grid.values, state.dim)
    return basis @ state.amps


def gaussian_wavefunction(pt: PhaseSpacePoint, grid: PositionGrid) -> np.ndarray:
    """Minimum-uncertainty Gaussian packet centered at (<x>, <p>).

    Ground-state width (position variance 1/2 in natural units):
    ``pi^(-1/4) exp(-(x - x0)^2 / 2 + i p0 x)``.
    """
    x = grid.values
    x0, p0 = float(pt[0]), float(pt[1])
    return math.pi ** -0.25 * np.exp(-0.5 * (x - x0) ** 2 + 1j * p0 * x)


def cat_wavefunction_closed(
    pt: PhaseSpacePoint,
    parity: Parity,
    grid: PositionGrid,
) -> np.ndarray:
    """Closed-form position wavefunction of the even/odd superposition.

    Two Gaussian packets at +-(x0, p0) combined with sign +1 (even) or -1
    (odd), including the ``1 +- exp(-(x0^2+p0^2))`` overlap normalization
    and an overall ``exp(-2i x0 p0)`` phase. The phase convention differs
    from the number-basis route by a global phase only.
    """
    parity = _check_parity(parity)
    x0, p0 = float(pt[0]), float(pt[1])
    sign = 1.0 if parity == "even" else -1.0
    overlap = math.exp(-(x0 * x0 + p0 * p0))
    denom_sq = 1.0 + sign * overlap
    if denom_sq <= 0.0:
        raise ValueError(
            "odd superposition is degenerate at the phase-space origin"
        )
    x = grid.values
    packets = np.exp(-0.5 * (x - x0) ** 2 + 1j * p0 * x) + sign * np.exp(
        -0.5 * (x + x0) ** 2 - 1j * p0 * x
    )
    prefactor = np.exp(-2j * x0 * p0)
    return prefactor * packets / (math.sqrt(2.0) * math.pi ** 0.25 * math.sqrt(denom_sq))
