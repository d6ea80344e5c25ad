"""Truncated Fock-space linear algebra: states, operators, ladder matrices.

Everything works on a finite number basis |0>..|N-1> in natural units
(hbar = m = omega = 1). Values are immutable after construction and all
operations are pure functions, so they are safe to call from any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DEFAULT_TOLERANCES",
    "FockOperator",
    "FockState",
    "Tolerances",
    "TruncationError",
    "adjoint",
    "apply",
    "auto_dim",
    "identity",
    "inner_product",
    "lowering_matrix",
    "matrix_exponential",
    "raising_matrix",
    "required_dim",
    "unitarity_defect",
]


class TruncationError(ValueError):
    """A requested basis size cannot hold the state within tolerance."""

    def __init__(self, message: str, required_dim: int):
        super().__init__(message)
        self.required_dim = required_dim


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances and the truncation safety margin.

    ``eps_norm`` bounds the truncated tail probability of constructed
    states, ``eps_op`` bounds unitarity defects, ``eps_eq`` bounds
    per-amplitude agreement between equivalent constructions, and ``pad``
    is the number of extra levels kept above the tail-rule minimum.
    """

    eps_norm: float = 1e-12
    eps_op: float = 1e-10
    eps_eq: float = 1e-10
    pad: int = 12

    def __post_init__(self):
        for name in ("eps_norm", "eps_op", "eps_eq"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.pad < 0:
            raise ValueError("pad must be non-negative")


DEFAULT_TOLERANCES = Tolerances()


def _frozen_array(values, dtype, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=dtype, order="C", copy=True)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FockState:
    """Complex amplitude vector over the number states |0>..|dim-1>.

    Constructors in this package produce unit-norm states (within
    ``eps_norm``); states obtained through :func:`apply` may carry any norm.
    """

    amps: np.ndarray

    def __post_init__(self):
        amps = _frozen_array(self.amps, np.complex128, 1)
        if amps.shape[0] < 1:
            raise ValueError("a Fock state needs at least one amplitude")
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class FockOperator:
    """Dense complex matrix in the number basis.

    ``unitary`` marks operators produced by exponentiating a skew-Hermitian
    generator; see :func:`unitarity_defect` for the corresponding check.
    """

    entries: np.ndarray
    unitary: bool = field(default=False, compare=False)

    def __post_init__(self):
        entries = _frozen_array(self.entries, np.complex128, 2)
        if entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise ValueError(f"operator matrix must be square, got {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def lowering_matrix(dim: int) -> FockOperator:
    """Annihilation operator: sqrt(n) on the first superdiagonal."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    return FockOperator(np.diag(np.sqrt(np.arange(1.0, dim)), k=1))


def raising_matrix(dim: int) -> FockOperator:
    """Creation operator, the adjoint of :func:`lowering_matrix`."""
    return adjoint(lowering_matrix(dim))


def identity(dim: int) -> FockOperator:
    if dim < 1:
        raise ValueError("dim must be at least 1")
    return FockOperator(np.eye(dim))


def adjoint(op: FockOperator) -> FockOperator:
    return FockOperator(op.entries.conj().T, unitary=op.unitary)


def apply(op: FockOperator, state: FockState) -> FockState:
    """Matrix-vector product; the result is deliberately not renormalized."""
    if op.dim != state.dim:
        raise ValueError(f"operator dim {op.dim} does not match state dim {state.dim}")
    return FockState(op.entries @ state.amps)


def inner_product(s1: FockState, s2: FockState) -> complex:
    """<s1|s2> with the bra conjugated; conjugate-symmetric in its arguments."""
    if s1.dim != s2.dim:
        raise ValueError(f"state dims differ: {s1.dim} vs {s2.dim}")
    return complex(np.vdot(s1.amps, s2.amps))


def unitarity_defect(op: FockOperator, margin: int = 0) -> float:
    """max |(U+U - 1)_{ij}| over rows/cols below ``dim - margin``.

    The top ``margin`` levels of an operator built in a truncated basis are
    the ones corrupted by the missing levels above, so checks exclude them.
    """
    if not 0 <= margin < op.dim:
        raise ValueError("margin must satisfy 0 <= margin < dim")
    u = op.entries
    defect = u.conj().T @ u - np.eye(op.dim)
    sub = op.dim - margin
    return float(np.max(np.abs(defect[:sub, :sub])))


# Diagonal Pade approximants for the matrix exponential, after Higham (2005):
# numerator coefficients b_k for orders 3..13 and the 1-norm thresholds below
# which each order meets double-precision accuracy without scaling.
_PADE_B = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (
        17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0,
    ),
    13: (
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0, 129060195264000.0, 10559470521600.0,
        670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
        960960.0, 16380.0, 182.0, 1.0,
    ),
}
_PADE_THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}


def _pade_uv(a: np.ndarray, order: int):
    b = _PADE_B[order]
    eye = np.eye(a.shape[0], dtype=a.dtype)
    a2 = a @ a
    if order == 13:
        a4 = a2 @ a2
        a6 = a2 @ a4
        u = a @ (
            a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
            + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye
        )
        v = (
            a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
            + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye
        )
        return u, v
    powers = [eye, a2]
    for _ in range(order // 2 - 1):
        powers.append(powers[-1] @ a2)
    u = a @ sum(b[2 * k + 1] * powers[k] for k in range(order // 2 + 1))
    v = sum(b[2 * k] * powers[k] for k in range(order // 2 + 1))
    return u, v


def matrix_exponential(op: FockOperator) -> FockOperator:
    """exp(M) by Pade approximation with scaling and squaring.

    The Pade order is chosen from {3, 5, 7, 9, 13} by the 1-norm thresholds
    of Higham's 2005 analysis; above the order-13 threshold the input is
    scaled by 2^-s with ``s = ceil(log2(norm / theta_13))`` and the result
    squared ``s`` times. For an exactly skew-Hermitian input the result is
    unitary up to rounding and is flagged as such.
    """
    a = np.asarray(op.entries, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix exponential of a non-finite matrix")
    skew = not np.any(a + a.conj().T)

    norm1 = float(np.linalg.norm(a, 1))
    squarings = 0
    scaled = a
    for order in (3, 5, 7, 9):
        if norm1 <= _PADE_THETA[order]:
            break
    else:
        order = 13
        if norm1 > _PADE_THETA[13]:
            squarings = int(math.ceil(math.log2(norm1 / _PADE_THETA[13])))
            scaled = a / (2.0 ** squarings)

    u, v = _pade_uv(scaled, order)
    result = np.linalg.solve(v - u, v + u)
    for _ in range(squarings):
        result = result @ result
    if not np.all(np.isfinite(result)):
        raise OverflowError(
            "matrix exponential overflowed; rescale the input instead of "
            "relying on a clamped result"
        )
    return FockOperator(result, unitary=skew)


def required_dim(alpha: complex, eps_norm: float = DEFAULT_TOLERANCES.eps_norm) -> int:
    """Smallest basis size whose occupation tail beyond it stays below eps.

    The occupation numbers of a coherent state follow a Poisson law with
    mean |alpha|^2; even/odd superpositions of +-alpha are bounded by twice
    the same tail, so one rule serves every constructor here.
    """
    alpha = complex(alpha)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise ValueError("alpha must be finite")
    nbar = abs(alpha) ** 2
    if nbar > 700.0:
        raise ValueError(
            f"|alpha|^2 = {nbar:.3g} is beyond the supported truncation range"
        )
    term = math.exp(-nbar)
    cdf = term
    n = 1
    while 1.0 - cdf >= eps_norm:
        term *= nbar / n
        cdf += term
        n += 1
    return n


def auto_dim(alpha: complex, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Default truncation: the tail rule of :func:`required_dim` plus pad."""
    return required_dim(alpha, tol.eps_norm) + tol.pad
