"""Grid-evaluation kernels with a compiled core and a NumPy fallback.

Two implementations of the same two functions exist:

* ``cython`` -- C loops compiled from ``_cy.pyx`` (built at install time);
* ``python`` -- vectorized NumPy reference in ``_py.py``.

The compiled backend is selected at import when available. ``set_backend``
switches explicitly (used by the benchmark and the cross-backend tests);
within one build the active backend is fixed, so outputs are reproducible.
"""

from __future__ import annotations

import numpy as np

from . import _py

_IMPLS = {"python": _py}
try:  # pragma: no cover - depends on the build
    from . import _cy

    _IMPLS["cython"] = _cy
except ImportError:  # pragma: no cover
    _cy = None

_active = "cython" if "cython" in _IMPLS else "python"


def available_backends() -> tuple[str, ...]:
    """Names of the kernel backends usable in this build."""
    return tuple(sorted(_IMPLS))


def active_backend() -> str:
    """Name of the backend currently answering kernel calls."""
    return _active


def set_backend(name: str) -> None:
    """Select a kernel backend by name; raises if it is not available."""
    global _active
    if name not in _IMPLS:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {available_backends()}"
        )
    _active = name


def hermite_basis(x, n_levels: int) -> np.ndarray:
    """Eigenfunction table phi_n(x_i), shape ``(len(x), n_levels)``."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("x must be one-dimensional")
    n_levels = int(n_levels)
    if n_levels < 1:
        raise ValueError("n_levels must be at least 1")
    return _IMPLS[_active].hermite_basis(x, n_levels)


def density_surface_values(basis, amps, times) -> np.ndarray:
    """Probability density rho(x_i, t_j), shape ``(len(times), len(x))``."""
    basis = np.ascontiguousarray(basis, dtype=np.float64)
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    times = np.ascontiguousarray(times, dtype=np.float64)
    if basis.ndim != 2 or basis.shape[1] != amps.shape[0]:
        raise ValueError("basis must have one column per amplitude")
    return _IMPLS[_active].density_surface_values(basis, amps, times)
