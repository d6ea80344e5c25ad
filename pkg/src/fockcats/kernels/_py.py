"""Pure-NumPy kernel backend.

Reference implementation of the two hot loops; the Cython backend in
``_cy.pyx`` must agree with these functions to floating-point noise.
"""

import math

import numpy as np


def hermite_basis(x, n_levels):
    """Oscillator eigenfunctions phi_0..phi_{n_levels-1} at each grid point.

    Returns a ``(len(x), n_levels)`` float64 array built with the normalized
    recurrence ``phi_n = sqrt(2/n) x phi_{n-1} - sqrt((n-1)/n) phi_{n-2}``,
    which stays bounded where the raw polynomial recurrence overflows.
    """
    out = np.empty((x.shape[0], n_levels))
    out[:, 0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n_levels > 1:
        out[:, 1] = math.sqrt(2.0) * x * out[:, 0]
    for n in range(2, n_levels):
        out[:, n] = (
            math.sqrt(2.0 / n) * x * out[:, n - 1]
            - math.sqrt((n - 1.0) / n) * out[:, n - 2]
        )
    return out


def density_surface_values(basis, amps, times):
    """|psi(x, t)|^2 on the full (time x position) grid.

    ``basis`` is the ``hermite_basis`` matrix for the position grid; each
    amplitude picks up the phase ``exp(-i (n + 1/2) t)`` before the basis sum.
    """
    n = np.arange(amps.shape[0])
    weights = np.exp(-1j * np.outer(times, n + 0.5)) * amps
    psi = weights @ basis.T
    return psi.real ** 2 + psi.imag ** 2
