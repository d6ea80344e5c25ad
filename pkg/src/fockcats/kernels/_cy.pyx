# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: same contract as ``_py``, C inner loops."""

import numpy as np

from libc.math cimport cos, exp, pow, sin, sqrt

cdef double PI = 3.14159265358979323846


def hermite_basis(const double[::1] x, Py_ssize_t n_levels):
    """Oscillator eigenfunction table, shape ``(len(x), n_levels)``."""
    cdef Py_ssize_t m = x.shape[0]
    out_arr = np.empty((m, n_levels))
    cdef double[:, ::1] out = out_arr
    cdef double norm0 = pow(PI, -0.25)
    cdef double sqrt2 = sqrt(2.0)
    cdef Py_ssize_t i, n
    cdef double xi, f0, f1, f2
    for i in range(m):
        xi = x[i]
        f0 = norm0 * exp(-0.5 * xi * xi)
        out[i, 0] = f0
        if n_levels > 1:
            f1 = sqrt2 * xi * f0
            out[i, 1] = f1
            for n in range(2, n_levels):
                f2 = sqrt(2.0 / n) * xi * f1 - sqrt((n - 1.0) / n) * f0
                out[i, n] = f2
                f0 = f1
                f1 = f2
    return out_arr


def density_surface_values(const double[:, ::1] basis,
                           const double complex[::1] amps,
                           const double[::1] times):
    """|psi(x, t)|^2 over the (time x position) grid, fused in one pass."""
    cdef Py_ssize_t n_x = basis.shape[0]
    cdef Py_ssize_t n_lv = basis.shape[1]
    cdef Py_ssize_t n_t = times.shape[0]
    out_arr = np.empty((n_t, n_x))
    cdef double[:, ::1] out = out_arr
    wre_arr = np.empty(n_lv)
    wim_arr = np.empty(n_lv)
    cdef double[::1] wre = wre_arr
    cdef double[::1] wim = wim_arr
    cdef Py_ssize_t i, j, n
    cdef double t, ph, c, s, are, aim, b, sre, sim
    for j in range(n_t):
        t = times[j]
        for n in range(n_lv):
            ph = -(n + 0.5) * t
            c = cos(ph)
            s = sin(ph)
            are = amps[n].real
            aim = amps[n].imag
            wre[n] = are * c - aim * s
            wim[n] = are * s + aim * c
        for i in range(n_x):
            sre = 0.0
            sim = 0.0
            for n in range(n_lv):
                b = basis[i, n]
                sre += b * wre[n]
                sim += b * wim[n]
            out[j, i] = sre * sre + sim * sim
    return out_arr
