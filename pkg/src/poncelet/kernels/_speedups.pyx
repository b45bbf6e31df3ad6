# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the map-iteration inner loops.

Must stay behaviour-identical to ``_ref``; tests compare the two backends.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport asin, atan2, cos, fmod, hypot, sin

cnp.import_array()

cdef double TWO_PI = 6.283185307179586476925286766559


cdef inline double _poncelet_step(double x, double R, double c, double t) nogil:
    cdef double theta = TWO_PI * x
    cdef double ax = R * cos(theta)
    cdef double ay = R * sin(theta)
    cdef double wx = c - ax
    cdef double wy = -ay
    cdef double D = hypot(wx, wy)
    cdef double ratio = t / D
    if ratio > 1.0:
        ratio = 1.0
    elif ratio < 0.0:
        ratio = 0.0
    cdef double beta = asin(ratio)
    cdef double cb = cos(beta)
    cdef double sb = sin(beta)
    cdef double ux = (wx * cb + wy * sb) / D
    cdef double uy = (-wx * sb + wy * cb) / D
    cdef double s = -2.0 * (ax * ux + ay * uy)
    cdef double thetap = atan2(ay + s * uy, ax + s * ux)
    cdef double delta = fmod(thetap - theta, TWO_PI)
    if delta < 0.0:
        delta += TWO_PI
    if delta > TWO_PI - 1e-12:
        delta -= TWO_PI
    return x + delta / TWO_PI


cdef inline double _arnold_step(double x, double omega, double K) nogil:
    return x + omega + (K / TWO_PI) * sin(TWO_PI * x)


def poncelet_advance(xs, long n, double R, double c, double t):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = \
        np.array(xs, dtype=np.float64, copy=True).ravel()
    cdef Py_ssize_t m = out.shape[0]
    cdef Py_ssize_t i
    cdef long k
    cdef double x
    with nogil:
        for i in range(m):
            x = out[i]
            for k in range(n):
                x = _poncelet_step(x, R, c, t)
            out[i] = x
    return out


def poncelet_orbit(xs, long depth, double R, double c, double t):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x0 = \
        np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef Py_ssize_t m = x0.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = \
        np.empty((depth + 1, m), dtype=np.float64)
    cdef Py_ssize_t i
    cdef long k
    cdef double x
    with nogil:
        for i in range(m):
            x = x0[i]
            out[0, i] = x
            for k in range(1, depth + 1):
                x = _poncelet_step(x, R, c, t)
                out[k, i] = x
    return out


def arnold_advance(xs, long n, double omega, double K):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = \
        np.array(xs, dtype=np.float64, copy=True).ravel()
    cdef Py_ssize_t m = out.shape[0]
    cdef Py_ssize_t i
    cdef long k
    cdef double x
    with nogil:
        for i in range(m):
            x = out[i]
            for k in range(n):
                x = _arnold_step(x, omega, K)
            out[i] = x
    return out


def arnold_orbit(xs, long depth, double omega, double K):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x0 = \
        np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef Py_ssize_t m = x0.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = \
        np.empty((depth + 1, m), dtype=np.float64)
    cdef Py_ssize_t i
    cdef long k
    cdef double x
    with nogil:
        for i in range(m):
            x = x0[i]
            out[0, i] = x
            for k in range(1, depth + 1):
                x = _arnold_step(x, omega, K)
                out[k, i] = x
    return out
