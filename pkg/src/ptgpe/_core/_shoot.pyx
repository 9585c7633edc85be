# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Cython shooting kernel; mirrors shoot_py exactly (same state layout,
same RK4 stages, same potential tabulation)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp

cnp.import_array()

KERNEL_NAME = "cython"

DEF OVERFLOW_BOUND = 1e30


cdef inline void _rhs(double* y, double* V, double* mu, double* g4, double* out) nogil:
    cdef double p1 = y[0], pi = y[1], pj = y[2], pk = y[3]
    cdef double s1 = p1 * p1 + pi * pi - pj * pj - pk * pk
    cdef double sj = 2.0 * (p1 * pj + pi * pk)
    cdef double a1 = V[0] - mu[0] - (g4[0] * s1 - g4[2] * sj)
    cdef double ai = V[1] - mu[1] - (g4[1] * s1 - g4[3] * sj)
    cdef double aj = V[2] - mu[2] - (g4[0] * sj + g4[2] * s1)
    cdef double ak = V[3] - mu[3] - (g4[3] * s1 + g4[1] * sj)
    out[0] = y[4]
    out[1] = y[5]
    out[2] = y[6]
    out[3] = y[7]
    out[4] = a1 * p1 - ai * pi - aj * pj + ak * pk
    out[5] = a1 * pi + ai * p1 - aj * pk - ak * pj
    out[6] = a1 * pj + aj * p1 - ai * pk - ak * pi
    out[7] = a1 * pk + ak * p1 + ai * pj + aj * pi
    out[8] = s1
    out[9] = sj


cdef inline void _rk4_step(double* y, double* Vtab, Py_ssize_t s,
                           double* mu, double* g4, double h) nogil:
    cdef double k1[10]
    cdef double k2[10]
    cdef double k3[10]
    cdef double k4[10]
    cdef double tmp[10]
    cdef Py_ssize_t c
    _rhs(y, Vtab + 8 * s, mu, g4, k1)
    for c in range(10):
        tmp[c] = y[c] + 0.5 * h * k1[c]
    _rhs(tmp, Vtab + 8 * s + 4, mu, g4, k2)
    for c in range(10):
        tmp[c] = y[c] + 0.5 * h * k2[c]
    _rhs(tmp, Vtab + 8 * s + 4, mu, g4, k3)
    for c in range(10):
        tmp[c] = y[c] + h * k3[c]
    _rhs(tmp, Vtab + 8 * s + 8, mu, g4, k4)
    for c in range(10):
        y[c] = y[c] + (h / 6.0) * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c])


def _potential_table(double h, Py_ssize_t nsteps, gamma4, double v0,
                     double sigma, double rho):
    xs = 0.5 * h * np.arange(2 * nsteps + 1)
    env = xs * np.exp(-rho * xs * xs)
    g = np.asarray(gamma4, dtype=float)
    V = np.empty((len(xs), 4))
    V[:, 0] = 0.25 * xs * xs + v0 * np.exp(-sigma * xs * xs) - g[1] * env
    V[:, 1] = g[0] * env
    V[:, 2] = -g[3] * env
    V[:, 3] = g[2] * env
    return V


def shoot_batch(y0, mu, g4, gamma4, double v0, double sigma, double rho,
                double h, Py_ssize_t nsteps, nq=None):
    """Batch RK4 integration; see shoot_py.shoot_batch."""
    cdef Py_ssize_t nquad = nsteps if nq is None else min(nq, nsteps)
    cdef cnp.ndarray[double, ndim=2] y0a = np.ascontiguousarray(y0, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] mua = np.ascontiguousarray(mu, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] ga = np.ascontiguousarray(g4, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] Vt = np.ascontiguousarray(
        _potential_table(h, nsteps, gamma4, v0, sigma, rho))
    cdef Py_ssize_t B = y0a.shape[0]
    cdef cnp.ndarray[double, ndim=2] out = np.zeros((B, 10))
    cdef double* Vp = &Vt[0, 0]
    cdef double y[10]
    cdef double q1, qj
    cdef Py_ssize_t b, s, c
    cdef double amax
    with nogil:
        for b in range(B):
            for c in range(8):
                y[c] = y0a[b, c]
            y[8] = 0.0
            y[9] = 0.0
            for s in range(nsteps):
                amax = 0.0
                for c in range(8):
                    if y[c] > amax:
                        amax = y[c]
                    elif -y[c] > amax:
                        amax = -y[c]
                if amax > OVERFLOW_BOUND:
                    break
                q1 = y[8]
                qj = y[9]
                _rk4_step(y, Vp, s, &mua[b, 0], &ga[0], h)
                if s >= nquad:
                    y[8] = q1
                    y[9] = qj
            for c in range(10):
                out[b, c] = y[c]
    return out


def shoot_record(y0, mu, g4, gamma4, double v0, double sigma, double rho,
                 double h, Py_ssize_t nsteps, Py_ssize_t stride, nq=None):
    """Single-state integration with trajectory recording; see shoot_py."""
    cdef Py_ssize_t nquad = nsteps if nq is None else min(nq, nsteps)
    cdef cnp.ndarray[double, ndim=1] y0a = np.ascontiguousarray(
        np.asarray(y0, dtype=np.float64).reshape(8))
    cdef cnp.ndarray[double, ndim=1] mua = np.ascontiguousarray(
        np.asarray(mu, dtype=np.float64).reshape(4))
    cdef cnp.ndarray[double, ndim=1] ga = np.ascontiguousarray(g4, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] Vt = np.ascontiguousarray(
        _potential_table(h, nsteps, gamma4, v0, sigma, rho))
    cdef Py_ssize_t nrec = nsteps // stride + 1
    cdef cnp.ndarray[double, ndim=2] traj = np.empty((nrec, 8))
    cdef cnp.ndarray[double, ndim=1] yfinal = np.empty(10)
    cdef double* Vp = &Vt[0, 0]
    cdef double y[10]
    cdef double q1, qj, amax
    cdef Py_ssize_t s, c
    with nogil:
        for c in range(8):
            y[c] = y0a[c]
            traj[0, c] = y[c]
        y[8] = 0.0
        y[9] = 0.0
        for s in range(nsteps):
            amax = 0.0
            for c in range(8):
                if y[c] > amax:
                    amax = y[c]
                elif -y[c] > amax:
                    amax = -y[c]
            if amax > OVERFLOW_BOUND:
                pass
            else:
                q1 = y[8]
                qj = y[9]
                _rk4_step(y, Vp, s, &mua[0], &ga[0], h)
                if s >= nquad:
                    y[8] = q1
                    y[9] = qj
            if (s + 1) % stride == 0:
                for c in range(8):
                    traj[(s + 1) // stride, c] = y[c]
        for c in range(10):
            yfinal[c] = y[c]
    return traj, yfinal
