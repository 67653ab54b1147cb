# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled recurrence kernels.

Same contracts as ``radialeit._kernels_py``; see there for the maths.  These
loops are where essentially all evaluation time goes (basis tables under
quadrature, Legendre tables for the explicit-harmonic checks), hence the
typed inner loops.  Traversal is degree-major so every inner loop reads and
writes contiguous rows, and the per-element arithmetic matches the NumPy
fallback expression for expression, so the two backends agree bitwise.
"""

import numpy as np


def jacobi_table(const double[::1] rec_a, const double[::1] rec_b,
                 const double[::1] rec_c, double p0, const double[::1] r):
    """Evaluate degrees 0..K of a three-term recurrence at every point of r."""
    cdef Py_ssize_t kmax = rec_b.shape[0] - 1
    cdef Py_ssize_t n = r.shape[0]
    out_arr = np.empty((kmax + 1, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double ak, bk, ck
    for i in range(n):
        out[0, i] = p0
    for k in range(kmax):
        ak = rec_a[k]
        bk = rec_b[k]
        ck = rec_c[k]
        if k == 0:
            for i in range(n):
                out[1, i] = ((r[i] - bk) * out[0, i] - ak * 0.0) / ck
        else:
            for i in range(n):
                out[k + 1, i] = ((r[i] - bk) * out[k, i] - ak * out[k - 1, i]) / ck
    return out_arr


def legendre_table(const double[::1] t, Py_ssize_t lmax):
    """Legendre polynomials and their t-derivatives, degrees 0..lmax."""
    cdef Py_ssize_t n = t.shape[0]
    p_arr = np.empty((lmax + 1, n), dtype=np.float64)
    dp_arr = np.empty((lmax + 1, n), dtype=np.float64)
    cdef double[:, ::1] p = p_arr
    cdef double[:, ::1] dp = dp_arr
    cdef Py_ssize_t i, k
    cdef double c1, c2, c3
    for i in range(n):
        p[0, i] = 1.0
        dp[0, i] = 0.0
    if lmax >= 1:
        for i in range(n):
            p[1, i] = t[i]
            dp[1, i] = 1.0
    for k in range(1, lmax):
        c1 = 2 * k + 1
        c2 = k
        c3 = k + 1
        for i in range(n):
            p[k + 1, i] = (c1 * t[i] * p[k, i] - c2 * p[k - 1, i]) / c3
            dp[k + 1, i] = c1 * p[k, i] + dp[k - 1, i]
    return p_arr, dp_arr
