# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the displaced-state overlap table.

Scalar C loops over the order offset k = n - m; the Laguerre recurrence
runs in m for each k at fixed argument x = 4g^2, and the factorial-ratio
prefactor is assembled from log-gamma differences to stay overflow safe.
"""

from libc.math cimport exp, lgamma, log

import numpy as np

BACKEND = "cython"


cdef inline double _entry(double half, double log2g, double gg2,
                          double[::1] lgam, Py_ssize_t m, Py_ssize_t k,
                          double lag) noexcept:
    cdef double lp, val
    if lag == 0.0:
        val = 0.0
    else:
        lp = k * log2g - gg2 + 0.5 * (lgam[m] - lgam[m + k])
        if lag > 0.0:
            val = exp(lp + log(lag))
        else:
            val = -exp(lp + log(-lag))
    if m % 2 != 0:
        return -half * val
    return half * val


def fill_table(double delta, double g, Py_ssize_t size):
    """Dense symmetric table D[m, n] = (delta/2)(-1)^m <m|n> for m, n < size."""
    out_arr = np.zeros((size, size))
    cdef double[:, ::1] out = out_arr
    cdef double[::1] lgam = np.empty(size + 1)
    cdef Py_ssize_t m, k, i
    cdef double half = 0.5 * delta
    cdef double x, log2g, gg2, l_prev, l_cur, nxt, val

    for i in range(size + 1):
        lgam[i] = lgamma(i + 1.0)

    if g == 0.0:
        for m in range(size):
            out[m, m] = half if m % 2 == 0 else -half
        return out_arr

    x = 4.0 * g * g
    gg2 = 2.0 * g * g
    log2g = log(2.0 * g)
    for k in range(size):
        val = _entry(half, log2g, gg2, lgam, 0, k, 1.0)
        out[0, k] = val
        out[k, 0] = val
        if size - k > 1:
            l_prev = 1.0                  # L_0^k
            l_cur = 1.0 + k - x           # L_1^k
            val = _entry(half, log2g, gg2, lgam, 1, k, l_cur)
            out[1, 1 + k] = val
            out[1 + k, 1] = val
            for m in range(2, size - k):
                nxt = ((2.0 * (m - 1) + k + 1.0 - x) * l_cur
                       - (m - 1.0 + k) * l_prev) / m
                l_prev = l_cur
                l_cur = nxt
                val = _entry(half, log2g, gg2, lgam, m, k, l_cur)
                out[m, m + k] = val
                out[m + k, m] = val
    return out_arr
