"""Pure-Python (numpy) kernel for the displaced-state overlap table.

Fallback used when the compiled extension is unavailable.  Same algorithm
as the Cython kernel: for fixed x = 4g^2 the associated Laguerre values
L_m^k(x) are generated by the three-term recurrence in m, vectorized over
the order-offset axis k = n - m, and combined with the prefactor
(2g)^k exp(-2g^2) sqrt(m!/n!) in log space so no intermediate overflows.
"""

import math

import numpy as np

BACKEND = "python"


def fill_table(delta: float, g: float, size: int) -> np.ndarray:
    """Dense symmetric table D[m, n] = (delta/2)(-1)^m <m|n> for m, n < size."""
    half = 0.5 * delta
    out = np.zeros((size, size))
    if g == 0.0:
        # zero displacement: overlap is the identity
        signs = np.where(np.arange(size) % 2 == 0, 1.0, -1.0)
        np.fill_diagonal(out, half * signs)
        return out

    x = 4.0 * g * g
    log2g = math.log(2.0 * g)
    lgam = np.array([math.lgamma(j + 1.0) for j in range(size + 1)])
    karr = np.arange(size, dtype=float)

    def write_row(m, lag):
        width = size - m
        logpref = (karr[:width] * log2g - 2.0 * g * g
                   + 0.5 * (lgam[m] - lgam[m : m + width]))
        with np.errstate(divide="ignore"):
            vals = np.where(
                lag == 0.0,
                0.0,
                np.sign(lag) * np.exp(logpref + np.log(np.abs(lag))),
            )
        row = (half if m % 2 == 0 else -half) * vals
        out[m, m:] = row
        out[m + 1 :, m] = row[1:]

    l_prev = np.ones(size)                 # L_0^k
    write_row(0, l_prev)
    if size > 1:
        l_cur = 1.0 + karr[: size - 1] - x  # L_1^k
        write_row(1, l_cur)
    for m in range(2, size):
        width = size - m
        k = karr[:width]
        nxt = ((2.0 * (m - 1) + k + 1.0 - x) * l_cur[:width]
               - (m - 1.0 + k) * l_prev[:width]) / m
        l_prev = l_cur
        l_cur = nxt
        write_row(m, l_cur)
    return out
