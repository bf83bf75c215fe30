"""Shared oracles for the test suite.

Everything here is deliberately independent of the package internals:
displaced states are built by brute force in the undisplaced Fock basis,
reference spectra come from diagonalizing the Hamiltonian assembled in
that same basis, and polynomial roots are cross-checked against companion
matrices with coefficients from the Faddeev-LeVerrier recursion.
"""

import math

import numpy as np
import pytest

from rabispec import ModelParams


def displaced_fock_state(n, g, sign, cutoff=200):
    """Number state |n> of the ladder operator a + sign*g, in the Fock basis.

    The displaced vacuum is exp(-g^2/2 - sign*g*a^dag)|0>; higher states
    follow by applying (a^dag + sign*g)/sqrt(k).
    """
    j = np.arange(cutoff + 1)
    v = np.zeros(cutoff + 1)
    if g == 0:
        v[0] = 1.0
    else:
        logmag = -0.5 * g * g + j * math.log(g) - 0.5 * np.array(
            [math.lgamma(jj + 1.0) for jj in j])
        v = np.exp(logmag) * (-sign) ** j
    for k in range(n):
        w = np.zeros_like(v)
        w[1:] = np.sqrt(j[1:]) * v[:-1]
        v = (w + sign * g * v) / math.sqrt(k + 1)
    return v


def overlap_oracle(m, n, g, cutoff=200):
    """Brute-force <m_B|n_A> with A = a + g, B = a - g."""
    return float(displaced_fock_state(m, g, -1, cutoff)
                 @ displaced_fock_state(n, g, +1, cutoff))


def fock_basis_levels(params: ModelParams, k, cutoff=150):
    """Reference spectrum from the undisplaced Fock basis.

    H = -(eps*sz + delta*sx)/2 + n + g (a^dag + a) sz, truncated at
    `cutoff` photons; completely independent of the displaced-basis path.
    """
    dim = cutoff + 1
    n = np.arange(dim)
    a = np.diag(np.sqrt(n[1:]), 1)
    x = a + a.T
    num = np.diag(n).astype(float)
    sz = np.diag([1.0, -1.0])
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    eye2 = np.eye(2)
    h = (-0.5 * params.epsilon * np.kron(sz, np.eye(dim))
         - 0.5 * params.delta * np.kron(sx, np.eye(dim))
         + np.kron(eye2, num)
         + params.g * np.kron(sz, x))
    return np.linalg.eigvalsh(h)[:k]


def charpoly_coeffs(a):
    """Monic characteristic polynomial by Faddeev-LeVerrier (no eigensolver)."""
    n = a.shape[0]
    m = np.eye(n)
    coeffs = [1.0]
    for k in range(1, n + 1):
        am = a @ m
        ck = -np.trace(am) / k
        coeffs.append(ck)
        m = am + ck * np.eye(n)
    return coeffs


def companion_roots(coeffs):
    """Roots of a monic polynomial via its companion matrix."""
    coeffs = np.asarray(coeffs, dtype=float)
    n = len(coeffs) - 1
    comp = np.zeros((n, n))
    comp[0, :] = -coeffs[1:]
    comp[1:, :-1] = np.eye(n - 1)
    return np.sort_complex(np.linalg.eigvals(comp))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
