"""Displaced-oscillator basis: Laguerre polynomials and the overlap table.

The model is a two-level system (tunneling ``delta``, static bias
``epsilon``) coupled with strength ``g`` to one bosonic mode; hbar and the
mode frequency are 1, so every quantity here is dimensionless.  Working in
the Fock bases of the shifted ladder operators a + g and a - g, the
tunneling term turns into the dense symmetric matrix

    D[m, n] = (delta/2) (-1)^m (2g)^(n-m) exp(-2g^2) sqrt(m!/n!)
              L_m^(n-m)(4g^2)          for n >= m,  D[n, m] = D[m, n],

which every spectral method in this package consumes.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, ResourceLimitError

#: Largest supported oscillator index; factorial ratios are evaluated via
#: log-gamma differences so tables remain finite all the way up to it.
MAX_INDEX = 512


@dataclass(frozen=True)
class ModelParams:
    """Model parameters (delta, epsilon, g) in units of the mode frequency."""

    delta: float
    epsilon: float
    g: float

    def __post_init__(self):
        for name in ("delta", "epsilon", "g"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.delta < 0:
            raise DomainError("tunneling delta must be non-negative")
        if self.g < 0:
            raise DomainError("coupling g must be non-negative")


@dataclass(frozen=True)
class OverlapTable:
    """Precomputed D matrix for one (delta, g) pair.

    ``entries`` is (size x size), symmetric by construction and read-only.
    """

    size: int
    entries: np.ndarray
    g: float
    delta: float

    @property
    def n_tr(self) -> int:
        return self.size - 1


def laguerre(m: int, k: int, x: float) -> float:
    """Associated Laguerre polynomial L_m^k(x) by the three-term recurrence.

    The recurrence in the degree m is numerically stable for x >= 0,
    unlike the closed-form alternating sum which cancels catastrophically
    once x = 4g^2 grows.
    """
    if not 0 <= m <= MAX_INDEX or not 0 <= k <= MAX_INDEX:
        raise DomainError(f"laguerre indices must lie in [0, {MAX_INDEX}]")
    if not math.isfinite(x):
        raise DomainError("laguerre argument must be finite")
    if m == 0:
        return 1.0
    prev, cur = 1.0, 1.0 + k - x
    for i in range(1, m):
        prev, cur = cur, ((2.0 * i + k + 1.0 - x) * cur - (i + k) * prev) / (i + 1.0)
    return cur


def overlap(m: int, n: int, g: float) -> float:
    """Overlap <m|n> between number states of the two displaced operators.

    Defined for 0 <= m <= n; callers wanting the transposed element use the
    symmetry of the D table instead.  The (2g)^(n-m) sqrt(m!/n!) prefactor
    is accumulated in log space.
    """
    if m < 0 or n < m:
        raise DomainError("overlap requires 0 <= m <= n")
    if n > MAX_INDEX:
        raise ResourceLimitError(f"overlap index {n} exceeds {MAX_INDEX}")
    if not math.isfinite(g) or g < 0:
        raise DomainError("coupling g must be finite and non-negative")
    if g == 0.0:
        return 1.0 if m == n else 0.0
    lag = laguerre(m, n - m, 4.0 * g * g)
    if lag == 0.0:
        return 0.0
    logpref = ((n - m) * math.log(2.0 * g) - 2.0 * g * g
               + 0.5 * (math.lgamma(m + 1) - math.lgamma(n + 1)))
    return math.copysign(math.exp(logpref + math.log(abs(lag))), lag)


def build_overlap_table(params: ModelParams, n_tr: int) -> OverlapTable:
    """Tunneling matrix D up to oscillator index n_tr (inclusive).

    The upper triangle is computed from the n >= m formula and mirrored, so
    D is symmetric bit-for-bit.
    """
    if n_tr < 0:
        raise DomainError("n_tr must be non-negative")
    if n_tr > MAX_INDEX:
        raise ResourceLimitError(f"n_tr={n_tr} exceeds supported maximum {MAX_INDEX}")
    entries = _kernels.fill_table(params.delta, params.g, n_tr + 1)
    entries.flags.writeable = False
    return OverlapTable(size=n_tr + 1, entries=entries, g=params.g, delta=params.delta)
