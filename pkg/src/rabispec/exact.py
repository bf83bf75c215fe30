"""Numerically exact spectra in the displaced basis.

Expanding the two spin branches in the number states of a + g and a - g
turns the stationary Schroedinger equation into the coupled system

    (m - g^2 - eps/2) c_m - sum_n D[m, n] d_n = E c_m,
    (m - g^2 + eps/2) d_m - sum_n D[m, n] c_n = E d_m,

i.e. a dense symmetric matrix of dimension 2(n_tr + 1) whose eigenvalues
converge rapidly in the truncation n_tr.  At zero bias the system splits
into even/odd parity halves of dimension n_tr + 1.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .basis import MAX_INDEX, ModelParams, OverlapTable, build_overlap_table
from .errors import ConvergenceError, DomainError, ResourceLimitError

#: Truncation ladder used by converged_spectrum; geometric growth keeps the
#: total work within about twice the final solve.
TRUNCATION_SCHEDULE = (8, 16, 32, 64, 128, 256, 512)


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues with the truncation they were computed at."""

    energies: np.ndarray
    n_tr_used: int
    params: ModelParams
    parity_labels: Optional[tuple] = None

    def lowest(self, k: int) -> np.ndarray:
        return self.energies[:k]


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Dense symmetric matrix of the coupled system, basis (c_0..c_N, d_0..d_N)."""

    matrix: np.ndarray
    params: ModelParams
    n_tr: int


def assemble(params: ModelParams, n_tr: int,
             table: Optional[OverlapTable] = None) -> HamiltonianMatrix:
    """Build the full 2(n_tr+1)-dimensional matrix.

    Upper-left block: diag(m - g^2 - eps/2); lower-right: diag(m - g^2 +
    eps/2); both off-diagonal blocks are -D.  Symmetry is exact because D
    is mirrored on construction.
    """
    if n_tr < 0:
        raise DomainError("n_tr must be non-negative")
    if n_tr > MAX_INDEX:
        raise ResourceLimitError(f"n_tr={n_tr} exceeds supported maximum {MAX_INDEX}")
    if table is None or table.n_tr < n_tr:
        table = build_overlap_table(params, n_tr)
    size = n_tr + 1
    d = table.entries[:size, :size]
    m = np.arange(size, dtype=float)
    h = np.zeros((2 * size, 2 * size))
    h[:size, :size] = np.diag(m - params.g**2 - params.epsilon / 2)
    h[size:, size:] = np.diag(m - params.g**2 + params.epsilon / 2)
    h[:size, size:] = -d
    h[size:, :size] = -d
    if not np.array_equal(h, h.T):
        raise AssertionError("assembled matrix is not symmetric")
    return HamiltonianMatrix(matrix=h, params=params, n_tr=n_tr)


def eigen_spectrum(h: HamiltonianMatrix) -> Spectrum:
    """All eigenvalues of the assembled matrix, ascending."""
    try:
        vals = np.linalg.eigvalsh(h.matrix)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed to converge: {exc}") from exc
    vals.flags.writeable = False
    return Spectrum(energies=vals, n_tr_used=h.n_tr, params=h.params)


def eigen_system(h: HamiltonianMatrix):
    """Spectrum plus unit-norm eigenvectors (as columns)."""
    try:
        vals, vecs = np.linalg.eigh(h.matrix)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed to converge: {exc}") from exc
    vals.flags.writeable = False
    return Spectrum(energies=vals, n_tr_used=h.n_tr, params=h.params), vecs


def parity_spectrum(params: ModelParams, n_tr: int, parity: str,
                    table: Optional[OverlapTable] = None) -> Spectrum:
    """Half-size spectrum of one parity sector; only defined at zero bias.

    Setting d_n = +/- c_n reduces the coupled system to
    (m - g^2) c_m -/+ sum_n D[m, n] c_n = E c_m, the minus sign belonging
    to even parity.
    """
    if params.epsilon != 0.0:
        raise DomainError("parity sectors exist only at epsilon = 0")
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    if n_tr > MAX_INDEX:
        raise ResourceLimitError(f"n_tr={n_tr} exceeds supported maximum {MAX_INDEX}")
    if table is None or table.n_tr < n_tr:
        table = build_overlap_table(params, n_tr)
    size = n_tr + 1
    d = table.entries[:size, :size]
    sign = -1.0 if parity == "even" else 1.0
    h = np.diag(np.arange(size, dtype=float) - params.g**2) + sign * d
    try:
        vals = np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed to converge: {exc}") from exc
    vals.flags.writeable = False
    return Spectrum(energies=vals, n_tr_used=n_tr, params=params,
                    parity_labels=(parity,) * size)


def converged_spectrum(params: ModelParams, k_levels: int, tol: float = 1e-10,
                       schedule=TRUNCATION_SCHEDULE) -> Spectrum:
    """Grow n_tr until the lowest k_levels stabilize to within tol.

    Convergence is Cauchy-style between consecutive truncations on the
    sorted level multiset (degenerate levels are never paired by
    eigenvector).  Raises ConvergenceError carrying the last two iterates
    if the schedule is exhausted.
    """
    if k_levels < 1:
        raise DomainError("k_levels must be >= 1")
    if not tol > 0:
        raise DomainError("tol must be positive")
    prev = None
    older = None
    for n_tr in schedule:
        if 2 * (n_tr + 1) < k_levels:
            continue
        spectrum = eigen_spectrum(assemble(params, n_tr))
        cur = spectrum.energies[:k_levels]
        if prev is not None and np.max(np.abs(cur - prev)) < tol:
            return spectrum
        older, prev = prev, cur
    raise ConvergenceError(
        f"lowest {k_levels} levels not stable to {tol:g} within "
        f"n_tr <= {schedule[-1]}",
        previous=older,
        last=prev,
    )
