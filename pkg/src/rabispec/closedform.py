"""Closed-form spectral approximations that do not involve root selection.

Variational ground state over the displacement, the diagonal (zero-order)
two-by-two approximation, second-order strong-coupling perturbation in the
tunneling at zero bias, and its finite-bias generalization via Van Vleck
perturbation theory.
"""

import math
from dataclasses import dataclass

from .basis import ModelParams, OverlapTable
from .errors import DomainError, ResonanceError

#: Denominator floor below which a Van Vleck term counts as resonant.
_RESONANCE_FLOOR = 1e-9


@dataclass(frozen=True)
class VariationalResult:
    """Displacement alpha and trial-state energy, tagged by how they were obtained."""

    alpha: float
    energy: float
    branch: str  # numeric | weak_coupling | strong_coupling


@dataclass(frozen=True)
class LevelPair:
    """Two levels of one oscillator manifold, ordered e_minus <= e_plus."""

    e_minus: float
    e_plus: float
    m: int
    method: str


def _trial_energy(alpha: float, delta: float, g: float) -> float:
    return -0.5 * delta * math.exp(-2.0 * alpha * alpha) - 2.0 * g * alpha + alpha * alpha


def _stationarity(alpha: float, delta: float, g: float) -> float:
    # gradient condition: delta * alpha * exp(-2 alpha^2) - g + alpha = 0
    return delta * alpha * math.exp(-2.0 * alpha * alpha) - g + alpha


def _bisect_secant(f, lo, hi):
    """Bisection to near machine precision, then a short secant polish."""
    flo = f(lo)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (flo < 0) == (fmid < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
        if hi - lo <= 1e-16 * max(1.0, abs(lo)):
            break
    a, b = lo, hi
    fa, fb = f(a), f(b)
    for _ in range(3):
        if fb == fa:
            break
        c = b - fb * (b - a) / (fb - fa)
        if not min(lo, hi) <= c <= max(lo, hi):
            break
        a, fa, b, fb = b, fb, c, f(c)
    return b


def variational_ground(params: ModelParams) -> VariationalResult:
    """Best displaced-vacua trial state at zero bias.

    The stationarity condition can have up to three roots at intermediate
    coupling; every bracketed root is solved and the one of lowest trial
    energy wins.  All roots lie in [0, g] because the tunneling term in the
    gradient is non-negative.
    """
    if params.epsilon != 0.0:
        raise DomainError("the variational ansatz is defined for epsilon = 0")
    delta, g = params.delta, params.g
    if g == 0.0:
        return VariationalResult(alpha=0.0, energy=-0.5 * delta, branch="numeric")

    f = lambda a: _stationarity(a, delta, g)
    grid = [g * i / 400.0 for i in range(401)]
    vals = [f(a) for a in grid]
    roots = []
    for i in range(400):
        if vals[i] == 0.0:
            roots.append(grid[i])
        elif (vals[i] < 0) != (vals[i + 1] < 0):
            roots.append(_bisect_secant(f, grid[i], grid[i + 1]))
    if vals[-1] == 0.0:
        roots.append(grid[-1])
    if not roots:
        # f(0) = -g < 0 and f(g) >= 0, so this cannot happen for g > 0
        raise DomainError("no stationary displacement found")
    alpha = min(roots, key=lambda a: _trial_energy(a, delta, g))
    return VariationalResult(alpha=alpha,
                             energy=_trial_energy(alpha, delta, g),
                             branch="numeric")


def weak_coupling_ground(params: ModelParams) -> VariationalResult:
    """Small-g closed form: alpha = g/(1 + delta)."""
    if params.epsilon != 0.0:
        raise DomainError("the variational ansatz is defined for epsilon = 0")
    delta, g = params.delta, params.g
    alpha = g / (1.0 + delta)
    energy = (-0.5 * delta * math.exp(-2.0 * alpha * alpha)
              - g * g * (1.0 + 2.0 * delta) / (1.0 + delta) ** 2)
    return VariationalResult(alpha=alpha, energy=energy, branch="weak_coupling")


def strong_coupling_ground(params: ModelParams) -> VariationalResult:
    """Large-g limit: the tunneling term is negligible, alpha = g, E = -g^2."""
    if params.epsilon != 0.0:
        raise DomainError("the variational ansatz is defined for epsilon = 0")
    return VariationalResult(alpha=params.g, energy=-params.g**2,
                             branch="strong_coupling")


def zoa_levels(params: ModelParams, m: int, d: OverlapTable) -> LevelPair:
    """Zero-order approximation: keep only the diagonal tunneling element.

    E = m - g^2 -/+ (1/2) sqrt(eps^2 + 4 D[m,m]^2) per manifold.
    """
    if not 0 <= m < d.size:
        raise IndexError(f"manifold {m} outside table of size {d.size}")
    base = m - params.g**2
    half = 0.5 * math.hypot(params.epsilon, 2.0 * d.entries[m, m])
    return LevelPair(e_minus=base - half, e_plus=base + half, m=m, method="zoa")


def zoa_eigenstate(params: ModelParams, m: int, branch: str, d: OverlapTable):
    """Unnormalized amplitudes of the two displaced number states |m>.

    Returns ((-1)^m D[m,m], m - g^2 - eps/2 - E) where E is the level of
    the requested branch ('+' is the lower one).
    """
    if branch not in ("+", "-"):
        raise DomainError("branch must be '+' or '-'")
    pair = zoa_levels(params, m, d)
    energy = pair.e_minus if branch == "+" else pair.e_plus
    sign = 1.0 if m % 2 == 0 else -1.0
    return (sign * d.entries[m, m],
            m - params.g**2 - params.epsilon / 2.0 - energy)


def dsc_levels(params: ModelParams, m: int, parity: str, d: OverlapTable,
               sum_cutoff: int) -> float:
    """Second-order perturbation in the tunneling at zero bias.

    E = m - g^2 -/+ (-1)^m D[m,m] + sum_{n != m} D[m,n]^2 / (m - n), the
    minus branch being returned for parity 'even'.
    """
    if params.epsilon != 0.0:
        raise DomainError("dsc_levels is defined for epsilon = 0")
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    if not 0 <= m < d.size or sum_cutoff >= d.size:
        raise IndexError("manifold or cutoff outside table")
    row = d.entries[m]
    shift = 0.0
    for n in range(sum_cutoff + 1):
        if n != m:
            shift += row[n] ** 2 / (m - n)
    sign = -1.0 if parity == "even" else 1.0
    first = sign * (-1.0 if m % 2 else 1.0) * row[m]
    return m - params.g**2 + first + shift


def vvp_levels(params: ModelParams, m: int, l: int, d: OverlapTable,
               sum_cutoff: int) -> LevelPair:
    """Van Vleck perturbation theory for the doublet (m, n = m + l).

    The quasi-degenerate pair of unperturbed levels eps/2 + m - g^2 and
    -eps/2 + n - g^2 is treated exactly while every other state enters
    through second order:

        W_a = sum_{k != n} D[m,k]^2 / (eps + m - k),
        W_b = -sum_{k != m} D[n,k]^2 / (eps + k - n),
        E   = m + l/2 - g^2 + (W_a + W_b)/2
              -/+ (1/2) sqrt((eps - l + W_a - W_b)^2 + 4 D[m,n]^2).

    Each sum excludes the partner state of the doublet it corrects, which
    keeps the formula finite at integer resonance eps = l and makes it
    collapse to the zero-bias perturbation result when eps = 0, l = 0.  A
    near-zero denominator on any included term raises ResonanceError.
    """
    if l < 0:
        raise DomainError("l must be >= 0")
    n = m + l
    if not 0 <= m < d.size or n >= d.size:
        raise IndexError(f"doublet ({m}, {n}) outside table of size {d.size}")
    if sum_cutoff >= d.size:
        raise IndexError("sum_cutoff outside table")
    eps, g = params.epsilon, params.g
    w_a = 0.0
    w_b = 0.0
    for k in range(sum_cutoff + 1):
        if k != n:
            den = eps + m - k
            if abs(den) < _RESONANCE_FLOOR:
                raise ResonanceError(
                    f"singular denominator eps + {m} - {k} = {den:.3g}")
            w_a += d.entries[m, k] ** 2 / den
        if k != m:
            den = eps + k - n
            if abs(den) < _RESONANCE_FLOOR:
                raise ResonanceError(
                    f"singular denominator eps + {k} - {n} = {den:.3g}")
            w_b -= d.entries[n, k] ** 2 / den
    base = m + 0.5 * l - g * g + 0.5 * (w_a + w_b)
    half = 0.5 * math.hypot(eps - l + w_a - w_b, 2.0 * d.entries[m, n])
    return LevelPair(e_minus=base - half, e_plus=base + half, m=m, method="vvp")


def vvp_single(params: ModelParams, k: int, d: OverlapTable,
               sum_cutoff: int) -> float:
    """Second-order energy of an unpaired lower-branch state.

    Used by the level ladder when the doublet offset l >= 1 leaves the
    states k = 0 .. l-1 of the -eps/2 branch without a partner.
    """
    if not 0 <= k < d.size or sum_cutoff >= d.size:
        raise IndexError("state or cutoff outside table")
    eps, g = params.epsilon, params.g
    shift = 0.0
    for j in range(sum_cutoff + 1):
        den = eps + j - k
        if abs(den) < _RESONANCE_FLOOR:
            raise ResonanceError(f"singular denominator eps + {j} - {k} = {den:.3g}")
        shift -= d.entries[k, j] ** 2 / den
    return -0.5 * eps + k - g * g + shift


def vvp_ladder(params: ModelParams, k_levels: int, d: OverlapTable,
               sum_cutoff: int):
    """Lowest k_levels Van Vleck energies, sorted ascending.

    The doublet offset is tied to the bias, l = round(|eps|), which pairs
    each upper-branch state with the lower-branch state it is nearly
    degenerate with.  The spectrum is symmetric under eps -> -eps, so the
    ladder is evaluated at |eps|.
    """
    if k_levels < 1:
        raise DomainError("k_levels must be >= 1")
    p = params if params.epsilon >= 0 else ModelParams(params.delta, -params.epsilon, params.g)
    l = int(round(p.epsilon))
    energies = [vvp_single(p, k, d, sum_cutoff) for k in range(l)]
    m = 0
    while len(energies) < k_levels + 2:
        pair = vvp_levels(p, m, l, d, sum_cutoff)
        energies += [pair.e_minus, pair.e_plus]
        m += 1
    return sorted(energies)[:k_levels]
