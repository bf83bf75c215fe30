"""First- and second-order displaced-basis approximations with root selection.

The first-order scheme keeps the coefficients of two neighboring
oscillator manifolds.  At zero bias parity splits it into 2x2 blocks with
closed-form eigenvalues; at finite bias the 4x4 block yields a quartic
whose labeled roots carry the level assignment (ground from x1 at m = 0,
the excited pair of manifold m from x2 and x3).  The second-order scheme
(zero bias only) keeps three manifolds per parity and leads to a cubic,
with the pair taken from its two lowest roots y1, y2.

Level indexing follows the weak-coupling parity ladder: the ground state
is even, then pairs of odd, even, odd, ... excited states; the pair of
manifold m has odd parity for even m.  The indexing is kept fixed even
where sectors cross at strong coupling.
"""

import math
from dataclasses import dataclass
from typing import Optional

from .basis import ModelParams, OverlapTable
from .errors import DomainError
from .polyroots import cubic_real_roots, quartic_roots


@dataclass(frozen=True)
class BlockCoefficients:
    """Overlap-table entries feeding one manifold block, in the block's own
    sign convention (negated for the biased quartic)."""

    u: float
    v: float
    w: float
    x: Optional[float] = None
    y: Optional[float] = None
    z: Optional[float] = None


@dataclass(frozen=True)
class GrwaLevels:
    """A level ladder: ground plus (level_index, energy, parity) triples."""

    ground: float
    excited: list
    params: ModelParams
    method: str  # foa_zero_bias | grwa_biased | brwa_zero_bias
    flag: str = "ok"  # ok | out_of_regime

    def energies(self):
        """Ladder energies in level-index order, ground first."""
        return [self.ground] + [e for _, e, _ in self.excited]


def _pair_parity(m: int) -> str:
    return "odd" if m % 2 == 0 else "even"


def foa_excited(params: ModelParams, m: int, d: OverlapTable):
    """Excited pair of manifold m at zero bias, ascending.

    E = m - g^2 + 1/2 + ((-1)^m / 2)(D[m+1,m+1] + D[m,m])
        +/- (1/2) sqrt([1 - (-1)^m (D[m,m] - D[m+1,m+1])]^2 + 4 D[m,m+1]^2)

    These are levels 2m+1 and 2m+2, of odd parity for even m.
    """
    if params.epsilon != 0.0:
        raise DomainError("foa_excited is defined for epsilon = 0")
    if m < 0 or m + 1 >= d.size:
        raise IndexError(f"manifold {m} needs table size >= {m + 2}")
    g = params.g
    e = d.entries
    s = 1.0 if m % 2 == 0 else -1.0
    mid = m - g * g + 0.5 + 0.5 * s * (e[m + 1, m + 1] + e[m, m])
    rad = 0.5 * math.hypot(1.0 - s * (e[m, m] - e[m + 1, m + 1]),
                           2.0 * e[m, m + 1])
    return mid - rad, mid + rad


def foa_ground(params: ModelParams, d: OverlapTable) -> float:
    """Ground level at zero bias: the lower even-parity root of the m = 0 block."""
    if params.epsilon != 0.0:
        raise DomainError("foa_ground is defined for epsilon = 0")
    if d.size < 2:
        raise IndexError("table size >= 2 required")
    g = params.g
    e = d.entries
    return (0.5 - g * g - 0.5 * (e[1, 1] + e[0, 0])
            - 0.5 * math.hypot(1.0 + e[0, 0] - e[1, 1], 2.0 * e[0, 1]))


def foa_levels(params: ModelParams, m_max: int, d: OverlapTable) -> GrwaLevels:
    """Zero-bias first-order ladder: ground plus pairs from m = 0 .. m_max."""
    excited = []
    for m in range(m_max + 1):
        lo, hi = foa_excited(params, m, d)
        excited += [(2 * m + 1, lo, _pair_parity(m)), (2 * m + 2, hi, _pair_parity(m))]
    ground = foa_ground(params, d)
    flag = "ok" if ground <= excited[0][1] else "out_of_regime"
    return GrwaLevels(ground=ground, excited=excited, params=params,
                      method="foa_zero_bias", flag=flag)


def grwa_biased_manifold(params: ModelParams, m: int, d: OverlapTable):
    """Quartic block of manifold m at finite bias.

    With u = -D[m,m], v = -D[m,m+1], w = -D[m+1,m+1] the block determinant
    is x^4 + b x^3 + c x^2 + d x + e, where

        b = -2 - 2 eps
        c = 1 + 3 eps + eps^2 - (2v^2 + u^2 + w^2)
        d = (2v^2 + u^2 + w^2 - eps - 1) eps + 2(u^2 + v^2)
        e = (uw - v^2)^2 - u^2 (1 + eps) - v^2 eps,

    and energies are E_i = x_i + m - g^2 - eps/2.  Returns the labeled
    roots and the four energies in label order.
    """
    if m < 0 or m + 1 >= d.size:
        raise IndexError(f"manifold {m} needs table size >= {m + 2}")
    eps, g = params.epsilon, params.g
    coeff = BlockCoefficients(u=-d.entries[m, m], v=-d.entries[m, m + 1],
                              w=-d.entries[m + 1, m + 1])
    u, v, w = coeff.u, coeff.v, coeff.w
    sq = 2.0 * v * v + u * u + w * w
    b = -2.0 - 2.0 * eps
    c = 1.0 + 3.0 * eps + eps * eps - sq
    dd = (sq - eps - 1.0) * eps + 2.0 * (u * u + v * v)
    e = (u * w - v * v) ** 2 - u * u * (1.0 + eps) - v * v * eps
    roots = quartic_roots(b, c, dd, e)
    shift = m - g * g - eps / 2.0
    energies = tuple(x + shift for x in roots.as_tuple())
    return roots, energies


def grwa_biased_levels(params: ModelParams, m_max: int, d: OverlapTable) -> GrwaLevels:
    """Finite-bias first-order ladder.

    Ground from root x1 of the m = 0 quartic; the excited pair of manifold
    m from roots x2 and x3, sorted within the pair.  The spectrum is even
    in the bias, so the blocks are evaluated at |eps|.  Parity is not a
    good quantum number here, so labels are 'none'.  If the selected roots
    produce ground > first excited the ladder is flagged out_of_regime
    rather than reordered.
    """
    p = params if params.epsilon >= 0 else ModelParams(params.delta,
                                                       -params.epsilon, params.g)
    _, energies0 = grwa_biased_manifold(p, 0, d)
    ground = energies0[0]
    excited = []
    for m in range(m_max + 1):
        _, energies = grwa_biased_manifold(p, m, d)
        lo, hi = sorted(energies[1:3])
        excited += [(2 * m + 1, lo, "none"), (2 * m + 2, hi, "none")]
    flag = "ok" if ground <= excited[0][1] else "out_of_regime"
    return GrwaLevels(ground=ground, excited=excited, params=params,
                      method="grwa_biased", flag=flag)


def brwa_manifold(params: ModelParams, m: int, parity: str, d: OverlapTable):
    """Cubic block of manifold m at zero bias for one parity sector.

    With u, v, w the diagonal entries D[m,m], D[m+1,m+1], D[m+2,m+2] and
    x, y, z the off-diagonal ones, the even-parity block determinant gives
    X^3 + b X^2 + c X + d with

        b = (u + v + w) - 3
        c = -(x^2 + y^2 + z^2) + u(v - 1) + (u + v - 1)(w - 2)
        d = (2u - uw + y^2)(1 - v) - z^2 u + x^2 (2 - w) + 2xyz,

    and the odd-parity one

        b = -(u + v + w) - 3
        c = -(x^2 + y^2 + z^2) + u(1 + v) + (u + v + 1)(2 + w)
        d = (y^2 - 2u - uw)(1 + v) + z^2 u + x^2 (2 + w) - 2xyz.

    Energies are E = X + m - g^2.  Returns the labeled roots (ascending by
    construction) and the three energies.
    """
    if params.epsilon != 0.0:
        raise DomainError("brwa_manifold is defined for epsilon = 0")
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    if m < 0 or m + 2 >= d.size:
        raise IndexError(f"manifold {m} needs table size >= {m + 3}")
    e = d.entries
    coeff = BlockCoefficients(u=e[m, m], v=e[m + 1, m + 1], w=e[m + 2, m + 2],
                              x=e[m, m + 1], y=e[m, m + 2], z=e[m + 1, m + 2])
    u, v, w = coeff.u, coeff.v, coeff.w
    x, y, z = coeff.x, coeff.y, coeff.z
    off = x * x + y * y + z * z
    if parity == "even":
        b = (u + v + w) - 3.0
        c = -off + u * (v - 1.0) + (u + v - 1.0) * (w - 2.0)
        dd = ((2.0 * u - u * w + y * y) * (1.0 - v) - z * z * u
              + x * x * (2.0 - w) + 2.0 * x * y * z)
    else:
        b = -(u + v + w) - 3.0
        c = -off + u * (1.0 + v) + (u + v + 1.0) * (2.0 + w)
        dd = ((y * y - 2.0 * u - u * w) * (1.0 + v) + z * z * u
              + x * x * (2.0 + w) - 2.0 * x * y * z)
    roots = cubic_real_roots(b, c, dd)
    shift = m - params.g**2
    energies = tuple(r + shift for r in roots.as_tuple())
    return roots, energies


def brwa_levels(params: ModelParams, m_max: int, d: OverlapTable) -> GrwaLevels:
    """Zero-bias second-order ladder.

    Ground from root y1 of the m = 0 even-parity cubic; the excited pair
    of manifold m from roots y1, y2 of the cubic with the parity of the
    first-order ladder (odd for even m).
    """
    _, even0 = brwa_manifold(params, 0, "even", d)
    ground = even0[0]
    excited = []
    for m in range(m_max + 1):
        parity = _pair_parity(m)
        _, energies = brwa_manifold(params, m, parity, d)
        lo, hi = sorted(energies[:2])
        excited += [(2 * m + 1, lo, parity), (2 * m + 2, hi, parity)]
    flag = "ok" if ground <= excited[0][1] else "out_of_regime"
    return GrwaLevels(ground=ground, excited=excited, params=params,
                      method="brwa_zero_bias", flag=flag)
