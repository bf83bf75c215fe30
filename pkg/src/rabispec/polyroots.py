"""Closed-form real roots of monic cubics and quartics.

The trigonometric cubic solution and the resolvent-cubic quartic solution
are implemented with a fixed root labeling: downstream level-selection
rules refer to roots by name (y1..y3, x1..x4), so identity matters, not
just the root multiset.  The labeling is deterministic: identical inputs
give bit-identical outputs.

Each closed-form root gets up to two Newton steps on the original
polynomial, accepted only when the residual decreases; the trigonometric
and radical formulas lose a few digits near degenerate discriminants and
the polish restores them.
"""

import math
from dataclasses import dataclass

from .errors import ComplexRadicalError, DiscriminantError

_Z_FLOOR = 1e-12


@dataclass(frozen=True)
class CubicRoots:
    """Labeled real roots of x^3 + b x^2 + c x + d (y1 <= y2 <= y3)."""

    y1: float
    y2: float
    y3: float
    theta: float
    discriminant_gamma: float

    def as_tuple(self):
        return (self.y1, self.y2, self.y3)


@dataclass(frozen=True)
class QuarticRoots:
    """Labeled real roots of x^4 + b x^3 + c x^2 + d x + e.

    x1, x2 solve the (b + z) quadratic factor (inner minus sign first),
    x3, x4 the (b - z) one; z = sqrt(8y + b^2 - 4c) with y the third root
    of the resolvent cubic.
    """

    x1: float
    x2: float
    x3: float
    x4: float
    resolvent_y: float
    z: float

    def as_tuple(self):
        return (self.x1, self.x2, self.x3, self.x4)


def _horner(x: float, coeffs):
    f = 0.0
    fp = 0.0
    for a in coeffs:
        fp = fp * x + f
        f = f * x + a
    return f, fp


def _polish(root: float, coeffs) -> float:
    """Up to two Newton steps; keep a step only if the residual shrinks."""
    for _ in range(2):
        f, fp = _horner(root, coeffs)
        if fp == 0.0:
            break
        candidate = root - f / fp
        fc, _ = _horner(candidate, coeffs)
        if abs(fc) < abs(f):
            root = candidate
        else:
            break
    return root


def cubic_real_roots(b: float, c: float, d: float) -> CubicRoots:
    """Three distinct real roots via the trigonometric method.

    Requires A = b^2 - 3c > 0 and Gamma = B^2 - 4AC < 0 (three distinct
    real roots); otherwise a DiscriminantError carries the diagnostics.
    """
    a_ = b * b - 3.0 * c
    b_ = b * c - 9.0 * d
    c_ = c * c - 3.0 * b * d
    gamma = b_ * b_ - 4.0 * a_ * c_
    if a_ <= 0.0 or gamma >= 0.0:
        raise DiscriminantError("cubic does not have three distinct real roots",
                                gamma=gamma, a=a_)
    arg = (2.0 * a_ * b - 3.0 * b_) / (2.0 * math.sqrt(a_**3))
    theta = math.acos(max(-1.0, min(1.0, arg))) / 3.0
    sqrt_a = math.sqrt(a_)
    coeffs = (1.0, b, c, d)
    y1 = _polish((-b - 2.0 * sqrt_a * math.cos(theta)) / 3.0, coeffs)
    y2 = _polish((-b - 2.0 * sqrt_a * math.cos(theta - 2.0 * math.pi / 3.0)) / 3.0, coeffs)
    y3 = _polish((-b - 2.0 * sqrt_a * math.cos(theta + 2.0 * math.pi / 3.0)) / 3.0, coeffs)
    return CubicRoots(y1=y1, y2=y2, y3=y3, theta=theta, discriminant_gamma=gamma)


def quartic_roots(b: float, c: float, d: float, e: float) -> QuarticRoots:
    """Four real roots via the resolvent cubic.

    The resolvent y^3 - (c/2) y^2 + (bd/4 - e) y + (e(4c - b^2) - d^2)/8
    is solved by the trigonometric method and its third root y3 feeds the
    two quadratic factors.  Raises ComplexRadicalError when z or an inner
    radical goes complex (out-of-regime input), DiscriminantError when the
    resolvent itself degenerates.
    """
    resolvent = cubic_real_roots(-c / 2.0, b * d / 4.0 - e,
                                 (e * (4.0 * c - b * b) - d * d) / 8.0)
    y = resolvent.y3
    z_sq = 8.0 * y + b * b - 4.0 * c
    if z_sq <= 0.0:
        raise ComplexRadicalError(f"z^2 = {z_sq:.6g} <= 0 in quartic factorization")
    z = math.sqrt(z_sq)
    if z < _Z_FLOOR:
        raise ComplexRadicalError(f"degenerate factorization, |z| = {z:.3g}")
    t = (b * y - d) / z
    coeffs = (1.0, b, c, d, e)
    roots = []
    for sz, q in ((+1.0, y + t), (-1.0, y - t)):
        half_lin = (b + sz * z) / 2.0
        disc = half_lin * half_lin / 4.0 - q
        if disc < 0.0:
            raise ComplexRadicalError(
                f"inner radical argument {disc:.6g} < 0 in quartic factorization")
        r = math.sqrt(disc)
        roots.append(_polish(-half_lin / 2.0 - r, coeffs))
        roots.append(_polish(-half_lin / 2.0 + r, coeffs))
    return QuarticRoots(x1=roots[0], x2=roots[1], x3=roots[2], x4=roots[3],
                        resolvent_y=y, z=z)
