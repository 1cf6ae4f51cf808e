"""Orientation-preserving automorphisms of the unit disk, used to recenter
the viewpoint of the disk models.

A transform is stored as (a, theta) meaning z -> e^{i theta} (z - a) /
(1 - conj(a) z); this parameterization covers the whole group and keeps
|a| < 1 as a checkable invariant.  Compositions and inverses go through the
equivalent 2x2 matrix [[alpha, beta], [conj(beta), conj(alpha)]] with
alpha = e^{i theta/2}, beta = -e^{i theta/2} a, and are renormalized back.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError
from .hypgeom import (
    KleinPoint,
    PoincarePoint,
    _klein_to_poincare_xy,
    _poincare_to_klein_xy,
)


@dataclass(frozen=True)
class MobiusTransform:
    """Disk automorphism z -> e^{i theta} (z - a) / (1 - conj(a) z)."""

    a: complex
    theta: float

    def __post_init__(self):
        if abs(self.a) >= 1.0 or not math.isfinite(self.theta):
            raise DomainError(f"invalid disk automorphism parameters {self}")


def identity() -> MobiusTransform:
    return MobiusTransform(0j, 0.0)


def translate_to_origin(a: PoincarePoint) -> MobiusTransform:
    """The translation sending a to the disk center (no rotation)."""
    return MobiusTransform(complex(a.x, a.y), 0.0)


def _apply_c(t: MobiusTransform, z: complex) -> complex:
    return cmath.exp(1j * t.theta) * (z - t.a) / (1.0 - t.a.conjugate() * z)


def apply(t: MobiusTransform, p: PoincarePoint) -> PoincarePoint:
    """Apply the transform to a Poincare disk point."""
    w = _apply_c(t, complex(p.x, p.y))
    return PoincarePoint(w.real, w.imag)


def _matrix(t: MobiusTransform) -> tuple[complex, complex]:
    alpha = cmath.exp(0.5j * t.theta)
    return alpha, -alpha * t.a


def _from_matrix(alpha: complex, beta: complex) -> MobiusTransform:
    a = -beta / alpha
    theta = 2.0 * cmath.phase(alpha)
    theta = math.remainder(theta, 2.0 * math.pi)
    return MobiusTransform(a, theta)


def compose(t1: MobiusTransform, t2: MobiusTransform) -> MobiusTransform:
    """The transform applying t2 first, then t1."""
    a1, b1 = _matrix(t1)
    a2, b2 = _matrix(t2)
    alpha = a1 * a2 + b1 * b2.conjugate()
    beta = a1 * b2 + b1 * a2.conjugate()
    return _from_matrix(alpha, beta)


def inverse(t: MobiusTransform) -> MobiusTransform:
    alpha, beta = _matrix(t)
    return _from_matrix(alpha.conjugate(), -beta)


def recenter_sites(points, focus: KleinPoint) -> list[KleinPoint]:
    """Move the focus to the origin by a disk isometry: convert everything to
    the Poincare model, translate, and convert back.  All pairwise hyperbolic
    distances are preserved."""
    fa = complex(*_klein_to_poincare_xy(focus.x, focus.y))
    t = MobiusTransform(fa, 0.0)
    out = []
    for p in points:
        z = complex(*_klein_to_poincare_xy(p.x, p.y))
        w = _apply_c(t, z)
        out.append(KleinPoint(*_poincare_to_klein_xy(w.real, w.imag)))
    return out
