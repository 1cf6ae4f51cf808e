"""Point types for the Klein disk, Poincare disk and upper half-plane models,
hyperbolic distances, and the exact conversions between the models.

All types are immutable values and all operations are pure functions, so
everything here is safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Points with Euclidean norm >= 1 - BOUNDARY_MARGIN are rejected at
# construction; double precision cannot do useful hyperbolic geometry closer
# to the ideal boundary than this.
BOUNDARY_MARGIN = 1e-9

# acosh arguments that rounding pushed slightly below 1 are clamped back;
# anything below 1 - ACOSH_SLACK is a genuine domain violation.
ACOSH_SLACK = 1e-12

# Below this squared norm the Klein->Poincare radial factor switches to a
# series to avoid the 0/0 in (1 - sqrt(1 - t)) / t.
_SERIES_NORM_SQ = 1e-8


def _check_disk(x: float, y: float, model: str) -> None:
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"{model} coordinates must be finite, got ({x}, {y})")
    limit = 1.0 - BOUNDARY_MARGIN
    if x * x + y * y >= limit * limit:
        raise DomainError(
            f"{model} point ({x}, {y}) lies on or too close to the unit circle"
        )


@dataclass(frozen=True)
class KleinPoint:
    """A point of the hyperbolic plane in Klein (projective) disk coordinates."""

    x: float
    y: float

    def __post_init__(self):
        _check_disk(self.x, self.y, "Klein")

    @property
    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y


@dataclass(frozen=True)
class PoincarePoint:
    """A point of the hyperbolic plane in Poincare (conformal) disk coordinates."""

    x: float
    y: float

    def __post_init__(self):
        _check_disk(self.x, self.y, "Poincare")

    @property
    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point of the upper half-plane model, as the complex number re + i*im."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)) or self.im <= 0.0:
            raise DomainError(
                f"half-plane point ({self.re}, {self.im}) must have im > 0"
            )


@dataclass(frozen=True)
class HyperbolicBall:
    """A hyperbolic ball given by its center and hyperbolic radius."""

    center: KleinPoint
    radius: float

    def __post_init__(self):
        if not math.isfinite(self.radius) or self.radius < 0.0:
            raise DomainError(f"ball radius must be finite and >= 0, got {self.radius}")


def _acosh(arg: float) -> float:
    if arg < 1.0:
        if arg < 1.0 - ACOSH_SLACK:
            raise DomainError(f"acosh argument {arg} below 1 beyond rounding slack")
        return 0.0
    return math.acosh(arg)


def klein_distance(p: KleinPoint, q: KleinPoint) -> float:
    """Hyperbolic distance between two Klein disk points."""
    num = 1.0 - (p.x * q.x + p.y * q.y)
    den = math.sqrt((1.0 - p.norm_sq) * (1.0 - q.norm_sq))
    return _acosh(num / den)


def poincare_distance(p: PoincarePoint, q: PoincarePoint) -> float:
    """Hyperbolic distance between two Poincare disk points."""
    dx = p.x - q.x
    dy = p.y - q.y
    delta = 2.0 * (dx * dx + dy * dy) / ((1.0 - p.norm_sq) * (1.0 - q.norm_sq))
    return _acosh(1.0 + delta)


def _klein_to_poincare_xy(x: float, y: float) -> tuple[float, float]:
    """Raw radial scaling, valid up to and including the unit circle."""
    t = x * x + y * y
    if t < _SERIES_NORM_SQ:
        f = 0.5 * (1.0 + 0.25 * t)
    else:
        f = (1.0 - math.sqrt(max(0.0, 1.0 - t))) / t
    return f * x, f * y


def _poincare_to_klein_xy(x: float, y: float) -> tuple[float, float]:
    f = 2.0 / (1.0 + x * x + y * y)
    return f * x, f * y


def klein_to_poincare(k: KleinPoint) -> PoincarePoint:
    """Convert Klein disk coordinates to Poincare disk coordinates."""
    x, y = _klein_to_poincare_xy(k.x, k.y)
    return PoincarePoint(x, y)


def poincare_to_klein(p: PoincarePoint) -> KleinPoint:
    """Convert Poincare disk coordinates to Klein disk coordinates."""
    x, y = _poincare_to_klein_xy(p.x, p.y)
    return KleinPoint(x, y)


def _disk_to_halfplane_c(z: complex) -> complex:
    """Raw disk-to-half-plane map i(z+1)/(1-z); z must not equal 1."""
    return 1j * (z + 1.0) / (1.0 - z)


def _halfplane_to_disk_c(z: complex) -> complex:
    """Raw half-plane-to-disk map (z-i)/(z+i)."""
    return (z - 1j) / (z + 1j)


def disk_to_halfplane(z: PoincarePoint) -> HalfPlanePoint:
    """Map a Poincare disk point to the upper half-plane model."""
    w = _disk_to_halfplane_c(complex(z.x, z.y))
    return HalfPlanePoint(w.real, w.imag)


def halfplane_to_disk(z: HalfPlanePoint) -> PoincarePoint:
    """Map an upper half-plane point to the Poincare disk model."""
    w = _halfplane_to_disk_c(complex(z.re, z.im))
    return PoincarePoint(w.real, w.imag)
