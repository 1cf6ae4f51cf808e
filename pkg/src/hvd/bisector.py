"""Klein bisectors as affine lines, the mapping from Klein sites to weighted
Euclidean sites, and the radical-line bisector of two weighted sites.

The two bisector constructions produce the same canonical line for a pair of
Klein points and their weighted images, which is what makes the whole diagram
pipeline work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CoincidentPointsError, DomainError
from .hypgeom import KleinPoint

# Two sites closer than this are treated as coincident (no bisector).
COINCIDENCE_TOL = 1e-12

# |a_x| below this counts as zero when fixing the canonical sign of a line.
_SIGN_TOL = 1e-12

# Squared Klein norm at which the mapped weight changes sign: the positive
# root of s^2 + 4s - 1 = 0 with s = sqrt(1 - |p|^2) gives |p|^2 = 4*sqrt(5) - 8.
WEIGHT_SIGN_THRESHOLD_SQ = 4.0 * math.sqrt(5.0) - 8.0


@dataclass(frozen=True)
class AffineLine:
    """Oriented line {c : <a, c> + b = 0}.

    Stored in canonical form: ||a|| = 1 and the first nonzero component of a
    positive, so two lines are equal iff their (a, b) triples agree within
    tolerance.
    """

    a: tuple[float, float]
    b: float

    @staticmethod
    def canonical(ax: float, ay: float, b: float) -> "AffineLine":
        n = math.hypot(ax, ay)
        if n == 0.0 or not math.isfinite(n):
            raise DomainError("degenerate line: zero or non-finite normal")
        ax, ay, b = ax / n, ay / n, b / n
        if ax < -_SIGN_TOL or (abs(ax) <= _SIGN_TOL and ay < 0.0):
            ax, ay, b = -ax, -ay, -b
        return AffineLine((ax, ay), b)

    def evaluate(self, x: float, y: float) -> float:
        return self.a[0] * x + self.a[1] * y + self.b

    def close_to(self, other: "AffineLine", tol: float) -> bool:
        return (
            abs(self.a[0] - other.a[0]) <= tol
            and abs(self.a[1] - other.a[1]) <= tol
            and abs(self.b - other.b) <= tol
        )


@dataclass(frozen=True)
class PowerSite:
    """A Euclidean center with an additive power weight.

    The weight plays the role of a squared radius and may be negative
    (an imaginary ball). origin_index tags the site it was mapped from.
    """

    center: tuple[float, float]
    weight: float
    origin_index: int = 0

    def __post_init__(self):
        cx, cy = self.center
        if not (math.isfinite(cx) and math.isfinite(cy) and math.isfinite(self.weight)):
            raise DomainError(f"power site must be finite: {self}")

    def power(self, x: float, y: float) -> float:
        dx = x - self.center[0]
        dy = y - self.center[1]
        return dx * dx + dy * dy - self.weight


def klein_bisector(p: KleinPoint, q: KleinPoint) -> AffineLine:
    """Bisector of two Klein points, which is a straight line in the disk."""
    if math.hypot(p.x - q.x, p.y - q.y) < COINCIDENCE_TOL:
        raise CoincidentPointsError("bisector undefined for coincident sites")
    sp = math.sqrt(1.0 - p.norm_sq)
    sq = math.sqrt(1.0 - q.norm_sq)
    ax = sp * q.x - sq * p.x
    ay = sp * q.y - sq * p.y
    b = sq - sp
    return AffineLine.canonical(ax, ay, b)


def site_to_power(p: KleinPoint, index: int = 0) -> PowerSite:
    """Map a Klein site to the weighted Euclidean site with the same bisectors."""
    s = math.sqrt(1.0 - p.norm_sq)
    cx = p.x / (2.0 * s)
    cy = p.y / (2.0 * s)
    w = p.norm_sq / (4.0 * (1.0 - p.norm_sq)) - 1.0 / s
    return PowerSite((cx, cy), w, index)


def power_bisector(s1: PowerSite, s2: PowerSite) -> AffineLine:
    """Radical line of two weighted sites: the locus of equal power distance."""
    x1, y1 = s1.center
    x2, y2 = s2.center
    if math.hypot(x2 - x1, y2 - y1) < COINCIDENCE_TOL:
        raise CoincidentPointsError("radical line undefined for coincident centers")
    ax = 2.0 * (x2 - x1)
    ay = 2.0 * (y2 - y1)
    b = (x1 * x1 + y1 * y1) - (x2 * x2 + y2 * y2) + s2.weight - s1.weight
    return AffineLine.canonical(ax, ay, b)
