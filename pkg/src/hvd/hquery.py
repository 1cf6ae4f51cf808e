"""Query primitives over hyperbolic point sets: nearest neighbor, hyperbolic
circumcenters of two and three points, and the smallest enclosing ball via
Welzl's randomized move-to-front recursion (unrolled to loops).
"""

from __future__ import annotations

import math
import random

import numpy as np

from .bisector import AffineLine, klein_bisector
from .errors import EmptyInputError
from .hvoronoi import HyperbolicVoronoiDiagram
from .hypgeom import (
    BOUNDARY_MARGIN,
    HyperbolicBall,
    KleinPoint,
    klein_distance,
)

# Containment slack for the enclosing-ball recursion.
SEB_TOL = 1e-9

# Bisector intersections with a smaller normalized determinant are rejected
# as ill-conditioned.
_DET_TOL = 1e-12


def nearest_neighbor(d: HyperbolicVoronoiDiagram, q: KleinPoint) -> int:
    """Index of the site closest to q in hyperbolic distance; ties go to the
    lowest index."""
    return int(np.argmin(d.cosh_distances(q.x, q.y)))


def circumcenter2(p: KleinPoint, q: KleinPoint) -> KleinPoint:
    """Hyperbolic midpoint: where the bisector crosses the chord pq."""
    line = klein_bisector(p, q)
    dx, dy = q.x - p.x, q.y - p.y
    denom = line.a[0] * dx + line.a[1] * dy
    t = -line.evaluate(p.x, p.y) / denom
    return KleinPoint(p.x + t * dx, p.y + t * dy)


def _intersect_lines(l1: AffineLine, l2: AffineLine):
    det = l1.a[0] * l2.a[1] - l1.a[1] * l2.a[0]
    if abs(det) < _DET_TOL:
        return None
    x = (-l1.b * l2.a[1] + l2.b * l1.a[1]) / det
    y = (-l2.b * l1.a[0] + l1.b * l2.a[0]) / det
    return x, y


def circumcenter3(p: KleinPoint, q: KleinPoint, r: KleinPoint) -> KleinPoint | None:
    """Common intersection of the three pairwise bisectors, when it exists
    inside the disk; None when the triple has no hyperbolic circumcenter
    (intersection outside the disk or the solve is ill-conditioned)."""
    pt = _intersect_lines(klein_bisector(p, q), klein_bisector(q, r))
    if pt is None:
        return None
    x, y = pt
    limit = 1.0 - BOUNDARY_MARGIN
    if x * x + y * y >= limit * limit:
        return None
    return KleinPoint(x, y)


def _pair_ball(p: KleinPoint, q: KleinPoint) -> tuple[KleinPoint, float]:
    m = circumcenter2(p, q)
    return m, max(klein_distance(m, p), klein_distance(m, q))


def _triple_ball(p, q, r) -> tuple[KleinPoint, float]:
    """Smallest ball with p, q, r on or inside its boundary."""
    best = None
    for a, b, c in ((p, q, r), (p, r, q), (q, r, p)):
        center, rad = _pair_ball(a, b)
        if klein_distance(center, c) <= rad + SEB_TOL:
            if best is None or rad < best[1]:
                best = (center, rad)
    if best is not None:
        return best
    center = circumcenter3(p, q, r)
    if center is None:
        # no circumcenter inside the disk: fall back to the widest pair
        return max(
            (_pair_ball(p, q), _pair_ball(p, r), _pair_ball(q, r)),
            key=lambda b: b[1],
        )
    rad = max(
        klein_distance(center, p),
        klein_distance(center, q),
        klein_distance(center, r),
    )
    return center, rad


def _contains(ball, x: KleinPoint) -> bool:
    return klein_distance(ball[0], x) <= ball[1] + SEB_TOL


def _ball_two_boundary(pts, p, q):
    ball = _pair_ball(p, q)
    for r in pts:
        if not _contains(ball, r):
            ball = _triple_ball(p, q, r)
    return ball


def _ball_one_boundary(pts, p):
    ball = (p, 0.0)
    for j, q in enumerate(pts):
        if not _contains(ball, q):
            ball = _ball_two_boundary(pts[:j], p, q)
    return ball


def smallest_enclosing_ball(points, rng_seed: int = 0) -> HyperbolicBall:
    """Minimum-radius hyperbolic ball containing all points.

    Deterministically shuffled by rng_seed; the result is seed-independent
    up to numerical tolerance because the minimal ball is unique.
    """
    pts = list(points)
    if not pts:
        raise EmptyInputError("need at least one point")
    pts = [p if isinstance(p, KleinPoint) else KleinPoint(*p) for p in pts]
    random.Random(rng_seed).shuffle(pts)
    ball = (pts[0], 0.0)
    for i, p in enumerate(pts):
        if not _contains(ball, p):
            ball = _ball_one_boundary(pts[:i], p)
    return HyperbolicBall(ball[0], ball[1])


def ball_boundary_points(ball: HyperbolicBall, n: int = 256):
    """Sample the locus of points at hyperbolic distance radius from the
    center, as (klein, poincare) coordinate lists of length n."""
    from .hypgeom import _klein_to_poincare_xy, _poincare_to_klein_xy

    cx, cy = _klein_to_poincare_xy(ball.center.x, ball.center.y)
    a = complex(cx, cy)
    rho = math.tanh(ball.radius / 2.0)
    klein = []
    poincare = []
    for k in range(n):
        th = 2.0 * math.pi * k / n
        z = rho * complex(math.cos(th), math.sin(th))
        w = (z + a) / (1.0 + a.conjugate() * z)
        poincare.append((w.real, w.imag))
        klein.append(_poincare_to_klein_xy(w.real, w.imag))
    return klein, poincare


def ball_poincare_circle(ball: HyperbolicBall) -> tuple[tuple[float, float], float]:
    """Euclidean center and radius of the ball as drawn in the Poincare disk,
    where hyperbolic circles stay Euclidean circles (with an offset center)."""
    from .hypgeom import _klein_to_poincare_xy

    cx, cy = _klein_to_poincare_xy(ball.center.x, ball.center.y)
    a = complex(cx, cy)
    rho = math.tanh(ball.radius / 2.0)
    t = rho * rho * (a.real * a.real + a.imag * a.imag)
    center = a * (1.0 - rho * rho) / (1.0 - t)
    radius = rho * (1.0 - abs(a) ** 2) / (1.0 - t)
    return (center.real, center.imag), radius
