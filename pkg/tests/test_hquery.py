import math

import numpy as np
import pytest

from hvd.bisector import klein_bisector
from hvd.errors import CoincidentPointsError, EmptyInputError
from hvd.hquery import (
    circumcenter2,
    circumcenter3,
    nearest_neighbor,
    smallest_enclosing_ball,
)
from hvd.hvoronoi import build_hyperbolic_voronoi
from hvd.hypgeom import KleinPoint, klein_distance
from hvd.mobius import recenter_sites
from hvd.powerdiag import locate_cell
from helpers import brute_nearest, sample_disk_points, sample_klein, seb_oracle

X_MID = math.tanh(math.atanh(0.5) / 2.0)


class TestNearestNeighbor:
    def test_two_site_example(self):
        d = build_hyperbolic_voronoi([KleinPoint(0.5, 0), KleinPoint(0, 0)])
        assert nearest_neighbor(d, KleinPoint(0.4, 0)) == 0
        assert klein_distance(d.sites[0], KleinPoint(0.4, 0)) == pytest.approx(
            math.atanh(0.5) - math.atanh(0.4), abs=1e-12
        )

    def test_tie_on_bisector_goes_to_lowest_index(self):
        d = build_hyperbolic_voronoi([KleinPoint(0.5, 0), KleinPoint(0, 0)])
        assert nearest_neighbor(d, KleinPoint(X_MID, 0.0)) == 0

    def test_matches_naive_scan(self):
        rng = np.random.default_rng(149)
        pts = sample_klein(rng, 50, max_norm=0.95)
        d = build_hyperbolic_voronoi(pts)
        xy = sample_disk_points(rng, 1000, max_norm=0.995)
        brute = brute_nearest(pts, xy)
        for row, want in zip(xy, brute):
            assert nearest_neighbor(d, KleinPoint(*row)) == want

    def test_agrees_with_power_locate(self):
        rng = np.random.default_rng(151)
        pts = sample_klein(rng, 30)
        d = build_hyperbolic_voronoi(pts)
        for row in sample_disk_points(rng, 500, max_norm=0.99):
            q = KleinPoint(*row)
            assert nearest_neighbor(d, q) == locate_cell(d.power, (q.x, q.y))


class TestCircumcenter2:
    def test_symmetric(self):
        m = circumcenter2(KleinPoint(0.5, 0), KleinPoint(-0.5, 0))
        assert (m.x, m.y) == (pytest.approx(0.0, abs=1e-15), 0.0)

    def test_half_pair(self):
        m = circumcenter2(KleinPoint(0.5, 0), KleinPoint(0, 0))
        assert m.x == pytest.approx(X_MID, abs=1e-14)
        assert m.y == 0.0

    def test_is_hyperbolic_midpoint(self):
        rng = np.random.default_rng(157)
        pts = sample_klein(rng, 200, max_norm=0.95)
        for p, q in zip(pts[::2], pts[1::2]):
            m = circumcenter2(p, q)
            dp, dq = klein_distance(p, m), klein_distance(q, m)
            assert abs(dp - dq) < 1e-9
            assert dp + dq == pytest.approx(klein_distance(p, q), abs=1e-9)

    def test_coincident(self):
        with pytest.raises(CoincidentPointsError):
            circumcenter2(KleinPoint(0.1, 0), KleinPoint(0.1, 0))


class TestCircumcenter3:
    def test_symmetric_triple(self):
        c = circumcenter3(KleinPoint(0.3, 0), KleinPoint(-0.3, 0),
                          KleinPoint(0, 0.3))
        assert c is not None
        assert math.hypot(c.x, c.y) < 1e-14
        assert klein_distance(c, KleinPoint(0.3, 0)) == pytest.approx(
            math.atanh(0.3), abs=1e-12)

    def test_near_ideal_triangle_against_grid_oracle(self):
        pts = [KleinPoint(0.9, 0), KleinPoint(-0.9, 0), KleinPoint(0, 0.9)]
        c = circumcenter3(*pts)
        # grid argmin of the max distance to the three sites
        best, best_v = None, math.inf
        for x in np.linspace(-0.5, 0.5, 101):
            for y in np.linspace(-0.5, 0.5, 101):
                q = KleinPoint(float(x), float(y))
                v = max(klein_distance(q, p) for p in pts)
                if v < best_v:
                    best, best_v = q, v
        assert c is not None
        assert math.hypot(c.x - best.x, c.y - best.y) < 0.02

    def test_third_bisector_concurrence(self):
        rng = np.random.default_rng(163)
        count = 0
        pts = sample_klein(rng, 300, max_norm=0.9)
        for p, q, r in zip(pts[::3], pts[1::3], pts[2::3]):
            c = circumcenter3(p, q, r)
            if c is None:
                continue
            count += 1
            line = klein_bisector(p, r)
            assert abs(line.evaluate(c.x, c.y)) < 1e-9
        assert count >= 50

    def test_absent_for_flat_triples(self):
        # nearly collinear points push the intersection outside the disk
        c = circumcenter3(KleinPoint(-0.5, 0), KleinPoint(0.0, 1e-9),
                          KleinPoint(0.5, 0))
        assert c is None


class TestSmallestEnclosingBall:
    def test_single_point(self):
        b = smallest_enclosing_ball([KleinPoint(0.3, -0.2)], 0)
        assert b.radius == 0.0
        assert (b.center.x, b.center.y) == (0.3, -0.2)

    def test_symmetric_pair(self):
        b = smallest_enclosing_ball([KleinPoint(0.5, 0), KleinPoint(-0.5, 0)], 0)
        assert math.hypot(b.center.x, b.center.y) < 1e-12
        assert b.radius == pytest.approx(math.atanh(0.5), abs=1e-12)

    def test_interior_third_point_changes_nothing(self):
        b = smallest_enclosing_ball(
            [KleinPoint(0.5, 0), KleinPoint(-0.5, 0), KleinPoint(0, 0.1)], 0
        )
        assert math.hypot(b.center.x, b.center.y) < 1e-12
        assert b.radius == pytest.approx(math.atanh(0.5), abs=1e-12)
        assert math.atanh(0.1) < b.radius  # the third point really is interior

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            smallest_enclosing_ball([], 0)

    def test_matches_exhaustive_oracle(self):
        rng = np.random.default_rng(167)
        for _ in range(40):
            n = int(rng.integers(1, 11))
            pts = sample_klein(rng, n, max_norm=0.9)
            b = smallest_enclosing_ball(pts, int(rng.integers(0, 10 ** 6)))
            _, r = seb_oracle(pts)
            assert abs(b.radius - r) < 1e-8
            assert all(klein_distance(b.center, p) <= b.radius + 1e-9
                       for p in pts)

    def test_seed_independent(self):
        rng = np.random.default_rng(173)
        pts = sample_klein(rng, 25, max_norm=0.9)
        b0 = smallest_enclosing_ball(pts, 1)
        b1 = smallest_enclosing_ball(pts, 999)
        assert math.hypot(b0.center.x - b1.center.x,
                          b0.center.y - b1.center.y) < 1e-9
        assert abs(b0.radius - b1.radius) < 1e-9

    def test_basis_on_boundary(self):
        rng = np.random.default_rng(179)
        for _ in range(10):
            pts = sample_klein(rng, 12, max_norm=0.9)
            b = smallest_enclosing_ball(pts, 3)
            tight = sum(
                1 for p in pts
                if abs(klein_distance(b.center, p) - b.radius) < 1e-8
            )
            assert tight >= 2

    def test_isometry_covariance(self):
        rng = np.random.default_rng(181)
        pts = sample_klein(rng, 15, max_norm=0.85)
        focus = KleinPoint(0.35, -0.2)
        b0 = smallest_enclosing_ball(pts, 0)
        moved = recenter_sites(pts, focus)
        b1 = smallest_enclosing_ball(moved, 0)
        mapped_center = recenter_sites([b0.center], focus)[0]
        assert abs(b0.radius - b1.radius) < 1e-8
        assert math.hypot(mapped_center.x - b1.center.x,
                          mapped_center.y - b1.center.y) < 1e-8
