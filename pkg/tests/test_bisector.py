import math

import numpy as np
import pytest

from hvd.bisector import (
    AffineLine,
    WEIGHT_SIGN_THRESHOLD_SQ,
    klein_bisector,
    power_bisector,
    site_to_power,
)
from hvd.errors import CoincidentPointsError
from hvd.hypgeom import KleinPoint, klein_distance
from helpers import bisector_chord_samples, sample_klein


class TestKleinBisector:
    def test_mirror_symmetry(self):
        line = klein_bisector(KleinPoint(0.5, 0), KleinPoint(-0.5, 0))
        assert line.a == pytest.approx((1.0, 0.0))
        assert line.b == pytest.approx(0.0, abs=1e-15)

    def test_half_radius_pair(self):
        # the crossing sits at the hyperbolic midpoint tanh(arctanh(0.5)/2)
        line = klein_bisector(KleinPoint(0.5, 0), KleinPoint(0, 0))
        x_mid = math.tanh(math.atanh(0.5) / 2.0)
        assert line.a == pytest.approx((1.0, 0.0))
        assert line.evaluate(x_mid, 0.123) == pytest.approx(0.0, abs=1e-15)
        assert x_mid == pytest.approx(2 - math.sqrt(3), abs=1e-15)

    def test_swap_axis(self):
        line = klein_bisector(KleinPoint(0.3, 0), KleinPoint(0, 0.3))
        s = math.sqrt(0.5)
        assert line.a == pytest.approx((s, -s))
        assert line.b == pytest.approx(0.0, abs=1e-15)

    def test_swap_antisymmetry(self):
        rng = np.random.default_rng(31)
        pts = sample_klein(rng, 40, max_norm=0.95)
        for p, q in zip(pts[::2], pts[1::2]):
            l1 = klein_bisector(p, q)
            l2 = klein_bisector(q, p)
            assert l1.close_to(l2, 1e-12)

    def test_equidistance_on_sampled_points(self):
        rng = np.random.default_rng(37)
        pts = sample_klein(rng, 40, max_norm=0.95)
        for p, q in zip(pts[::2], pts[1::2]):
            line = klein_bisector(p, q)
            for x, y in bisector_chord_samples(line):
                c = KleinPoint(x, y)
                assert abs(klein_distance(p, c) - klein_distance(q, c)) < 1e-9

    def test_coincident_error(self):
        with pytest.raises(CoincidentPointsError):
            klein_bisector(KleinPoint(0.1, 0.2), KleinPoint(0.1, 0.2))


class TestSiteToPower:
    def test_origin_maps_to_imaginary_unit_ball(self):
        s = site_to_power(KleinPoint(0, 0), 7)
        assert s.center == (0.0, 0.0)
        assert s.weight == -1.0
        assert s.origin_index == 7

    def test_half_radius_values(self):
        s = site_to_power(KleinPoint(0.5, 0))
        assert s.center[0] == pytest.approx(0.5 / (2 * math.sqrt(0.75)), abs=1e-15)
        assert s.center[1] == 0.0
        expected_w = 0.25 / (4 * 0.75) - 1 / math.sqrt(0.75)
        assert s.weight == pytest.approx(expected_w, abs=1e-15)
        assert s.weight == pytest.approx(-1.0713672050459184, abs=1e-12)

    def test_weight_sign_threshold(self):
        # solve s^2 + 4s - 1 = 0 for s = sqrt(1 - |p|^2): flip at 4*sqrt(5)-8
        t = WEIGHT_SIGN_THRESHOLD_SQ
        assert t == pytest.approx(4 * math.sqrt(5) - 8, abs=1e-15)
        at = site_to_power(KleinPoint(math.sqrt(t), 0)).weight
        assert abs(at) < 1e-10
        below = site_to_power(KleinPoint(math.sqrt(t * (1 - 1e-6)), 0)).weight
        above = site_to_power(KleinPoint(math.sqrt(t * (1 + 1e-6)), 0)).weight
        assert below < 0 < above

    def test_weight_sign_random(self):
        rng = np.random.default_rng(41)
        for p in sample_klein(rng, 200, max_norm=0.999):
            w = site_to_power(p).weight
            if p.norm_sq < WEIGHT_SIGN_THRESHOLD_SQ - 1e-12:
                assert w < 0
            elif p.norm_sq > WEIGHT_SIGN_THRESHOLD_SQ + 1e-12:
                assert w > 0


class TestPowerBisector:
    def test_equal_weights_is_euclidean_bisector(self):
        from hvd.bisector import PowerSite

        line = power_bisector(PowerSite((0.5, 0.0), 0.3), PowerSite((-0.5, 0.0), 0.3))
        assert line.a == pytest.approx((1.0, 0.0))
        assert line.b == pytest.approx(0.0, abs=1e-15)

    def test_weighted_offset(self):
        from hvd.bisector import PowerSite

        line = power_bisector(PowerSite((0.0, 0.0), 0.0), PowerSite((1.0, 0.0), 0.5))
        # 2x - 1 + 0.5 = 0  =>  x = 0.25
        assert line.evaluate(0.25, -3.0) == pytest.approx(0.0, abs=1e-15)

    def test_matches_klein_bisector_example(self):
        p, q = KleinPoint(0.5, 0), KleinPoint(0, 0)
        l_klein = klein_bisector(p, q)
        l_power = power_bisector(site_to_power(p, 0), site_to_power(q, 1))
        assert l_klein.close_to(l_power, 1e-12)

    def test_equivalence_random(self):
        rng = np.random.default_rng(43)
        pts = sample_klein(rng, 200, max_norm=0.99)
        for p, q in zip(pts[::2], pts[1::2]):
            l1 = klein_bisector(p, q)
            l2 = power_bisector(site_to_power(p), site_to_power(q))
            assert l1.close_to(l2, 1e-10)

    def test_coincident_centers_error(self):
        from hvd.bisector import PowerSite

        with pytest.raises(CoincidentPointsError):
            power_bisector(PowerSite((0.1, 0.1), 0.0), PowerSite((0.1, 0.1), 0.5))
