import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homkernel import geometry as G

ALL_RADIAL = [
    G.punctured_plane(),
    G.radial_disk(R=2.0, C=0.3),
    G.poincare_disk(C=-1.0),
    G.poincare_disk(C=0.0),
    G.bergman_disk(alpha=0.5, C=1.0),
    G.lobachevsky(C=G.LOBACHEVSKY_MIN_C + 0.1),
]


def safe_radius(d, rng):
    R = d.chart_radius
    if math.isinf(R):
        return 10.0 ** rng.uniform(-1, 1)
    return rng.uniform(0.05, 0.9) * R


class TestAdmissibility:
    def test_poincare_bound(self):
        with pytest.raises(G.AdmissibilityError):
            G.poincare_disk(C=-1.5)

    def test_bergman_bounds(self):
        with pytest.raises(G.AdmissibilityError):
            G.bergman_disk(alpha=0.5, C=0.5)
        with pytest.raises(G.AdmissibilityError):
            G.bergman_disk(alpha=-1.0, C=1.0)

    def test_lobachevsky_bound(self):
        with pytest.raises(G.AdmissibilityError):
            G.lobachevsky(C=G.LOBACHEVSKY_MIN_C - 0.01)
        G.lobachevsky(C=G.LOBACHEVSKY_MIN_C)  # the limiting offset is admissible

    def test_radial_disk_bounds(self):
        with pytest.raises(G.AdmissibilityError):
            G.radial_disk(R=1.0, C=-0.1)


class TestAction:
    def test_plane_substitution(self):
        p = G.act(G.punctured_plane(), G.CylElement(math.log(3), math.pi), G.Point(2.0, math.pi / 2))
        assert p.c1 == pytest.approx(6.0, rel=1e-12)
        assert p.c2 == pytest.approx(3 * math.pi / 2, rel=1e-12)

    def test_poincare_closed_form(self):
        # r exp(a) / sqrt(1 + (exp(2a)-1) r^2) at a = log 2, r = 1/sqrt(2)
        p = G.act(G.poincare_disk(C=-1.0), G.CylElement(math.log(2), 0.0), G.Point(1 / math.sqrt(2), 0.0))
        assert p.c1 == pytest.approx(2 / math.sqrt(5), rel=1e-12)

    def test_identity_everywhere(self):
        rng = np.random.default_rng(0)
        for d in ALL_RADIAL + [G.cylinder()]:
            e = G.identity_element(d)
            if d.tag is G.Domain.CYLINDER:
                x = G.Point(rng.uniform(-2, 2), rng.uniform(0, 2 * math.pi))
            else:
                x = G.Point(safe_radius(d, rng), rng.uniform(0, 2 * math.pi))
            y = G.act(d, e, x)
            assert y.c1 == pytest.approx(x.c1, rel=1e-14)
            assert G.circular_distance(y.c2, x.c2) < 1e-14
        m = G.identity_element(G.gl2_plane())
        y = G.act(G.gl2_plane(), m, G.Point(0.3, -0.7))
        assert (y.c1, y.c2) == (0.3, -0.7)

    def test_lobachevsky_roundtrip(self):
        d = G.lobachevsky(C=G.LOBACHEVSKY_MIN_C + 0.1)
        rng = np.random.default_rng(1)
        for _ in range(50):
            r = rng.uniform(0.5, 2.5)
            a = rng.uniform(-0.8, 0.8)
            try:
                mid = G.act(d, G.CylElement(a, 0.0), G.Point(r, 0.0))
                back = G.act(d, G.CylElement(-a, 0.0), mid)
            except G.DilationRangeError:
                continue
            assert back.c1 == pytest.approx(r, rel=1e-8)

    def test_group_law(self):
        rng = np.random.default_rng(7)
        for d in ALL_RADIAL + [G.cylinder()]:
            tol = 1e-8 if d.tag is G.Domain.LOBACHEVSKY else 1e-10
            checked = 0
            while checked < 1000:
                g1 = G.CylElement(rng.uniform(-1, 1), rng.uniform(0, 2 * math.pi))
                g2 = G.CylElement(rng.uniform(-1, 1), rng.uniform(0, 2 * math.pi))
                if d.tag is G.Domain.CYLINDER:
                    x = G.Point(rng.uniform(-2, 2), rng.uniform(0, 2 * math.pi))
                else:
                    x = G.Point(safe_radius(d, rng), rng.uniform(0, 2 * math.pi))
                try:
                    lhs = G.act(d, g1, G.act(d, g2, x))
                    rhs = G.act(d, g1.compose(g2), x)
                except G.DilationRangeError:
                    continue
                checked += 1
                assert abs(lhs.c1 - rhs.c1) <= tol * max(1.0, abs(rhs.c1))
                assert G.circular_distance(lhs.c2, rhs.c2) <= tol

    def test_gl2_matrix_action(self):
        d = G.gl2_plane()
        m = G.MatElement([[1.0, 2.0], [0.5, 3.0]])
        p = G.act(d, m, G.Point(1.0, 1.0))
        assert (p.c1, p.c2) == (3.0, 3.5)
        with pytest.raises(ValueError):
            G.MatElement([[1.0, 2.0], [2.0, 4.0]])

    def test_range_error_not_clamped(self):
        d = G.bergman_disk(alpha=0.5, C=1.0)
        with pytest.raises(G.DilationRangeError):
            G.act(d, G.CylElement(1.0, 0.0), G.Point(0.9, 0.0))


class TestCharacter:
    def test_examples(self):
        assert G.character(G.punctured_plane(), G.CylElement(math.log(2), 1.3)) == pytest.approx(4.0, rel=1e-14)
        assert G.character(G.cylinder(), G.CylElement(0.0, 1.0)) == 1.0
        assert G.character(G.gl2_plane(), G.MatElement([[2, 0], [0, 3]])) == pytest.approx(6.0, rel=1e-14)

    @given(st.floats(-3, 3), st.floats(-3, 3))
    @settings(max_examples=200, deadline=None)
    def test_multiplicative(self, a1, a2):
        d = G.cylinder()
        g1, g2 = G.CylElement(a1, 0.3), G.CylElement(a2, 1.1)
        lhs = G.character(d, g1.compose(g2))
        rhs = G.character(d, g1) * G.character(d, g2)
        assert lhs == pytest.approx(rhs, rel=1e-12)


class TestProfiles:
    def test_bergman_alpha0_identity(self):
        d = G.bergman_disk(alpha=0.0, C=1.0)
        for t in (0.1, 0.5, 0.9):
            assert G.radial_cumulative(d, t) == pytest.approx(t, rel=1e-14)
            assert G.radial_cumulative_inv(d, t) == pytest.approx(t, rel=1e-14)

    def test_poincare_value(self):
        assert G.radial_cumulative(G.poincare_disk(C=-1.0), 0.5) == pytest.approx(1.0, rel=1e-14)

    def test_lobachevsky_finite_difference(self):
        # independent oracle: central difference of the cumulative profile
        d = G.lobachevsky(C=G.LOBACHEVSKY_MIN_C + 0.1)
        h = 1e-6
        for t in (0.3, 1.0, 2.0, 4.0):
            fd = (G.radial_cumulative(d, t + h) - G.radial_cumulative(d, t - h)) / (2 * h)
            assert fd == pytest.approx(float(G.radial_weight(d, t)), rel=1e-6)

    def test_roundtrip_all_domains(self):
        rng = np.random.default_rng(3)
        for d in ALL_RADIAL:
            for _ in range(200):
                r = safe_radius(d, rng)
                s = float(G.radial_cumulative(d, r * r))
                t = G.radial_cumulative_inv(d, s)
                s2 = float(G.radial_cumulative(d, t))
                assert abs(s2 - s) <= 1e-12 * max(1.0, abs(s))

    @given(st.floats(0.01, 0.95), st.floats(0.01, 0.95))
    @settings(max_examples=100, deadline=None)
    def test_monotone(self, t1, t2):
        if t1 == t2:
            return
        lo, hi = sorted((t1, t2))
        for d in (G.poincare_disk(-1.0), G.bergman_disk(0.5, 1.0), G.lobachevsky()):
            assert G.radial_cumulative(d, lo) < G.radial_cumulative(d, hi)

    def test_inverse_range_error(self):
        d = G.bergman_disk(alpha=0.5, C=1.0)
        with pytest.raises(G.DilationRangeError):
            G.radial_cumulative_inv(d, 1.5)


class TestMeasure:
    def test_poincare_annulus_closed_form(self):
        # oracle: antiderivative of 2 r / (1 - r^2)^2 is 1/(1 - r^2)
        d = G.poincare_disk(C=-1.0)
        m = G.measure_of(d, G.RadialAnnulusSector(0.1, 0.2))
        exact = 1 / 0.96 - 1 / 0.99  # == 25/792
        assert m.value == pytest.approx(exact, rel=1e-10)
        assert m.value == pytest.approx(25 / 792, rel=1e-10)

    def test_plane_annulus(self):
        m = G.measure_of(G.punctured_plane(), G.RadialAnnulusSector(1.0, 2.0))
        assert m.value == pytest.approx(3 * math.pi, rel=1e-12)

    def test_empty_region(self):
        m = G.measure_of(G.punctured_plane(), G.RadialAnnulusSector(1.0, 1.0))
        assert m.value == 0.0

    def test_unbounded_rejected(self):
        with pytest.raises(G.RegionError):
            G.measure_of(G.punctured_plane(), G.RadialAnnulusSector(1.0, math.inf))
        with pytest.raises(G.RegionError):
            G.measure_of(G.cylinder(), G.RectRegion(0.0, math.inf, 0.0, 1.0))

    def test_montecarlo_agrees(self):
        d = G.poincare_disk(C=-1.0)
        m = G.measure_of(d, G.RadialAnnulusSector(0.1, 0.2), method="montecarlo",
                         budget=200_000, rng=np.random.default_rng(5))
        assert abs(m.value - 25 / 792) < 4 * m.error

    def test_region_validation(self):
        with pytest.raises(G.RegionError):
            G.measure_of(G.cylinder(), G.RadialAnnulusSector(0.1, 0.2))
        with pytest.raises(G.RegionError):
            G.measure_of(G.poincare_disk(), G.RadialAnnulusSector(0.1, 1.0))


class TestVerifyDilation:
    def test_poincare_quadrature(self):
        rep = G.verify_dilation(G.poincare_disk(C=-1.0), G.CylElement(0.3, 0.0),
                                G.RadialAnnulusSector(0.1, 0.2))
        assert rep.expected == pytest.approx(math.exp(0.6), rel=1e-14)
        assert rep.passed and abs(rep.ratio - rep.expected) < 1e-8

    def test_identity_ratio_one(self):
        rep = G.verify_dilation(G.punctured_plane(), G.CylElement(0.0, 0.0),
                                G.RadialAnnulusSector(0.5, 1.5, 0.3, 1.0))
        assert rep.ratio == pytest.approx(1.0, rel=1e-12)

    def test_plane_lebesgue_scaling(self):
        rep = G.verify_dilation(G.punctured_plane(), G.CylElement(-0.4, 2.0),
                                G.RadialAnnulusSector(0.5, 1.5, 0.3, 1.0))
        assert rep.ratio == pytest.approx(math.exp(-0.8), rel=1e-10)

    def test_cylinder_box(self):
        rep = G.verify_dilation(G.cylinder(), G.CylElement(0.8, 2.0), G.RectRegion(-1, 1, 0, 2))
        assert rep.ratio == pytest.approx(math.exp(1.6), rel=1e-10)
        assert rep.passed

    def test_gl2_conformal_and_diagonal(self):
        d = G.gl2_plane()
        rot = np.array([[math.cos(0.5), -math.sin(0.5)], [math.sin(0.5), math.cos(0.5)]])
        rep = G.verify_dilation(d, G.MatElement(1.7 * rot), G.RadialAnnulusSector(0.5, 2.0, 0.1, 2.0))
        assert rep.ratio == pytest.approx(1.7**2, rel=1e-10)
        rep2 = G.verify_dilation(d, G.MatElement([[2.0, 0.0], [0.0, 0.7]]), G.RectRegion(-1, 2, 0.5, 3))
        assert rep2.ratio == pytest.approx(1.4, rel=1e-10)
        with pytest.raises(G.RegionError):
            G.verify_dilation(d, G.MatElement([[1.0, 1.0], [0.0, 1.0]]),
                              G.RadialAnnulusSector(0.5, 2.0))

    def test_montecarlo_mode(self):
        rep = G.verify_dilation(G.punctured_plane(), G.CylElement(0.5, 1.0),
                                G.RadialAnnulusSector(0.5, 1.5), method="montecarlo",
                                budget=100_000, rng=np.random.default_rng(11))
        assert rep.passed


class TestSerialization:
    def test_json_roundtrip(self):
        for d in ALL_RADIAL + [G.cylinder(), G.gl2_plane()]:
            d2 = G.DomainSpec.from_json(d.to_json())
            assert d2 == d

    def test_infinite_radius_null(self):
        text = G.punctured_plane().to_json()
        assert '"R": null' in text


class TestPointValidation:
    def test_make_point(self):
        d = G.poincare_disk()
        p = G.make_point(d, 0.5, 7.0)
        assert 0 <= p.c2 < 2 * math.pi
        with pytest.raises(ValueError):
            G.make_point(d, 1.5, 0.0)
        with pytest.raises(ValueError):
            G.make_point(G.gl2_plane(), 0.0, 0.0)

    @given(st.floats(-100, 100))
    @settings(max_examples=200, deadline=None)
    def test_wrap_angle(self, th):
        w = float(G.wrap_angle(th))
        assert 0.0 <= w < 2 * math.pi
        assert math.isclose(math.cos(w), math.cos(th), abs_tol=1e-9)
        assert math.isclose(math.sin(w), math.sin(th), abs_tol=1e-9)
