import math

import numpy as np
import pytest

from homkernel import geometry as G
from homkernel import hadamard_bergman as HB
from homkernel import kernels as K


def brute_moment(n: int, n_r: int = 200_000) -> float:
    # independent oracle: radial Riemann sum of the 2n-th modulus moment
    # against the normalized area measure: 2 * int r^(2n+1) dr = 1/(n+1)
    r = (np.arange(n_r) + 0.5) / n_r
    return float(np.sum(2.0 * r ** (2 * n + 1)) / n_r)


class TestConvolve:
    def test_constants(self):
        one = HB.constant(1.0)
        assert HB.convolve(one, one, 0.4 + 0.2j) == pytest.approx(1.0, rel=1e-12)

    def test_rotating_factor_averages_out(self):
        one = HB.constant(1.0)
        assert abs(HB.convolve(one, HB.monomial(1), 0.5)) < 1e-14

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_monomial_identity(self, n):
        # oracle: moment integral computed by brute radial sum
        moment = brute_moment(n)
        assert moment == pytest.approx(1.0 / (n + 1), rel=1e-9)
        rng = np.random.default_rng(1)
        for _ in range(10):
            r = rng.uniform(0.1, 0.9)
            th = rng.uniform(0, 2 * math.pi)
            z = r * np.exp(1j * th)
            v = HB.convolve(HB.monomial(n), HB.monomial(n), z)
            assert abs(v - z**n / (n + 1)) <= 1e-10

    def test_origin_rejected(self):
        with pytest.raises(ValueError):
            HB.convolve(HB.constant(1.0), HB.constant(1.0), 0.0)
        with pytest.raises(ValueError):
            HB.convolve(HB.constant(1.0), HB.constant(1.0), 1.2)


class TestKernelForm:
    def test_outside_support_zero(self):
        Kh = HB.as_kernel(HB.constant(1.0))
        assert Kh.at(G.Point(0.3, 0.0), G.Point(0.5, 1.0)) == 0.0
        assert Kh.at(G.Point(0.3, 0.0), G.Point(0.3, 1.0)) == 0.0  # boundary circle

    def test_inner_value(self):
        Kh = HB.as_kernel(HB.constant(1.0))
        assert Kh.at(G.Point(0.5, 0.0), G.Point(0.25, 0.7)) == pytest.approx(4.0, rel=1e-14)

    def test_conjugate_ratio_argument(self):
        g = HB.monomial(1)
        Kh = HB.as_kernel(g)
        z = 0.5 * np.exp(0.3j)
        w = 0.2 * np.exp(1.1j)
        expected = np.conj(w / z) / abs(z) ** 2
        got = Kh.at(G.Point(0.5, 0.3), G.Point(0.2, 1.1))
        assert got == pytest.approx(expected, rel=1e-12)

    def test_strong_homogeneity_conditioned_inside(self):
        # scaling with a > 0 pushes points out; the sampler conditions on
        # both staying inside and reports the acceptance rate
        d = G.radial_disk(R=1.0, C=0.0)
        for n in (0, 2):
            g = HB.constant(1.0) if n == 0 else HB.monomial(n)
            rep = K.check_strong_homogeneity(d, HB.as_kernel(g), n_samples=1000,
                                             tol=1e-10, seed=21)
            assert rep.passed, rep
            assert 0 < rep.acceptance_rate <= 1.0


class TestEquivalence:
    @pytest.mark.parametrize("n", [1, 2])
    def test_monomials(self, n):
        rep = HB.check_equivalence(HB.monomial(n), HB.monomial(n), 0.45 - 0.3j)
        assert rep.passed
        assert rep.difference <= 1e-6

    def test_trig_polynomial_and_bump(self):
        g = HB.DiskFunction(fn=lambda w: 1.0 + 0.5 * np.real(w) - 0.3 * np.imag(w**2))
        f = HB.DiskFunction(fn=lambda w: np.exp(-2 * np.abs(w) ** 2) * (1 + 0.4 * np.real(w)))
        rng = np.random.default_rng(9)
        for _ in range(5):
            z = rng.uniform(0.2, 0.8) * np.exp(1j * rng.uniform(0, 2 * math.pi))
            rep = HB.check_equivalence(g, f, z)
            assert rep.passed
            assert rep.difference <= 1e-4

    def test_discrepancy_shrinks_under_refinement(self):
        g = HB.DiskFunction(fn=lambda w: 1.0 + 0.5 * np.real(w))
        f = HB.DiskFunction(fn=lambda w: np.exp(-3 * np.abs(w - 0.2) ** 2))
        coarse = HB.check_equivalence(g, f, 0.5 + 0.1j, n_r=24, n_theta=24)
        fine = HB.check_equivalence(g, f, 0.5 + 0.1j, n_r=96, n_theta=96)
        assert fine.difference <= coarse.difference + 1e-12
