import math

import numpy as np
import pytest

from homkernel import hardy_littlewood as HL
from homkernel.presets import hl_kernel_1d, hl_kernel_2d

CAUCHY = hl_kernel_1d("hlp:1/(x+y)")
STEP = hl_kernel_1d("hlp:step")


class TestKernelValidation:
    def test_inhomogeneous_rejected(self):
        with pytest.raises(ValueError):
            HL.HomogeneousKernel1D(fn=lambda x, y: 1.0 / (np.asarray(x) + np.asarray(y) ** 2))

    def test_2d_rotation_violation_rejected(self):
        with pytest.raises(ValueError):
            HL.HomogeneousKernel2D(fn=lambda x1, x2, y1, y2: np.asarray(y1) ** 2
                                   / (np.hypot(x1, x2) ** 2 + np.hypot(y1, y2) ** 2) ** 2)


class TestKappa1D:
    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_cauchy_closed_form(self, p):
        # oracle: pi / sin(pi / p)
        rep = HL.kappa_1d(CAUCHY, p)
        exact = math.pi / math.sin(math.pi / p)
        assert rep.value == pytest.approx(exact, rel=1e-8)
        assert abs(rep.value - rep.dual_value) <= max(1e-9, 100 * (rep.estimate + rep.dual_estimate))

    def test_step_antiderivative(self):
        # oracle: integral of y^(-3/2) from 1 to infinity = 2
        rep = HL.kappa_1d(STEP, 2.0)
        assert rep.value == pytest.approx(2.0, rel=1e-8)
        assert rep.dual_value == pytest.approx(2.0, rel=1e-8)

    def test_step_general_p(self):
        # integral of y^(-1-1/p) over (1, inf) = p
        for p in (1.5, 3.0):
            assert HL.kappa_1d(STEP, p).value == pytest.approx(p, rel=1e-8)

    def test_cauchy_p1_diverges(self):
        rep = HL.kappa_1d(CAUCHY, 1.0)
        assert rep.diverged and rep.value == math.inf

    def test_scaling_exact(self):
        k2 = HL.HomogeneousKernel1D(fn=lambda x, y: 2.0 / (np.asarray(x, float) + np.asarray(y, float)))
        assert HL.kappa_1d(k2, 2.0).value == 2.0 * HL.kappa_1d(CAUCHY, 2.0).value

    def test_bad_p(self):
        with pytest.raises(ValueError):
            HL.kappa_1d(CAUCHY, 0.5)


class TestKappa2D:
    def test_angular_pi_squared(self):
        # oracle: 2*pi * integral of 1/(1+rho^2) d(rho) = pi^2
        k = hl_kernel_2d("angular:a=1")
        rep = HL.kappa_2d(k, 2.0, n_theta=128)
        assert rep.value == pytest.approx(math.pi**2, rel=1e-7)

    def test_zero_angular_factor(self):
        k = hl_kernel_2d("angular:a=0*t")
        assert HL.kappa_2d(k, 2.0, n_theta=32).value == pytest.approx(0.0, abs=1e-12)

    def test_riesz_half_finite_and_stable(self):
        k = hl_kernel_2d("riesz:alpha=0.5")
        r1 = HL.kappa_2d(k, 2.0, n_theta=96)
        r2 = HL.kappa_2d(k, 2.0, n_theta=192)
        assert math.isfinite(r1.value)
        assert r1.value == pytest.approx(r2.value, rel=1e-7)

    def test_riesz_half_against_plain_polar_oracle(self):
        # independent path: polar frame about the origin only, adaptive in
        # theta with the singular radius flagged per angle
        from scipy.integrate import quad

        k = hl_kernel_2d("riesz:alpha=0.5")

        def radial(th):
            def fn(rho):
                return float(k.fn(1.0, 0.0, rho * math.cos(th), rho * math.sin(th))) * rho ** 0.0

            inner, _ = quad(fn, 0.0, 0.999, points=[0.5], limit=300)
            near, _ = quad(fn, 0.999, 1.001, limit=300)
            mid, _ = quad(fn, 1.001, 4.0, limit=300)
            tail, _ = quad(lambda u: fn(1.0 / u) / u**2, 0.0, 0.25, limit=300)
            return inner + near + mid + tail

        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            oracle, _ = quad(radial, -math.pi, math.pi, points=[0.0], limit=300)
        rep = HL.kappa_2d(k, 2.0, n_theta=96)
        assert rep.value == pytest.approx(oracle, rel=5e-4)

    def test_riesz_one_tail_divergence_detected(self):
        # the tail exponent is exactly -1 at alpha = 1, p = 2: logarithmic
        # divergence, reported rather than silently truncated
        k = hl_kernel_2d("riesz:alpha=1")
        with pytest.raises(HL.DivergentIntegral):
            HL.kappa_2d(k, 2.0, n_theta=32)


class TestLowerBound:
    def test_step_closed_form_oracle(self):
        # exact Rayleigh ratio of the window family for the step kernel:
        # ||K f_N||^2 = 8 ln N - 8 + 8/N,  ||f_N||^2 = 2 ln N
        rep = HL.norm_lower_bound(STEP, 2.0, family_params=(250.0, 1000.0))
        for N, got in rep.by_n.items():
            L = math.log(N)
            exact = math.sqrt((8 * L - 8 + 8 / N) / (2 * L))
            assert got == pytest.approx(exact, rel=2e-3)

    def test_monotone_in_n(self):
        rep = HL.norm_lower_bound(CAUCHY, 2.0, family_params=(62.5, 125.0, 250.0, 500.0, 1000.0))
        vals = [rep.by_n[n] for n in (62.5, 125.0, 250.0, 500.0, 1000.0)]
        assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
        assert vals[-1] <= rep.kappa * (1 + 1e-9)

    def test_degenerate_window_warns(self):
        with pytest.warns(UserWarning):
            rep = HL.norm_lower_bound(CAUCHY, 2.0, family_params=(1.0,))
        assert rep.by_n[1.0] == 0.0

    def test_approaches_kappa_for_huge_windows(self):
        # the convergence is logarithmic; the step kernel passes 95% of
        # kappa once ln N exceeds about 10.3
        rep = HL.norm_lower_bound(STEP, 2.0, family_params=(40000.0,))
        assert rep.best >= 0.95 * rep.kappa

    def test_divergent_kappa_rejected(self):
        with pytest.raises(HL.DivergentIntegral):
            HL.norm_lower_bound(CAUCHY, 1.0)


class TestUpperCheck:
    def test_cauchy_hundred_random(self):
        rep = HL.norm_upper_check(CAUCHY, 2.0, n_random=100, seed=0)
        assert rep.passed
        assert rep.max_ratio <= math.pi * (1 + 1e-4)

    def test_step_hundred_random(self):
        rep = HL.norm_upper_check(STEP, 2.0, n_random=100, seed=1)
        assert rep.passed
        assert rep.max_ratio <= 2.0 * (1 + 1e-4)

    def test_single_hat_strictly_below(self):
        rep = HL.norm_upper_check(CAUCHY, 2.0, n_random=1, seed=7)
        assert rep.max_ratio < 0.99 * rep.kappa

    def test_scaling_exact(self):
        k2 = HL.HomogeneousKernel1D(fn=lambda x, y: 2.0 / (np.asarray(x, float) + np.asarray(y, float)))
        r1 = HL.norm_upper_check(CAUCHY, 2.0, n_random=20, seed=0)
        r2 = HL.norm_upper_check(k2, 2.0, n_random=20, seed=0)
        assert np.array_equal(r2.ratios, 2.0 * r1.ratios)

    def test_other_exponents(self):
        for p in (1.5, 4.0):
            rep = HL.norm_upper_check(CAUCHY, p, n_random=30, seed=3)
            assert rep.passed
