"""Tests for the modified Bessel function K_ν."""

import math

import numpy as np
import pytest
from scipy import special

from vgstein.distributions import BesselRangeError, bessel_k, bessel_kve, log_bessel_kve
from vgstein.distributions.bessel import asymptotic_threshold


# ── bessel_k (scalaire) ───────────────────────────────────────────────────────

class TestBesselK:
    def test_half_order_closed_form(self):
        # K_{1/2}(x) = √(π/2x) e^{-x}
        for x in (0.1, 1.0, 3.5):
            expected = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
            assert bessel_k(0.5, x) == pytest.approx(expected, rel=1e-10)

    @pytest.mark.parametrize("nu,x", [(0.0, 0.3), (1.0, 2.0), (2.5, 0.7), (4.0, 10.0)])
    def test_matches_scipy_on_quadrature_branch(self, nu, x):
        assert x < asymptotic_threshold(nu)
        assert bessel_k(nu, x) == pytest.approx(special.kv(nu, x), rel=1e-9)

    def test_asymptotic_branch(self):
        x = 45.0
        assert x >= asymptotic_threshold(1.5)
        assert bessel_k(1.5, x) == pytest.approx(special.kv(1.5, x), rel=1e-10)

    def test_negative_order_is_symmetric(self):
        assert bessel_k(-1.3, 2.0) == pytest.approx(bessel_k(1.3, 2.0), rel=1e-12)

    def test_non_positive_argument_raises(self):
        with pytest.raises(ValueError):
            bessel_k(1.0, 0.0)
        with pytest.raises(ValueError):
            bessel_k(1.0, -2.0)

    def test_overflow_raises(self):
        with pytest.raises(BesselRangeError):
            bessel_k(200.0, 1e-3)


# ── bessel_kve (vectoriel) ────────────────────────────────────────────────────

class TestBesselKve:
    def test_matches_scipy_scaled(self):
        x = np.array([0.05, 0.5, 2.0, 12.0, 40.0])
        for nu in (0.0, 0.5, 1.5, 3.0):
            assert bessel_kve(nu, x) == pytest.approx(special.kve(nu, x), rel=1e-9)

    def test_shape_preserved(self):
        x = np.linspace(0.5, 3.0, 6).reshape(2, 3)
        assert bessel_kve(1.0, x).shape == (2, 3)

    def test_log_path_consistent(self):
        x = np.array([0.2, 1.0, 5.0])
        assert np.exp(log_bessel_kve(2.0, x)) == pytest.approx(bessel_kve(2.0, x), rel=1e-12)

    def test_rejects_non_positive(self):
        with pytest.raises(ValueError):
            log_bessel_kve(1.0, np.array([1.0, 0.0]))
