"""Tests for the named special cases of the Variance-Gamma family."""

import math

import pytest

from vgstein.distributions import (
    ParameterError,
    gamma_difference,
    gamma_limit_cumulants,
    gamma_limit_sequence,
    gauss_limit_sequence,
    laplace,
    product_normals,
    special_case,
    sym_gamma,
    vg_cumulants,
)


# ── Constructeurs ─────────────────────────────────────────────────────────────

class TestConstructors:
    def test_laplace(self):
        p = laplace(1.5)
        assert (p.r, p.theta, p.sigma, p.mu) == (2.0, 0.0, 1.5, 0.0)
        assert p.provenance.startswith("laplace")

    def test_sym_gamma(self):
        p = sym_gamma(2.0, 1.5)
        assert (p.r, p.theta, p.sigma) == (3.0, 0.0, 0.5)

    def test_product_normals_variance(self):
        rho, sx, sy = 0.3, 1.2, 0.8
        p = product_normals(rho, sx, sy)
        # Var(XY) = σx²σy²(1 + ρ²)
        assert p.variance == pytest.approx((sx * sy) ** 2 * (1 + rho**2))
        assert p.mean == pytest.approx(rho * sx * sy)

    def test_product_normals_rejects_rho(self):
        with pytest.raises(ParameterError):
            product_normals(1.0, 1.0, 1.0)

    def test_gamma_difference_equal_rates_is_symmetric(self):
        p = gamma_difference(1.5, 2.0, 2.0)
        assert p.theta == 0.0
        assert p.sigma == pytest.approx(0.5)

    def test_gauss_limit_kurtosis(self):
        k = vg_cumulants(gauss_limit_sequence(2.0, 50.0))
        assert k[2] == pytest.approx(2.0)
        assert k[4] == pytest.approx(6 * 4.0 / 50.0)

    def test_gamma_limit_cumulants_approached(self):
        lam, r = 2.0, 1.5
        limit = gamma_limit_cumulants(lam, r)
        k = vg_cumulants(gamma_limit_sequence(lam, r, 1e-6))
        for j in range(2, 7):
            assert k[j] == pytest.approx(limit[j - 1], rel=1e-6)

    def test_gamma_limit_cumulants_closed_form(self):
        limit = gamma_limit_cumulants(1.0, 2.0)
        assert limit == pytest.approx((0.0, 2.0, 4.0, 12.0, 48.0, 240.0))

    def test_non_positive_rejected(self):
        with pytest.raises(ParameterError):
            laplace(0.0)
        with pytest.raises(ParameterError):
            sym_gamma(1.0, -1.0)
        with pytest.raises(ParameterError):
            gauss_limit_sequence(math.inf, 1.0)


# ── special_case ──────────────────────────────────────────────────────────────

class TestSpecialCase:
    def test_dict_and_kwargs_forms_agree(self):
        assert special_case("laplace", {"b": 2.0}) == special_case("laplace", b=2.0)

    def test_unknown_kind(self):
        with pytest.raises(ParameterError, match="unknown special case"):
            special_case("cauchy", {})

    def test_bad_arguments(self):
        with pytest.raises(ParameterError, match="bad arguments"):
            special_case("laplace", {"scale": 1.0})
