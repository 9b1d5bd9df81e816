"""Tests for contraction-norm bounds on higher chaoses."""

import itertools
import math

import numpy as np
import pytest
from numpy.polynomial import HermiteE

from vgstein.chaos import Kernel2, exact_symgamma_kernel, vg_interior
from vgstein.chaos import random_kernel as draw_kernel
from vgstein.distributions import UnsupportedLocation, VGParams, sym_gamma
from vgstein.tensors import (
    OddOrderAsymmetryError,
    SymTensor,
    TensorError,
    double_vs_single_contraction_check,
    mixed_sum_bound,
    mixed_sum_terms,
    random_sym_tensor,
    symgamma_contraction_bound,
    vg_contraction_bound,
)


# ── Oracle unidimensionnel ────────────────────────────────────────────────────


def _minus_l_inverse(p: HermiteE) -> HermiteE:
    # −L⁻¹ He_n = He_n / n, chaos 0 annulé
    c = np.array(p.coef, dtype=float)
    c[0] = 0.0
    c[1:] /= np.arange(1, c.size)
    return HermiteE(c)


def _hermite_remainder(q: int, w: float, target: VGParams) -> tuple[float, float]:
    """
    Moyenne et variance de Γ₃ − 2θΓ₂ − σ²F pour F = w He_q(Y), Y ~ N(0, 1),
    avec Γ_j = F' · (−L⁻¹Γ_{j−1})'.
    """
    f = HermiteE.basis(q) * w
    g2 = f.deriv() * _minus_l_inverse(f).deriv()
    g3 = f.deriv() * _minus_l_inverse(g2).deriv()
    c = (g3 - 2.0 * target.theta * g2 - target.sigma**2 * f).coef
    return float(c[0]), math.fsum(c[n] ** 2 * math.factorial(n) for n in range(1, c.size))


def _orthogonal_rank_ones(q: int, weights: list[float], seed: int) -> SymTensor:
    """Σ w_i (Q e_i)^{⊗q} : somme de chaos indépendants le long de directions orthonormées."""
    basis, _ = np.linalg.qr(np.random.default_rng(seed).standard_normal((3, 3)))
    f = SymTensor.zeros(q, 3)
    for i, w in enumerate(weights):
        f = f + SymTensor.rank_one(basis[:, i], q).scaled(w)
    return f


# ── vg_contraction_bound ──────────────────────────────────────────────────────

class TestVgContractionBound:
    @pytest.mark.parametrize("theta", [-0.4, 0.0, 0.7])
    def test_second_chaos_matches_trace_formula(self, random_kernel, theta):
        target = VGParams(2.5, theta, 1.1)
        report = vg_contraction_bound(SymTensor(random_kernel.entries), target)
        assert report.interior == pytest.approx(vg_interior(random_kernel, target), rel=1e-10)
        assert sum(report.details["parts"].values()) == pytest.approx(report.interior)

    @pytest.mark.parametrize("seed", range(20))
    def test_second_chaos_random_kernels_and_targets(self, seed):
        a = draw_kernel(2 + seed % 4, seed)
        draw = np.random.default_rng(500 + seed)
        for _ in range(5):
            target = VGParams(draw.uniform(0.5, 4.0), draw.uniform(-1.0, 1.0), draw.uniform(0.5, 1.5))
            report = vg_contraction_bound(SymTensor(a.entries), target)
            assert report.interior == pytest.approx(vg_interior(a, target), rel=1e-9, abs=1e-9)

    def test_exact_kernel(self):
        lam = 1.3
        a = exact_symgamma_kernel(2, lam).to_kernel()
        report = vg_contraction_bound(SymTensor(a.entries), sym_gamma(lam, 1.0))
        assert report.total == pytest.approx(0.0, abs=1e-10)

    def test_variance_term(self, random_tensor):
        target = VGParams(2.0, 0.0, 1.0)
        report = vg_contraction_bound(random_tensor, target)
        assert report.terms["term2"] == pytest.approx(abs(2.0 - 6.0 * random_tensor.norm_squared()))

    def test_odd_order_asymmetric_rejected(self, random_tensor):
        with pytest.raises(OddOrderAsymmetryError):
            vg_contraction_bound(random_tensor, VGParams(2.0, 0.1, 1.0))

    def test_location_and_order(self, random_tensor):
        with pytest.raises(UnsupportedLocation):
            vg_contraction_bound(random_tensor, VGParams(2.0, 0.0, 1.0, 1.0))
        with pytest.raises(TensorError):
            vg_contraction_bound(SymTensor([1.0, 2.0]), VGParams(2.0))

    def test_symgamma_form_agrees(self, random_tensor):
        lam = 0.8
        assert symgamma_contraction_bound(random_tensor, lam) == pytest.approx(
            vg_contraction_bound(random_tensor, sym_gamma(lam, 1.0)).interior, rel=1e-10
        )

    def test_symgamma_rejects_lambda(self, random_tensor):
        with pytest.raises(ValueError):
            symgamma_contraction_bound(random_tensor, 0.0)


class TestVgContractionHermite:
    @pytest.mark.parametrize("q, theta", [(2, 0.5), (3, 0.0), (4, -0.5), (4, 0.0), (4, 0.8)])
    @pytest.mark.parametrize("weights", [[0.8], [0.6, -0.4, 0.3]])
    def test_interior_matches_independent_components(self, q, theta, weights):
        target = VGParams(2.0, theta, 1.2)
        f = _orthogonal_rank_ones(q, weights, seed=q)
        moments = [_hermite_remainder(q, w, target) for w in weights]
        mean = math.fsum(m for m, _ in moments) - target.r * target.theta * target.sigma**2
        expected = math.fsum(v for _, v in moments) + mean**2
        assert vg_contraction_bound(f, target).interior == pytest.approx(expected, rel=1e-9, abs=1e-9)

    def test_second_chaos_gamma2_mean(self):
        # F = w He₂ : E[Γ₂] = 2w²
        f = HermiteE.basis(2) * 0.7
        g2 = f.deriv() * _minus_l_inverse(f).deriv()
        assert g2.coef[0] == pytest.approx(2.0 * 0.49)


# ── Somme de deux chaos ───────────────────────────────────────────────────────

class TestMixedSum:
    def test_zero_upper_component(self, random_kernel):
        lam = 1.5
        a = random_kernel
        f1 = SymTensor(a.entries)
        value = mixed_sum_bound(f1, SymTensor.zeros(3, 4), lam)
        m = a.entries / lam**2 - 4.0 * a.power(3)
        assert value == pytest.approx(8.0 * float(np.sum(m * m)) + 4.0 * a.trace_power(3) ** 2, rel=1e-10)

    def test_terms_exclude_own_pairs(self):
        terms = mixed_sum_terms(random_sym_tensor(2, 2, 1), random_sym_tensor(3, 2, 2))
        keys = [k for k, _ in terms]
        assert (1, 1, 1, 1, 1) not in keys
        assert (2, 2, 2, 1, 2) not in keys
        assert all(v >= 0 for _, v in terms)

    def test_order_validation(self):
        f2 = random_sym_tensor(2, 2, 1)
        with pytest.raises(TensorError):
            mixed_sum_bound(f2, f2, 1.0)
        with pytest.raises(TensorError):
            mixed_sum_bound(f2, random_sym_tensor(3, 3, 1), 1.0)

    @pytest.mark.parametrize("a, b", [(0.7, 0.2), (-0.5, 0.3)])
    def test_rank_one_enumeration(self, a, b):
        # f¹ = a v^{⊗2}, f² = b v^{⊗3}, |v| = 1 : chaque norme vaut (w_i w_j w_k)²
        lam = 1.3
        v = np.array([0.6, 0.8])
        f1 = SymTensor.rank_one(v, 2).scaled(a)
        f2 = SymTensor.rank_one(v, 3).scaled(b)
        w, q = {1: a, 2: b}, {1: 2, 2: 3}
        expected = {}
        for i, j, k in itertools.product((1, 2), repeat=3):
            for r in range(1, min(q[i], q[j], q[k]) + 1):
                inner = q[j] + q[k] - 2 * r
                for s in range(1, min(q[i], inner) + 1):
                    if i == j == k and r + s == q[i]:
                        continue
                    coef = (
                        q[i] * q[j]
                        * math.factorial(r - 1) * math.comb(q[i] - 1, r - 1) * math.comb(q[j] - 1, r - 1)
                        * math.factorial(s - 1) * math.comb(q[i] - 1, s - 1) * math.comb(inner - 1, s - 1)
                    )
                    expected[(i, j, k, r, s)] = coef * (w[i] * w[j] * w[k]) ** 2

        terms = dict(mixed_sum_terms(f1, f2))
        assert terms.keys() == expected.keys()
        for key, value in expected.items():
            assert terms[key] == pytest.approx(value, rel=1e-10, abs=1e-14)

        # termes propres : Σ_r c_2(r, 2−r) = 4, Σ_r c_3(r, 3−r) = 90
        own = (a / lam**2 - 4.0 * a**3) ** 2 + (b / lam**2 - 90.0 * b**3) ** 2
        total = 8.0 * own + math.fsum(expected.values())
        assert mixed_sum_bound(f1, f2, lam) == pytest.approx(total, rel=1e-10)


# ── Contractions doubles et simples ───────────────────────────────────────────

class TestDoubleVsSingle:
    def test_second_chaos(self, random_kernel):
        out = double_vs_single_contraction_check(SymTensor(random_kernel.entries))
        assert set(out["pairs"]) == {"1,1"}
        assert set(out["scalar_pairs"]) == {"1,2"}
        assert out["rhs"] == pytest.approx(np.linalg.norm(random_kernel.power(2)) ** 1.5)
        assert out["margin"] >= 0.0

    def test_third_order_has_no_scalar_pairs(self, random_tensor):
        out = double_vs_single_contraction_check(random_tensor)
        assert out["scalar_pairs"] == {}
        assert out["lhs_max"] == max(out["pairs"].values())

    @pytest.mark.parametrize("q", [2, 3, 4])
    @pytest.mark.parametrize("seed", range(50))
    def test_random_tensors_within_bound(self, q, seed):
        out = double_vs_single_contraction_check(random_sym_tensor(q, 3, seed))
        assert out["margin"] >= -1e-12

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_rank_one_is_tight(self, q):
        out = double_vs_single_contraction_check(SymTensor.rank_one([0.6, 0.8, 0.0], q))
        assert out["margin"] == pytest.approx(0.0, abs=1e-12)
