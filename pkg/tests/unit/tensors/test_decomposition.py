"""Tests for the chaos decompositions of Γ₂ and Γ₃."""

import math

import numpy as np
import pytest

from vgstein.chaos import cumulant2
from vgstein.tensors import (
    GammaDecomposition,
    SymTensor,
    TensorError,
    gamma2_decomp,
    gamma3_decomp,
    gamma3_second_moment,
    random_sym_tensor,
    third_moment,
)


# ── Second chaos : formes matricielles ────────────────────────────────────────

class TestSecondChaos:
    def test_gamma2(self, random_kernel):
        a = random_kernel
        d = gamma2_decomp(SymTensor(a.entries))
        assert d.constant == pytest.approx(2.0 * a.trace_power(2))
        assert d.levels[2].entries == pytest.approx(2.0 * a.power(2))

    def test_gamma3(self, random_kernel):
        a = random_kernel
        d = gamma3_decomp(SymTensor(a.entries))
        assert set(d.levels) == {2}
        assert d.constant == pytest.approx(4.0 * a.trace_power(3))
        assert d.levels[2].entries == pytest.approx(4.0 * a.power(3))

    def test_third_moment_is_kappa3(self, random_kernel):
        assert third_moment(SymTensor(random_kernel.entries)) == pytest.approx(cumulant2(random_kernel, 3))

    def test_gamma3_second_moment(self, random_kernel):
        a = random_kernel
        expected = 16.0 * a.trace_power(3) ** 2 + 32.0 * a.trace_power(6)
        assert gamma3_second_moment(SymTensor(a.entries)) == pytest.approx(expected, rel=1e-10)


# ── Ordres supérieurs ─────────────────────────────────────────────────────────

class TestHigherOrders:
    def test_odd_order_levels_are_odd(self, random_tensor):
        d = gamma3_decomp(random_tensor)
        assert d.constant == 0.0
        assert all(level % 2 == 1 for level in d.levels)
        assert third_moment(random_tensor) == 0.0

    def test_even_order_levels_are_even(self):
        d = gamma3_decomp(random_sym_tensor(4, 2, seed=3))
        assert all(level % 2 == 0 for level in d.levels)

    def test_gamma2_mean_is_variance(self, random_tensor):
        assert gamma2_decomp(random_tensor).expectation() == pytest.approx(6.0 * random_tensor.norm_squared())

    def test_rotation_invariance(self, random_tensor, rng):
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        assert gamma3_second_moment(random_tensor.rotated(q)) == pytest.approx(
            gamma3_second_moment(random_tensor), rel=1e-10
        )

    def test_first_order_rejected(self):
        with pytest.raises(TensorError):
            gamma2_decomp(SymTensor([1.0, 0.0]))


# ── GammaDecomposition ────────────────────────────────────────────────────────

class TestGammaDecomposition:
    def test_second_moment_isometry(self):
        d = GammaDecomposition(2, constant=3.0)
        d.add(2, SymTensor(np.eye(2)))
        assert d.second_moment() == pytest.approx(9.0 + math.factorial(2) * 2.0)

    def test_add_accumulates(self):
        d = GammaDecomposition(2)
        d.add(2, SymTensor(np.eye(2)))
        d.add(2, SymTensor(np.eye(2)))
        d.add(0, SymTensor(1.5))
        assert d.levels[2].entries == pytest.approx(2 * np.eye(2))
        assert d.constant == 1.5

    def test_combine(self):
        a = GammaDecomposition(2, constant=1.0, levels={2: SymTensor(np.eye(2))})
        b = GammaDecomposition(2, constant=2.0, levels={4: SymTensor.zeros(4, 2)})
        c = a.combine(b, -0.5)
        assert c.constant == 0.0
        assert set(c.levels) == {2, 4}
        assert a.constant == 1.0

    def test_level_energy_and_summary(self):
        d = GammaDecomposition(2, constant=2.0, levels={2: SymTensor(np.eye(2))})
        assert d.level_energy(0) == 4.0
        assert d.level_energy(2) == 4.0
        assert d.level_energy(6) == 0.0
        assert d.summary()["level_2"] == pytest.approx(math.sqrt(2.0))
