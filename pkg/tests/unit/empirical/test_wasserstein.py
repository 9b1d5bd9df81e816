"""
Tests unitaires — vgstein.empirical.wasserstein
Couplage des statistiques d'ordre, échantillon contre échantillon ou contre loi.
"""

import numpy as np
import pytest
from scipy import stats

from vgstein.distributions import VGParams, vg_quantile
from vgstein.empirical import (
    SampleError,
    SampleSet,
    equalize,
    wasserstein_1d,
    wasserstein_to_normal,
    wasserstein_to_vg,
)


# ── Deux échantillons ─────────────────────────────────────────────────────────
class TestWasserstein1D:
    def test_identical(self, rng):
        s = SampleSet(rng.standard_normal(500))
        assert wasserstein_1d(s, s) == 0.0

    def test_shift(self, rng):
        x = rng.standard_normal(500)
        assert wasserstein_1d(SampleSet(x), SampleSet(x + 0.3)) == pytest.approx(0.3)

    def test_order_does_not_matter(self):
        a = SampleSet(np.array([3.0, 1.0, 2.0]))
        b = SampleSet(np.array([1.0, 2.0, 4.0]))
        assert wasserstein_1d(a, b) == pytest.approx(1.0 / 3.0)

    def test_matches_scipy(self, rng):
        x, y = rng.standard_normal(400), rng.exponential(size=400)
        expected = stats.wasserstein_distance(x, y)
        assert wasserstein_1d(SampleSet(x), SampleSet(y)) == pytest.approx(expected)


class TestEqualize:
    def test_trims_longer(self):
        a, b = equalize(SampleSet(np.arange(10.0)), SampleSet(np.arange(4.0)))
        assert a.size == b.size == 4
        assert a.meta["trimmed_from"] == 10
        assert "trimmed_from" not in b.meta

    def test_same_size_untouched(self):
        s1, s2 = SampleSet(np.ones(3)), SampleSet(np.zeros(3))
        assert equalize(s1, s2) == (s1, s2)


# ── Contre une loi ────────────────────────────────────────────────────────────
class TestAgainstLaw:
    def test_normal_quantiles_have_zero_distance(self):
        n = 200
        q = stats.norm.ppf((np.arange(1, n + 1) - 0.5) / n, scale=2.0)
        assert wasserstein_to_normal(SampleSet(q), variance=4.0) == pytest.approx(0.0, abs=1e-12)

    def test_vg_quantiles_have_zero_distance(self):
        p = VGParams(2.0, 0.3, 1.0)
        n = 100
        q = np.asarray(vg_quantile(p, (np.arange(1, n + 1) - 0.5) / n))
        assert wasserstein_to_vg(SampleSet(q[::-1]), p) == pytest.approx(0.0, abs=1e-12)

    def test_shifted_normal(self):
        n = 300
        q = stats.norm.ppf((np.arange(1, n + 1) - 0.5) / n)
        assert wasserstein_to_normal(SampleSet(q - 0.5)) == pytest.approx(0.5)

    def test_bad_variance(self):
        with pytest.raises(SampleError):
            wasserstein_to_normal(SampleSet(np.ones(3)), variance=0.0)
