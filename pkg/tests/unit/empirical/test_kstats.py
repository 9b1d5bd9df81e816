"""
Tests unitaires — vgstein.empirical.kstats
k-statistiques κ₁…κ₆ : valeurs exactes, invariances, estimation Monte Carlo.
"""

import itertools
import math

import numpy as np
import pytest
from scipy import stats

from vgstein.empirical import SampleSet, TooFewSamples, k_statistics, kstat_values


# ── Valeurs exactes ───────────────────────────────────────────────────────────
class TestKstatValues:
    @pytest.mark.parametrize("order", [1, 2, 3, 4])
    def test_matches_scipy(self, rng, order):
        x = rng.standard_normal(37) ** 2
        assert kstat_values(x, 4)[order - 1] == pytest.approx(stats.kstat(x, order), rel=1e-10)

    def test_translation_and_scale(self, rng):
        x = rng.exponential(size=60)
        base = kstat_values(x)
        moved = kstat_values(2.0 * x + 5.0)
        assert moved[0] == pytest.approx(2.0 * base[0] + 5.0)
        for j in range(2, 7):
            assert moved[j - 1] == pytest.approx(2.0**j * base[j - 1], rel=1e-8)

    def test_symmetric_sample_has_zero_odd_statistics(self):
        x = np.array([-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0, 2.0, -2.0])
        k = kstat_values(x)
        assert k[0] == pytest.approx(0.0, abs=1e-14)
        assert k[2] == pytest.approx(0.0, abs=1e-12)
        assert k[4] == pytest.approx(0.0, abs=1e-10)

    def test_variance_is_unbiased_sample_variance(self, rng):
        x = rng.standard_normal(25)
        assert kstat_values(x, 2)[1] == pytest.approx(np.var(x, ddof=1))


class TestUnbiasedness:
    @staticmethod
    def _bernoulli_cumulants(p: float) -> list[float]:
        u = p * (1.0 - p)
        return [
            p,
            u,
            u * (1.0 - 2.0 * p),
            u * (1.0 - 6.0 * u),
            u * (1.0 - 2.0 * p) * (1.0 - 12.0 * u),
            u * (1.0 - 30.0 * u + 120.0 * u**2),
        ]

    @pytest.mark.parametrize("p", [0.3, 0.55])
    def test_exact_expectation_over_all_bernoulli_samples(self, p):
        # les 2⁷ échantillons de taille 7, pondérés par leur probabilité
        n = 7
        expectation = np.zeros(6)
        for sample in itertools.product((0.0, 1.0), repeat=n):
            ones = int(sum(sample))
            expectation += p**ones * (1.0 - p) ** (n - ones) * np.array(kstat_values(np.array(sample)))
        for j, kappa in enumerate(self._bernoulli_cumulants(p), start=1):
            assert expectation[j - 1] == pytest.approx(kappa, rel=1e-10, abs=1e-11), j


class TestKStatistics:
    def test_padding_beyond_order(self, rng):
        c = k_statistics(SampleSet(rng.standard_normal(500)), up_to=3)
        assert math.isnan(c.kappa[5])
        assert math.isnan(c.stderr[3])
        assert c.stderr[1] > 0

    def test_too_few(self):
        with pytest.raises(TooFewSamples):
            k_statistics(SampleSet(np.arange(5.0)))

    @pytest.mark.parametrize("up_to", [0, 7])
    def test_bad_order(self, rng, up_to):
        with pytest.raises(ValueError):
            k_statistics(SampleSet(rng.standard_normal(50)), up_to=up_to)

    def test_single_batch_has_infinite_stderr(self):
        c = k_statistics(SampleSet(np.linspace(-1, 1, 10)), up_to=2)
        assert c.stderr[1] == math.inf


# ── Monte Carlo ───────────────────────────────────────────────────────────────
@pytest.mark.montecarlo
class TestMonteCarlo:
    def test_gamma_cumulants(self):
        # Gamma(k) : κ_j = k (j − 1)!
        shape = 4.0
        x = np.random.default_rng(11).gamma(shape, size=400_000)
        c = k_statistics(SampleSet(x), up_to=4)
        for j in range(1, 5):
            expected = shape * math.factorial(j - 1)
            assert abs(c.kappa[j - 1] - expected) <= 3.0 * c.stderr[j - 1]
