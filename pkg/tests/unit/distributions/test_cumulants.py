"""Tests for CumulantSet."""

import pytest

from vgstein.distributions import CumulantSet


class TestCumulantSet:
    def test_one_based_indexing(self):
        cs = CumulantSet((0.1, 0.2, 0.3, 0.4, 0.5, 0.6))
        assert cs[1] == 0.1
        assert cs[6] == 0.6
        with pytest.raises(IndexError):
            cs[0]
        with pytest.raises(IndexError):
            cs[7]

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            CumulantSet((1.0, 2.0))
        with pytest.raises(ValueError):
            CumulantSet((0.0,) * 6, stderr=(1.0,))

    def test_se_requires_stderr(self):
        with pytest.raises(ValueError):
            CumulantSet((0.0,) * 6).se(2)
        assert CumulantSet((0.0,) * 6, stderr=(0.5,) * 6).se(3) == 0.5

    def test_standard_normal_moments(self):
        cs = CumulantSet((0.0, 1.0, 0.0, 0.0, 0.0, 0.0))
        assert cs.to_moments() == pytest.approx((0.0, 1.0, 0.0, 3.0, 0.0, 15.0))

    def test_moments_round_trip(self):
        cs = CumulantSet((0.3, 1.2, -0.4, 2.0, 0.7, 5.0))
        back = CumulantSet.from_moments(cs.to_moments())
        assert tuple(back) == pytest.approx(tuple(cs), rel=1e-12, abs=1e-12)

    def test_centred_zeroes_mean(self):
        cs = CumulantSet((2.0, 1.0, 0.5, 0.2, 0.1, 0.05)).centred()
        assert cs[1] == 0.0
        assert cs[2] == 1.0

    def test_as_dict_keys(self):
        d = CumulantSet((0.0,) * 6, stderr=(1.0,) * 6).as_dict()
        assert "kappa4" in d
        assert "kappa4_se" in d
