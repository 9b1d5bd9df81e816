"""Tests for the Γ-representation constants c_q."""

import pytest

from vgstein.tensors import AdmissibilityError, check_admissible, cq


class TestCq:
    @pytest.mark.parametrize("q,r,expected", [(2, 1, 2), (3, 1, 3), (3, 2, 12), (3, 3, 6), (4, 4, 24)])
    def test_single_index(self, q, r, expected):
        assert cq(q, r) == expected

    def test_second_chaos_powers_of_two(self):
        # Γ_j(I₂(f)) = 2^{j−1} zᵀA^j z
        assert cq(2, (1, 1)) == 4
        assert cq(2, (1, 1, 1)) == 8

    def test_full_second_contraction(self):
        assert cq(2, (1, 2)) == 4

    def test_int_and_tuple_forms(self):
        assert cq(3, 2) == cq(3, (2,))


class TestAdmissibility:
    def test_out_of_range(self):
        with pytest.raises(AdmissibilityError):
            cq(2, 3)
        with pytest.raises(AdmissibilityError):
            cq(2, 0)

    def test_scalar_intermediate(self):
        with pytest.raises(AdmissibilityError, match="scalar"):
            check_admissible(2, (2, 1))

    def test_empty_and_bad_order(self):
        with pytest.raises(AdmissibilityError):
            check_admissible(2, ())
        with pytest.raises(AdmissibilityError):
            check_admissible(0, (1,))
