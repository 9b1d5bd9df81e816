"""Tests for BoundReport."""

import pytest

from vgstein.reports import BoundReport


class TestBoundReport:
    def test_total_with_constants_defaults_to_total(self):
        r = BoundReport(kind="k", terms={"a": 1.0, "b": 2.0}, total=3.0)
        assert r.total_with_constants == 3.0

    def test_total_with_constants_weights_terms(self):
        r = BoundReport(kind="k", terms={"a": 1.0, "b": 2.0}, total=3.0, constants={"a": 4.0})
        assert r.total_with_constants == pytest.approx(4.0 + 2.0)

    def test_flag_is_idempotent(self):
        r = BoundReport(kind="k", terms={}, total=0.0)
        r.flag("constants_unit")
        r.flag("constants_unit")
        assert r.flags == ["constants_unit"]

    def test_to_dict_optional_sections(self):
        bare = BoundReport(kind="k", terms={"a": 1.0}, total=1.0).to_dict()
        assert set(bare) == {"kind", "terms", "total", "flags"}
        full = BoundReport(
            kind="k",
            terms={"a": 1.0},
            total=1.0,
            interior=1.0,
            stderr={"a": 0.1},
            constants={"a": 2.0},
            details={"n": 3},
        ).to_dict()
        assert full["total_with_constants"] == 2.0
        assert full["details"] == {"n": 3}
        assert full["stderr"] == {"a": 0.1}
