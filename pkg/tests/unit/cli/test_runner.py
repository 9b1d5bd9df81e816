"""
Tests unitaires — vgstein.cli.runner
Construction des objets, ajustements de tendance, exécution des expériences.
"""

import json
import math

import numpy as np
import pytest

from vgstein.chaos import Kernel2, SpectralKernel
from vgstein.cli import EXPERIMENTS, UnknownExperiment, run, run_experiment
from vgstein.cli.runner import (
    build_kernel,
    build_target,
    _map_rows,
    build_tensor,
    fit_loglog_slope,
    is_monotone_decreasing,
)
from vgstein.configurations import ConfigLoader
from vgstein.distributions import VGParams


def make_config(tmp_path, **sections):
    document = {
        "kernel": {"spec": "exact_symgamma", "m": 2, "lam": 1.0},
        "target": {"special": "sym_gamma", "args": {"lam": 1.0, "r": 1.0}},
        "monte_carlo": {"n_mc": 2000, "seed": 3, "chunks": 4},
        "output": {"directory": str(tmp_path / "runs"), "reproducible": True},
    }
    document.update(sections)
    return ConfigLoader.from_dict(document)


# ── Ajustements ───────────────────────────────────────────────────────────────
class TestTrend:
    def test_slope_of_power_law(self):
        xs = [1.0, 2.0, 4.0, 8.0]
        assert fit_loglog_slope(xs, [x**-0.5 for x in xs]) == pytest.approx(-0.5)

    @pytest.mark.parametrize("ys", [[1.0], [1.0, 0.0]])
    def test_slope_rejects(self, ys):
        with pytest.raises(ValueError):
            fit_loglog_slope([1.0, 2.0][: len(ys)], ys)

    def test_monotone(self):
        assert is_monotone_decreasing([3.0, 2.0, 2.0, 1.0])
        assert not is_monotone_decreasing([3.0, 2.0, 2.0], strict=True)
        assert not is_monotone_decreasing([1.0, 2.0])
        assert is_monotone_decreasing([])


# ── Construction ──────────────────────────────────────────────────────────────
class TestBuilders:
    def test_kernels(self, tmp_path):
        config = make_config(tmp_path)
        assert isinstance(build_kernel(config.kernel), SpectralKernel)
        diag = make_config(tmp_path, kernel={"spec": "diag", "entries": [1.0, -1.0]})
        assert isinstance(build_kernel(diag.kernel), Kernel2)
        rand = make_config(tmp_path, kernel={"spec": "random", "dim": 3, "seed": 1})
        assert build_kernel(rand.kernel).dim == 3

    def test_target_special_and_plain(self, tmp_path):
        config = make_config(tmp_path)
        assert build_target(config.target) == VGParams(2.0, 0.0, 1.0)
        plain = make_config(tmp_path, target={"r": 3.0, "theta": 0.2, "sigma": 0.5})
        p = build_target(plain.target)
        assert (p.r, p.theta, p.sigma, p.mu) == (3.0, 0.2, 0.5, 0.0)

    def test_tensor(self, tmp_path):
        config = make_config(tmp_path, tensor={"order": 2, "dim": 2, "entries": [1.0, 0.5, 0.5, -1.0]})
        f = build_tensor(config.tensor)
        assert f.order == 2
        np.testing.assert_allclose(f.entries, [[1.0, 0.5], [0.5, -1.0]])


# ── Expériences ───────────────────────────────────────────────────────────────
class TestExperiments:
    def test_registry(self):
        assert set(EXPERIMENTS) == {
            "six_moment", "clt", "universality", "multivariate",
            "cumulants", "bound", "sample", "stein_check",
        }

    def test_unknown(self, tmp_path):
        with pytest.raises(UnknownExperiment):
            run_experiment(make_config(tmp_path), "nope")

    def test_bound_on_exact_kernel(self, tmp_path):
        config = make_config(
            tmp_path,
            tensor={"order": 2, "dim": 2, "entries": [1.0, 0.5, 0.5, -1.0]},
            tensors=[
                {"order": 3, "dim": 2, "entries": [0.0] * 8},
                {"order": 2, "dim": 2, "entries": [1.0, 0.0, 0.0, 1.0]},
            ],
        )
        result = run_experiment(config, "bound")
        names = [row[0] for row in result.rows]
        assert names == ["vg_bound2", "vg_contraction_bound", "mixed_sum_bound"]
        # noyau exact : les deux termes s'annulent
        assert result.rows[0][3] == pytest.approx(0.0, abs=1e-10)
        assert result.rows[0][4] == pytest.approx(0.0, abs=1e-9)
        assert result.rows[2][1] > 0

    def test_clt_rows(self, tmp_path):
        config = make_config(tmp_path, experiment={"kind": "clt", "n_values": [1, 4, 16]})
        result = run_experiment(config)
        assert result.columns[0] == "n"
        for row in result.rows:
            n = row[0]
            assert row[1] == pytest.approx(2.0)
            assert row[5] == pytest.approx(32.0 / n**2 + 16.0 / n)
            assert row[6] == pytest.approx(math.sqrt(row[5]))
        assert result.summary["sqrt_T"]["monotone_decreasing"] is True
        assert result.summary["sqrt_T"]["loglog_slope"] < 0

    def test_six_moment_rows(self, tmp_path):
        config = make_config(tmp_path, experiment={"kind": "six_moment", "n_values": [1, 10, 100]})
        result = run_experiment(config)
        assert [row[0] for row in result.rows] == [1, 10, 100]
        assert all(row[5] >= 0 and math.isfinite(row[5]) for row in result.rows)
        assert set(result.summary["bound_total"]) == {"monotone_decreasing", "loglog_slope"}
        assert len(result.reports) == 3
        assert result.summary["target"]["r"] == pytest.approx(2.0)

    def test_cumulants_with_tensor(self, tmp_path):
        config = make_config(tmp_path, tensor={"order": 2, "dim": 2, "entries": [1.0, 0.0, 0.0, -1.0]})
        result = run_experiment(config, "cumulants")
        assert [row[0] for row in result.rows] == ["kernel", "target", "tensor_mc"]
        kernel, target = result.rows[0][1:], result.rows[1][1:]
        np.testing.assert_allclose(kernel, target, atol=1e-12)
        assert len(result.summary["tensor_mc_stderr"]) == 6

    def test_universality_columns(self, tmp_path):
        config = make_config(tmp_path, experiment={"kind": "universality", "n_values": [2, 4]})
        result = run_experiment(config)
        assert len(result.rows) == 2
        assert all(row[1] >= 0 and row[2] >= 0 for row in result.rows)

    def test_multivariate_rows(self, tmp_path):
        config = make_config(
            tmp_path,
            kernels=[{"spec": "exact_symgamma", "m": 2}, {"spec": "random", "dim": 4, "seed": 2}],
            targets=[{"r": 2.0}, {"r": 4.0, "theta": 0.5}],
        )
        result = run_experiment(config, "multivariate")
        assert result.rows[0][:2] == [1, 2]
        assert result.summary["total"] > 0

    def test_stein_check(self, tmp_path):
        config = make_config(tmp_path, target={"special": "sym_gamma", "args": {"lam": 2.0, "r": 1.0}})
        result = run_experiment(config, "stein_check")
        values = dict((row[0], row[1]) for row in result.rows)
        for k in range(1, 6):
            assert values[f"residual_vg[x^{k}]"] == pytest.approx(0.0, abs=1e-6)
            assert values[f"residual_symgamma[x^{k}]"] == pytest.approx(0.0, abs=1e-6)
        assert values["normal_residual[sin]"] == pytest.approx(0.0, abs=1e-12)
        assert values["solve_stein[tanh].residual"] <= 1e-6
        assert "constant_bounds.f_margin" in values


# ── Lignes parallèles ─────────────────────────────────────────────────────────
class TestParallelRows:
    def test_map_rows_keeps_index_order(self):
        assert _map_rows(str, [3, 1, 2], workers=2) == ["3", "1", "2"]
        assert _map_rows(str, [3, 1, 2], workers=1) == ["3", "1", "2"]

    @pytest.mark.parametrize("kind", ["six_moment", "clt", "universality"])
    def test_rows_do_not_depend_on_workers(self, tmp_path, kind):
        experiment = {"kind": kind, "n_values": [1, 2, 4]}
        serial = run_experiment(make_config(tmp_path, experiment=experiment))
        parallel = run_experiment(
            make_config(
                tmp_path,
                experiment=experiment,
                monte_carlo={"n_mc": 2000, "seed": 3, "chunks": 4, "workers": 2},
            )
        )
        np.testing.assert_equal(parallel.rows, serial.rows)
        np.testing.assert_equal(parallel.reports, serial.reports)


class TestRun:
    def test_writes_csv_and_json(self, tmp_path):
        config = make_config(tmp_path)
        result, paths = run(config, "bound")
        assert paths["csv"].name == "bound.csv"
        header = paths["csv"].read_text(encoding="utf-8").splitlines()[0]
        assert header == ",".join(result.columns)
        payload = json.loads(paths["json"].read_text(encoding="utf-8"))
        assert payload["experiment"] == "bound"
        assert payload["config"]["monte_carlo"]["seed"] == 3

    def test_sample_reproducible(self, tmp_path):
        config = make_config(tmp_path)
        _, first = run(config, "sample")
        before = (tmp_path / "runs" / "samples_target.csv").read_bytes()
        csv_before = first["csv"].read_bytes()
        _, second = run(config, "sample")
        assert (tmp_path / "runs" / "samples_target.csv").read_bytes() == before
        assert second["csv"].read_bytes() == csv_before
