import json

import pytest

from semlim import cli
from semlim.cli import (
    CSV_HEADER,
    PRESETS,
    REGISTRY_DIGESTS,
    Preset,
    bound_report,
    main,
    preset_digest,
    run_preset,
    run_sweep_config,
    selftest,
)
from semlim.logistic import ConditionError
from semlim.scenarios import Variant

SEED = 7


def read_rows(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    assert ",".join(header) == CSV_HEADER
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


class TestRegistry:
    def test_every_preset_is_registered(self):
        assert sorted(PRESETS) == sorted(f"fig{i}" for i in range(3, 11))
        assert set(REGISTRY_DIGESTS) == set(PRESETS)
        for name, preset in PRESETS.items():
            assert preset_digest(preset) == REGISTRY_DIGESTS[name]

    def test_caption_fixed_parameters(self):
        fig3 = PRESETS["fig3"]
        assert fig3.n == 10_000_000
        assert all(cfg.variant is Variant.NO_RFI and cfg.p_max_s == 5.0 for _, cfg in fig3.series)

        fig4 = PRESETS["fig4"]
        assert all(cfg.sigma2 == 100.0 for _, cfg in fig4.series)

        fig5 = PRESETS["fig5"]
        assert fig5.n == 10_000_000
        assert all(cfg.variant is Variant.SINGLE_RFI and cfg.p_max_s == 10.0 for _, cfg in fig5.series)

        fig6 = PRESETS["fig6"]
        assert all(cfg.p_min_i == 10.0 for _, cfg in fig6.series)

        for name, p_tilde in (("fig7", 0.1), ("fig8", 0.15)):
            preset = PRESETS[name]
            assert preset.n == 1_000_000
            assert all(
                cfg.variant is Variant.MULTI_RFI
                and cfg.p_max_s == 10.0
                and cfg.p_tilde_min == p_tilde
                for _, cfg in preset.series
            )

        for name, p_tilde in (("fig9", 0.8), ("fig10", 1.0)):
            preset = PRESETS[name]
            assert preset.n == 1_000_000
            assert [cfg.u for _, cfg in preset.series] == [25, 50, 100]
            assert all(
                cfg.variant is Variant.PRACTICAL_SINR
                and cfg.p_max_s == 1.5
                and cfg.p_tilde_min == p_tilde
                for _, cfg in preset.series
            )

    def test_thresholds_strictly_increasing(self):
        for preset in PRESETS.values():
            grid = preset.thresholds
            assert all(a < b for a, b in zip(grid, grid[1:]))


class TestRunPreset:
    def test_unknown_preset_lists_registry(self):
        with pytest.raises(ValueError, match="fig3.*fig10"):
            run_preset("fig99", SEED)

    def test_csv_schema_and_shape(self, tmp_path):
        out = tmp_path / "fig9.csv"
        run_preset("fig9", SEED, sample_override=2000, output_path=out)
        rows = read_rows(out)
        preset = PRESETS["fig9"]
        assert len(rows) == len(preset.series) * len(preset.thresholds)
        first = rows[0]
        assert first["scenario"] == "PracticalSinr"
        assert first["seed"] == str(SEED)
        assert int(first["n"]) == 2000
        assert float(first["p_hat"]) == int(first["hits"]) / 2000
        # practical presets populate every bound column
        assert first["markov_bound"] != "" and first["closed_form"] != ""
        assert float(first["ci_low"]) <= float(first["p_hat"]) <= float(first["ci_high"])

    def test_byte_determinism(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run_preset("fig7", SEED, 4096, a, workers=1)
        run_preset("fig7", SEED, 4096, b, workers=2)
        assert a.read_bytes() == b.read_bytes()

    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_each_preset_curve_is_monotone(self, name, tmp_path):
        out = tmp_path / f"{name}.csv"
        run_preset(name, SEED, sample_override=2000, output_path=out)
        rows = read_rows(out)
        by_series = {}
        for row in rows:
            by_series.setdefault(row["series_label"], []).append(
                (float(row["threshold"]), float(row["p_hat"]))
            )
        for label, points in by_series.items():
            ordered = [p for _, p in sorted(points)]
            assert ordered == sorted(ordered, reverse=True), (name, label)

    def test_inapplicable_columns_left_empty(self, tmp_path):
        out = tmp_path / "fig3.csv"
        run_preset("fig3", SEED, 1000, out)
        for row in read_rows(out):
            assert row["markov_bound"] == "" and row["outage_lower_bound"] == ""
            assert row["closed_form"] != ""


class TestRunSweep:
    def test_doubling_interferers_column(self, tmp_path):
        config = {
            "series": [
                {"label": f"u={u}", "scenario": {"variant": "MultiRfi", "p_max_s": 10.0, "p_tilde_min": 10.0, "u": u}}
                for u in (2, 4, 8, 16, 32)
            ],
            "thresholds": [1.0],
            "n": 100_000,
        }
        rows = read_rows(run_sweep_config(config, SEED, tmp_path / "u.csv"))
        assert len(rows) == 5  # one threshold -> one row per series
        p = [float(r["p_hat"]) for r in rows]
        assert all(a > b for a, b in zip(p, p[1:]))
        for row in rows:
            exact = float(row["closed_form"])
            assert abs(float(row["p_hat"]) - exact) < 5 * max((exact * (1 - exact) / 100_000) ** 0.5, 1e-5)

    def test_bounds_requested_with_single_interferer(self, tmp_path):
        config = {
            "scenario": {"variant": "SingleRfi", "p_max_s": 10.0, "p_min_i": 10.0, "u": 1},
            "thresholds": [1.0],
            "n": 1000,
            "bounds": True,
        }
        with pytest.raises(ConditionError, match="PowerBudget"):
            run_sweep_config(config, SEED, tmp_path / "x.csv")

    def test_bounds_false_strips_columns(self, tmp_path):
        config = {
            "scenario": {"variant": "MultiRfi", "p_max_s": 10.0, "p_tilde_min": 10.0, "u": 3},
            "thresholds": [1.0],
            "n": 1000,
            "bounds": False,
        }
        rows = read_rows(run_sweep_config(config, SEED, tmp_path / "x.csv"))
        assert rows[0]["markov_bound"] == "" and rows[0]["closed_form"] == ""

    def test_config_validation(self, tmp_path):
        with pytest.raises(ValueError, match="scenario"):
            run_sweep_config({"thresholds": [1.0], "n": 10}, SEED, tmp_path / "x.csv")
        with pytest.raises(ValueError, match="thresholds"):
            run_sweep_config({"scenario": {"variant": "NoRfi", "p_max_s": 1, "sigma2": 1}, "n": 10}, SEED, tmp_path / "x.csv")


class TestBoundReport:
    def test_single_params(self):
        report = bound_report(
            {
                "params": {"k_label": 1, "a1": 0.0, "a2": 1.0, "c1": 1.0, "c2": 0.0},
                "eta_min": 0.52497918747894,  # similarity floor whose threshold is 0.1
                "p_max_s": 1.5,
                "p_tilde_min": 1.0,
                "u": 25,
            }
        )
        assert report["markov_upper_bound"]["value"] == pytest.approx(0.625, abs=1e-9)
        assert report["outage_lower_bound"]["value"] == pytest.approx(0.375, abs=1e-9)
        assert report["markov_upper_bound"]["applicable"] is True
        assert json.dumps(report)  # JSON serializable

    def test_family_selects_largest_label(self):
        family = [
            {"k_label": k, "a1": 0.2, "a2": 0.95, "c1": 0.6 * k, "c2": 0.5}
            for k in (1, 2, 4, 8)
        ]
        report = bound_report(
            {"family": family, "eta_min": 0.8, "p_max_s": 1.5, "p_tilde_min": 1.0, "u": 25}
        )
        assert report["k_label"] == 8


class TestSelftest:
    def test_passes_and_is_deterministic(self):
        first, ok1 = selftest(SEED, n=50_000)
        second, ok2 = selftest(SEED, n=50_000)
        assert ok1 and ok2
        assert first == second
        assert "selftest: PASS" in first

    def test_corrupted_registry_names_preset(self, monkeypatch):
        broken = PRESETS["fig5"]
        corrupted = Preset(
            broken.name, broken.description, broken.series, broken.thresholds, 999
        )
        monkeypatch.setitem(cli.PRESETS, "fig5", corrupted)
        report, ok = selftest(SEED, n=50_000)
        assert not ok
        assert "FAIL registry[fig5]" in report


class TestMain:
    def test_preset_roundtrip(self, tmp_path, capsys):
        out = tmp_path / "fig7.csv"
        code = main(["preset", "fig7", "--seed", str(SEED), "--samples", "2000", "--out", str(out), "--workers", "1"])
        assert code == 0 and out.exists()
        assert str(out) in capsys.readouterr().out

    def test_unknown_preset_exit_code(self, capsys):
        assert main(["preset", "nope", "--seed", "1"]) == 2
        assert "available presets" in capsys.readouterr().err

    def test_bound_command(self, tmp_path, capsys):
        config = tmp_path / "bound.json"
        config.write_text(
            json.dumps(
                {
                    "params": {"k_label": 1, "a1": 0.0, "a2": 1.0, "c1": 1.0, "c2": 0.0},
                    "eta_min": 0.8,
                    "p_max_s": 1.5,
                    "p_tilde_min": 1.0,
                    "u": 25,
                }
            )
        )
        assert main(["bound", "--config", str(config)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["markov_upper_bound"]["applicable"] is True

    def test_env_seed_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SEMLIM_SEED", str(SEED))
        out_env = tmp_path / "env.csv"
        assert main(["preset", "fig7", "--samples", "2000", "--out", str(out_env), "--workers", "1"]) == 0
        out_flag = tmp_path / "flag.csv"
        assert main(
            ["preset", "fig7", "--seed", str(SEED), "--samples", "2000", "--out", str(out_flag), "--workers", "1"]
        ) == 0
        assert out_env.read_bytes() == out_flag.read_bytes()
        # a flag overrides the environment
        monkeypatch.setenv("SEMLIM_SEED", "12345")
        out_override = tmp_path / "override.csv"
        assert main(
            ["preset", "fig7", "--seed", str(SEED), "--samples", "2000", "--out", str(out_override), "--workers", "1"]
        ) == 0
        assert out_override.read_bytes() == out_flag.read_bytes()

    def test_sweep_command_condition_error_exit(self, tmp_path, capsys):
        config = tmp_path / "sweep.json"
        config.write_text(
            json.dumps(
                {
                    "scenario": {"variant": "SingleRfi", "p_max_s": 10.0, "p_min_i": 10.0, "u": 1},
                    "thresholds": [1.0],
                    "n": 1000,
                    "bounds": True,
                }
            )
        )
        assert main(["sweep", "--config", str(config)]) == 2
        assert "PowerBudget" in capsys.readouterr().err
