import csv
import json
import re

import numpy as np
import pytest

import cvqkd.cli as cli
from cvqkd import QuadratureError
from cvqkd.cli import main
from cvqkd.montecarlo import MCReport


def parse_rate_output(text):
    values = {}
    for line in text.strip().splitlines():
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


class TestRate:
    def test_lossless_has_no_holevo_leak(self, capsys):
        rc = main(["rate", "--alpha", "1", "--eta", "1", "--scheme", "dr", "--ec", "ideal"])
        out = parse_rate_output(capsys.readouterr().out)
        assert rc == 0
        assert float(out["chi_total"]) == 0.0
        assert float(out["G"]) > 0.0

    def test_below_half_transmission_dr_negative(self, capsys):
        rc = main(["rate", "--alpha", "1", "--eta", "0.4", "--scheme", "dr", "--ec", "ideal"])
        out = parse_rate_output(capsys.readouterr().out)
        assert rc == 0
        assert float(out["G"]) < 0.0

    def test_vacuum_postselected_rate_is_zero(self, capsys):
        rc = main(
            ["rate", "--alpha", "0", "--eta", "0.5", "--scheme", "rr",
             "--postselect", "--ec", "cascade"]
        )
        out = parse_rate_output(capsys.readouterr().out)
        assert rc == 0
        assert float(out["G"]) == 0.0
        assert out["ps_boundary"] == "none"

    def test_nine_significant_digits(self, capsys):
        main(["rate", "--alpha", "1", "--eta", "0.5", "--scheme", "rr", "--ec", "ideal"])
        out = parse_rate_output(capsys.readouterr().out)
        # 9 significant digits -> at least 8 digits after the leading one
        assert re.fullmatch(r"0\.0\d{8,9}", out["G"])

    def test_table_ec_from_file(self, tmp_path, capsys):
        table = tmp_path / "f.txt"
        table.write_text("0.01 1.16\n0.05 1.16\n0.10 1.22\n0.15 1.32\n")
        rc = main(
            ["rate", "--alpha", "1", "--eta", "0.5", "--scheme", "rr",
             "--ec", f"table:{table}"]
        )
        assert rc == 0
        assert float(parse_rate_output(capsys.readouterr().out)["G"]) < 1.0


class TestExitCodes:
    def test_usage_error_is_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["rate", "--alpha", "1", "--scheme", "dr"])  # --eta missing
        assert exc.value.code == 2

    def test_invalid_parameter_is_two(self, capsys):
        rc = main(["rate", "--alpha", "1", "--eta", "0", "--scheme", "dr"])
        assert rc == 2
        assert "error" in capsys.readouterr().err

    def test_bad_ec_spec_is_two(self, capsys):
        rc = main(["rate", "--alpha", "1", "--eta", "0.5", "--scheme", "dr", "--ec", "magic"])
        assert rc == 2

    def test_numerical_failure_is_three(self, capsys, monkeypatch):
        def explode(*args, **kwargs):
            raise QuadratureError("no convergence", value=0.1, estimate=3.7e-5)

        monkeypatch.setattr(cli, "key_rate", explode)
        rc = main(["rate", "--alpha", "1", "--eta", "0.5", "--scheme", "dr"])
        assert rc == 3
        assert "numerical failure: no convergence" in capsys.readouterr().err

    def test_validation_failure_is_one(self, capsys, monkeypatch):
        import cvqkd.cli as cli_mod

        def tampered(signal, channel, mc):
            centers = np.arange(12) * 0.1 + 0.05
            counts = np.full(12, 5_000)
            return MCReport(
                n_samples=int(counts.sum()),
                bin_width=0.1,
                centers=centers,
                counts=counts,
                error_counts=np.zeros(12, dtype=int),
                empirical_e=np.full(12, 0.45),
                analytic_e=np.full(12, 0.10),  # far outside 4 sigma
                stderr=np.full(12, 0.005),
                n_positive=30_000,
                empirical_iab=0.9,
                analytic_iab=0.5,
                discrepancy=0.8,
            )

        monkeypatch.setattr(cli_mod, "simulate", tampered)
        rc = main(["validate", "--alpha", "1", "--eta", "0.5", "--samples", "60000"])
        out = capsys.readouterr().out
        assert rc == 1
        assert "verdict: FAIL" in out


class TestSweepCommand:
    def test_csv_schema_and_roundtrip(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        rc = main(
            ["sweep", "--eta-list", "0.5,0.8", "--scheme", "rr", "--ec", "cascade",
             "--postselect", "--out", str(out), "--coarse-points", "40"]
        )
        assert rc == 0
        rows = read_csv(out)
        assert [r["eta"] for r in rows] == ["0.5", "0.8"]
        assert list(rows[0].keys()) == list(cli.SWEEP_HEADER)
        for row in rows:
            assert row["error"] == ""
            for field in ("alpha_opt", "G", "I_ab", "chi_total", "ps_fraction"):
                value = float(row[field])
                assert repr(value) == row[field]  # lossless round-trip

    def test_manifest_written_and_run_reproducible(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        args = ["sweep", "--eta-list", "0.4", "--scheme", "dr", "--ec", "ideal",
                "--out", str(out), "--coarse-points", "40"]
        assert main(args) == 0
        first = out.read_bytes()
        manifest = json.loads((tmp_path / "sweep.csv.manifest.json").read_text())
        assert manifest["tool"] == "cvqkd"
        assert manifest["command"] == "sweep"
        assert manifest["parameters"]["eta_values"] == [0.4]
        assert manifest["parameters"]["coarse_points"] == 40
        assert main(args) == 0
        assert out.read_bytes() == first

    def test_single_point_sweep_matches_rate_at_optimum(self, tmp_path, capsys):
        out = tmp_path / "one.csv"
        main(["sweep", "--eta-list", "0.5", "--scheme", "rr", "--ec", "ideal",
              "--out", str(out), "--coarse-points", "40"])
        capsys.readouterr()
        row = read_csv(out)[0]
        main(["rate", "--alpha", row["alpha_opt"], "--eta", "0.5",
              "--scheme", "rr", "--ec", "ideal"])
        rate_out = parse_rate_output(capsys.readouterr().out)
        assert float(rate_out["G"]) == pytest.approx(float(row["G"]), rel=1e-9)

    def test_grid_flags(self, tmp_path, capsys):
        out = tmp_path / "grid.csv"
        rc = main(["sweep", "--eta-min", "0.2", "--eta-max", "0.6", "--eta-steps", "3",
                   "--scheme", "dr", "--ec", "ideal", "--postselect",
                   "--out", str(out), "--coarse-points", "40"])
        assert rc == 0
        assert [float(r["eta"]) for r in read_csv(out)] == pytest.approx([0.2, 0.4, 0.6])


class TestConfigFile:
    def test_file_overrides_defaults_flags_override_file(self, tmp_path, capsys):
        cfg = tmp_path / "settings.cfg"
        cfg.write_text("# numerics\nalpha_max = 2.0\ncoarse_points = 30\n")
        out = tmp_path / "s.csv"
        rc = main(["sweep", "--eta-list", "0.9", "--scheme", "dr", "--ec", "ideal",
                   "--config", str(cfg), "--coarse-points", "40", "--out", str(out)])
        assert rc == 0
        manifest = json.loads((tmp_path / "s.csv.manifest.json").read_text())
        assert manifest["parameters"]["alpha_max"] == 2.0  # from file
        assert manifest["parameters"]["coarse_points"] == 40  # flag wins

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "settings.cfg"
        cfg.write_text("alpha_maximum = 2.0\n")
        rc = main(["rate", "--alpha", "1", "--eta", "0.5", "--scheme", "dr",
                   "--config", str(cfg)])
        assert rc == 2


class TestFiguresCommand:
    def test_emits_nine_csvs_with_manifests(self, tmp_path, capsys):
        rc = main(["figures", "--out-dir", str(tmp_path / "figs"),
                   "--eta-steps", "3", "--coarse-points", "30"])
        assert rc == 0
        csvs = sorted(p.name for p in (tmp_path / "figs").glob("*.csv"))
        assert len(csvs) == 9
        expected = sorted(f"{stem}.csv" for stem, *_ in cli.FIGURE_PRESETS)
        assert csvs == expected
        manifests = list((tmp_path / "figs").glob("*.manifest.json"))
        assert len(manifests) == 9
        for name in csvs:
            rows = read_csv(tmp_path / "figs" / name)
            assert len(rows) == 3
            assert all(r["error"] == "" for r in rows)


class TestValidateCommand:
    def test_pass_and_deterministic_output(self, capsys):
        args = ["validate", "--alpha", "1", "--eta", "1", "--samples", "200000",
                "--seed", "7"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert "verdict: PASS" in first
        assert main(args) == 0
        assert capsys.readouterr().out == first

    def test_vacuum_bins_near_half(self, capsys):
        rc = main(["validate", "--alpha", "0", "--eta", "0.5", "--samples", "100000"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "verdict: PASS" in out

    def test_csv_report(self, tmp_path, capsys):
        out = tmp_path / "mc.csv"
        rc = main(["validate", "--alpha", "1", "--eta", "0.5", "--samples", "100000",
                   "--out", str(out)])
        assert rc == 0
        rows = read_csv(out)
        assert list(rows[0].keys()) == list(cli.VALIDATE_HEADER)
        assert sum(int(r["count"]) for r in rows) == 100000
        manifest = json.loads((tmp_path / "mc.csv.manifest.json").read_text())
        assert manifest["parameters"]["seed"] == 20240501
