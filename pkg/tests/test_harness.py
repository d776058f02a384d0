"""Config parsing, artifact files, run dispatch, reference comparison,
and the command-line interface."""

import numpy as np
import pytest

from wenokit import cli, harness
from wenokit.errors import ConfigError
from wenokit.harness import (
    compare_to_reference,
    parse_config,
    read_field,
    run,
    write_field_1d,
    write_field_2d,
)


class TestParseConfig:
    def test_case_defaults(self):
        cfg = parse_config("case=shu_osher\nscheme=es4\n")
        assert cfg.case == "shu_osher"
        assert cfg.scheme == "es4"
        assert cfg.params.c_alpha == 1.3
        assert cfg.n is None

    def test_overrides_and_comments(self):
        cfg = parse_config(
            "# convergence-table row\n"
            "case=advection\n"
            "scheme = es4\n"
            "N = 320  # grid points\n"
            "C_beta = 4.0\n")
        assert cfg.n == 320
        assert cfg.params.c_beta == 4.0
        assert cfg.overrides == {"c_beta": 4.0}

    def test_unknown_case(self):
        with pytest.raises(ConfigError, match="unknown case"):
            parse_config("case=sod\nscheme=es4")

    def test_unknown_scheme(self):
        with pytest.raises(ConfigError, match="unknown scheme"):
            parse_config("case=blast\nscheme=weno9")

    def test_unknown_key_with_line_number(self):
        with pytest.raises(ConfigError, match="line 3"):
            parse_config("case=blast\nscheme=es4\ncolor=red")

    def test_missing_equals_with_line_number(self):
        with pytest.raises(ConfigError, match="line 2: expected key=value"):
            parse_config("case=blast\nscheme es4")

    def test_non_numeric_value(self):
        with pytest.raises(ConfigError, match="non-numeric"):
            parse_config("case=blast\nscheme=es4\ndt=small")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config("case=blast\nscheme=es4\ncase=blast")

    def test_invalid_scheme_constant(self):
        with pytest.raises(ConfigError, match="C_beta must be positive"):
            parse_config("case=advection\nscheme=es4\nC_beta=-1")

    def test_missing_required_keys(self):
        with pytest.raises(ConfigError, match="case"):
            parse_config("scheme=es4")
        with pytest.raises(ConfigError, match="scheme"):
            parse_config("case=blast")

    def test_snapshots_flag(self):
        cfg = parse_config("case=blast\nscheme=es4\nsnapshots=false")
        assert cfg.snapshots is False
        with pytest.raises(ConfigError, match="boolean"):
            parse_config("case=blast\nscheme=es4\nsnapshots=maybe")


class TestFieldFiles:
    def test_1d_roundtrip_is_bit_faithful(self, tmp_path):
        rng = np.random.default_rng(0)
        x = np.linspace(-1.0, 1.0, 17)
        cols = {"rho": rng.random(17), "u": rng.standard_normal(17),
                "p": rng.random(17) * np.pi}
        path = tmp_path / "field.csv"
        write_field_1d(path, x, cols)
        names, data = read_field(path)
        assert names == ["x", "rho", "u", "p"]
        assert np.array_equal(data["x"], x)
        for name, col in cols.items():
            assert np.array_equal(data[name], col)

    def test_2d_layout(self, tmp_path):
        x = np.array([0.25, 0.75])
        y = np.array([0.5])
        rho = np.array([[1.0], [2.0]])
        path = tmp_path / "field2d.csv"
        write_field_2d(path, x, y, {"rho": rho})
        names, data = read_field(path)
        assert names == ["x", "y", "rho"]
        assert list(data["x"]) == [0.25, 0.75]
        assert list(data["rho"]) == [1.0, 2.0]


class TestRun:
    def test_advection_run_writes_artifacts(self, tmp_path):
        cfg = parse_config("case=advection\nscheme=es4\nN=40")
        code, manifest = run(cfg, out_dir=tmp_path)
        assert code == 0
        assert manifest["completed"] is True
        assert manifest["linf_error"] < 0.1
        assert (tmp_path / "advection_es4.csv").exists()
        text = (tmp_path / "advection_es4.manifest.txt").read_text()
        assert "N=40" in text
        assert "C_alpha=1.3" in text

    def test_determinism(self, tmp_path):
        cfg = parse_config("case=advection\nscheme=z\nN=20")
        run(cfg, out_dir=tmp_path / "a")
        run(cfg, out_dir=tmp_path / "b")
        assert (tmp_path / "a" / "advection_z.csv").read_bytes() == \
            (tmp_path / "b" / "advection_z.csv").read_bytes()

    def test_failed_run_reports_and_exits_nonzero(self, tmp_path):
        cfg = parse_config("case=blast\nscheme=es4\ndt=0.005")
        code, manifest = run(cfg, out_dir=tmp_path)
        assert code == 1
        assert manifest["completed"] is False
        report = (tmp_path / "blast_es4.failure.txt").read_text()
        assert "step:" in report


class TestCompare:
    def _write(self, path, x, rho):
        write_field_1d(path, x, {"rho": rho})

    def test_identity(self, tmp_path):
        x = np.linspace(0.0, 1.0, 11)
        rho = 1.0 + 0.5 * np.sin(x)
        self._write(tmp_path / "a.csv", x, rho)
        l2, metrics = compare_to_reference(tmp_path / "a.csv",
                                           tmp_path / "a.csv",
                                           windows=[(0.2, 0.8)])
        assert l2 == 0.0
        m = metrics[(0.2, 0.8)]
        assert m["field"] == m["reference"]

    def test_grid_mismatch_requires_interpolation(self, tmp_path):
        xa = np.linspace(0.0, 1.0, 11)
        xb = np.linspace(0.0, 1.0, 21)
        self._write(tmp_path / "a.csv", xa, np.sin(xa))
        self._write(tmp_path / "b.csv", xb, np.sin(xb))
        with pytest.raises(ConfigError, match="interpolate"):
            compare_to_reference(tmp_path / "a.csv", tmp_path / "b.csv")
        l2, _ = compare_to_reference(tmp_path / "a.csv", tmp_path / "b.csv",
                                     interpolate=True)
        assert l2 < 1e-3


class TestCli:
    def test_run_exit_codes(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("case=advection\nscheme=es4\nN=20\n")
        assert cli.main(["run", str(cfg), "--out", str(tmp_path)]) == 0

    def test_config_error_is_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("case=advection\nscheme=es4\nC_alpha=-2\n")
        assert cli.main(["run", str(cfg), "--out", str(tmp_path)]) == 2
        assert "config error" in capsys.readouterr().err

    def test_missing_config_file_is_exit_2(self, tmp_path):
        assert cli.main(["run", str(tmp_path / "absent.cfg")]) == 2

    def test_solver_failure_is_exit_1(self, tmp_path):
        cfg = tmp_path / "fail.cfg"
        cfg.write_text("case=blast\nscheme=es4\ndt=0.005\n")
        assert cli.main(["run", str(cfg), "--out", str(tmp_path)]) == 1

    def test_convergence_subcommand(self, tmp_path, capsys):
        assert cli.main(["convergence", "es4", "--n-list", "10,20",
                         "--out", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("N dt error order")
        assert (tmp_path / "convergence_es4.txt").exists()

    def test_compare_subcommand(self, tmp_path, capsys):
        x = np.linspace(0.0, 1.0, 5)
        write_field_1d(tmp_path / "a.csv", x, {"rho": np.ones(5)})
        assert cli.main(["compare", str(tmp_path / "a.csv"),
                         str(tmp_path / "a.csv"),
                         "--window", "0.2:0.8"]) == 0
        out = capsys.readouterr().out
        assert "l2_rho=0" in out

    def test_compare_bad_window_is_exit_2(self, tmp_path):
        x = np.linspace(0.0, 1.0, 5)
        write_field_1d(tmp_path / "a.csv", x, {"rho": np.ones(5)})
        assert cli.main(["compare", str(tmp_path / "a.csv"),
                         str(tmp_path / "a.csv"), "--window", "oops"]) == 2

    def test_output_env_var(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv(cli.OUT_ENV, str(tmp_path))
        assert cli.main(["convergence", "js", "--n-list", "10,20"]) == 0
        assert (tmp_path / "convergence_js.txt").exists()
