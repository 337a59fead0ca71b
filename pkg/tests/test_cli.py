"""Exit codes, file outputs, and console text of the four subcommands."""

import numpy as np
import pytest

import lyprobe.cli as cli

CSV_HEADER = "t,a_factor,coherence,concurrence_rescaled,xi2,xi2_prime"


def simulate_args(out, extra=()):
    return [
        "simulate",
        "--nb", "6",
        "--beta", "0.5",
        "--probes", "3",
        "--theta", "1.5707963267948966",
        "--channel", "I",
        "--t-max", "20.0",
        "--steps", "41",
        "--out", str(out),
        *extra,
    ]


class TestSimulate:
    def test_writes_series(self, tmp_path, capsys):
        out = tmp_path / "series.csv"
        assert cli.main(simulate_args(out)) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 42
        assert "wrote 41 rows" in capsys.readouterr().out

    def test_default_steps_resolve_grid(self, tmp_path):
        out = tmp_path / "auto.csv"
        argv = [a for a in simulate_args(out) if a not in ("--steps", "41")]
        assert cli.main(argv) == 0
        rows = np.genfromtxt(out, delimiter=",", names=True)
        assert rows.size > 41

    def test_first_row_identities(self, tmp_path):
        out = tmp_path / "series.csv"
        cli.main(simulate_args(out))
        first = np.genfromtxt(out, delimiter=",", names=True)[0]
        assert first["t"] == 0.0
        assert first["a_factor"] == pytest.approx(1.0, abs=1e-12)
        assert first["coherence"] == pytest.approx((np.sqrt(5.0) + 1.0) / 4.0, rel=1e-11)

    def test_validation_exit_code(self, tmp_path, capsys):
        out = tmp_path / "bad.csv"
        argv = simulate_args(out)
        argv[argv.index("--nb") + 1] = "2"
        assert cli.main(argv) == 1
        assert "at least 3" in capsys.readouterr().err

    def test_io_exit_code(self, tmp_path, capsys):
        out = tmp_path / "missing" / "series.csv"
        assert cli.main(simulate_args(out)) == 3
        assert "i/o error" in capsys.readouterr().err

    def test_numerical_exit_code(self, tmp_path, capsys, monkeypatch):
        def explode(_scenario):
            raise RuntimeError("synthetic numerical failure")

        monkeypatch.setattr(cli, "run_scenario", explode)
        assert cli.main(simulate_args(tmp_path / "x.csv")) == 2
        assert "numerical failure" in capsys.readouterr().err


class TestZeros:
    def test_writes_phases(self, tmp_path, capsys):
        out = tmp_path / "zeros.csv"
        argv = ["zeros", "--nb", "10", "--beta", "0.5", "--out", str(out)]
        assert cli.main(argv) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "phase,modulus_residual"
        assert len(lines) == 11
        data = np.genfromtxt(out, delimiter=",", names=True)
        assert np.all(np.diff(data["phase"]) > 0.0)
        assert data["modulus_residual"].max() < 1e-10
        assert "10 zero phases" in capsys.readouterr().out

    def test_validation_exit_code(self, tmp_path, capsys):
        argv = ["zeros", "--nb", "10", "--beta", "-1.0", "--out", str(tmp_path / "z.csv")]
        assert cli.main(argv) == 1
        assert "validation error" in capsys.readouterr().err


class TestVerify:
    def test_passes(self, capsys):
        assert cli.main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out
        assert "FAIL" not in out


class TestFitCmax:
    def test_reports_fit(self, capsys):
        argv = [
            "fit-cmax",
            "--theta", "1.5707963267948966",
            "--nb", "20",
            "--n-min", "3",
            "--n-max", "5",
        ]
        assert cli.main(argv) == 0
        out = capsys.readouterr().out
        assert "alpha=" in out
        assert "N=3: C_max=" in out

    def test_rejects_inverted_range(self, capsys):
        argv = ["fit-cmax", "--theta", "1.0", "--n-min", "6", "--n-max", "4"]
        assert cli.main(argv) == 1
        assert "exceeds" in capsys.readouterr().err


class TestParsing:
    def test_missing_subcommand(self, capsys):
        assert cli.main([]) == 1
        assert "usage" in capsys.readouterr().err

    def test_unknown_flag(self, tmp_path, capsys):
        assert cli.main(simulate_args(tmp_path / "x.csv", ["--bogus"])) == 1
        assert "error" in capsys.readouterr().err

    def test_bad_channel_choice(self, tmp_path, capsys):
        argv = simulate_args(tmp_path / "x.csv")
        argv[argv.index("--channel") + 1] = "III"
        assert cli.main(argv) == 1

    def test_help_exits_cleanly(self, capsys):
        assert cli.main(["--help"]) == 0
        assert "simulate" in capsys.readouterr().out
