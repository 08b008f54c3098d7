"""End-to-end command line checks using real (small) runs."""

import csv
import math
import pathlib

import pytest

from anwiretap import cli

GOLDEN = pathlib.Path(__file__).parent / "golden" / "fig2_analytic.csv"


def _config(tmp_path, body):
    path = tmp_path / "exp.toml"
    path.write_text(body)
    return str(path)


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _base(tmp_path, extra="", system=None):
    system = system or "n_a = 16\nn_b = 8\nn_e = 12\nalpha = 100.0\nbeta = 1.0\ngamma = 1.0"
    return _config(tmp_path, f"""
[system]
{system}

[run]
mode = "an-ane"
trials = 40
seed = 11

[output]
csv_path = "{tmp_path / 'out.csv'}"
{extra}
""")


def test_run_sweep_success(tmp_path, capsys):
    cfg = _config(tmp_path, f"""
[system]
n_a = 16
n_b = 8
n_e = 9
alpha_db = 20.0
beta = 1.0
gamma = 1.0

[run]
mode = "an-ane"
trials = 40
seed = 11

[sweep]
vary = "n_e"
values = [9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23]

[output]
csv_path = "{tmp_path / 'sweep.csv'}"
include_approx = true
""")
    assert cli.main(["run", cfg]) == 0
    out = capsys.readouterr()
    assert "wrote 15 rows" in out.out
    rows = _read_csv(tmp_path / "sweep.csv")
    assert len(rows) == 15
    assert list(rows[0]) == ["sweep_value", "mc_mean", "mc_stderr",
                             "mc_rb", "mc_re", "analytic", "approx", "error"]
    for row in rows:
        assert row["error"] == ""
        for field in ("sweep_value", "mc_mean", "mc_stderr", "mc_rb",
                      "mc_re", "analytic", "approx"):
            assert math.isfinite(float(row[field]))
    # frozen analytic curve for this exact sweep
    with open(GOLDEN, newline="") as fh:
        golden = {float(r["n_e"]): float(r["analytic"])
                  for r in csv.DictReader(fh)}
    for row in rows:
        want = golden[float(row["sweep_value"])]
        assert float(row["analytic"]) == pytest.approx(want, rel=1e-9,
                                                       abs=1e-12)


def test_run_single_point(tmp_path):
    cfg = _base(tmp_path)
    assert cli.main(["run", cfg]) == 0
    rows = _read_csv(tmp_path / "out.csv")
    assert len(rows) == 1
    assert rows[0]["sweep_value"] == ""
    assert float(rows[0]["mc_mean"]) > 0.0
    assert "approx" not in rows[0] and "asymptotic" not in rows[0]


def test_run_rejects_bad_geometry(tmp_path, capsys):
    cfg = _base(tmp_path,
                system="n_a = 8\nn_b = 8\nn_e = 4\nalpha = 1.0\n"
                       "beta = 1.0\ngamma = 1.0")
    assert cli.main(["run", cfg]) == 1
    err = capsys.readouterr().err
    assert "config error" in err and "n_a" in err
    assert not (tmp_path / "out.csv").exists()


def test_run_bad_sweep_point_exits_2(tmp_path, capsys):
    cfg = _base(tmp_path, extra="""
[sweep]
vary = "n_e"
values = [12, 0, 13]
""")
    assert cli.main(["run", cfg]) == 2
    err = capsys.readouterr().err
    assert "run failed" in err and "n_e" in err
    rows = _read_csv(tmp_path / "out.csv")
    assert len(rows) == 3  # every row written, failure flagged in place
    assert rows[1]["error"] != "" and rows[1]["mc_mean"] == ""
    assert rows[0]["error"] == "" and rows[2]["error"] == ""


def test_run_quadrature_failure_exits_2(tmp_path, capsys):
    cfg = _base(tmp_path,
                system="n_a = 16\nn_b = 8\nn_e = 4\nalpha = 100.0\n"
                       "beta = 1.0\ngamma = 1.0",
                extra="""
[quadrature]
nodes_per_dim = 8
refinement_tolerance = 1e-15
""")
    assert cli.main(["run", cfg]) == 2
    assert "quadrature stage" in capsys.readouterr().err
    rows = _read_csv(tmp_path / "out.csv")
    assert float(rows[0]["mc_mean"]) > 0.0  # simulation still ran
    assert rows[0]["analytic"] == ""


def test_dump_config_round_trip(tmp_path, capsys):
    cfg = _base(tmp_path)
    assert cli.main(["run", cfg, "--dump-config"]) == 0
    dumped = capsys.readouterr().out
    assert "[system]" in dumped and "alpha = 100.0" in dumped
    assert not (tmp_path / "out.csv").exists()
    echo = tmp_path / "echo.toml"
    echo.write_text(dumped.replace(f'"{tmp_path / "out.csv"}"',
                                   f'"{tmp_path / "out2.csv"}"'))
    assert cli.main(["run", str(echo), "--dump-config"]) == 0


def test_figure_unknown_id(capsys):
    assert cli.main(["figure", "fig1"]) == 1
    err = capsys.readouterr().err
    assert "unknown figure id" in err and "fig2" in err


def test_figure_writes_csv(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert cli.main(["figure", "fig9", "--out", "f9.csv"]) == 0
    rows = _read_csv(tmp_path / "f9.csv")
    assert rows and list(rows[0]) == ["curve", "sweep_value", "asymptotic"]


def test_figure_default_output_name(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert cli.main(["figure", "fig9"]) == 0
    assert (tmp_path / "fig9_desk.csv").exists()
