"""Command-line runner: exit codes, report bodies, config files."""

import csv
import io
import json

import pytest

from tplab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_lists_six_entries(capsys):
    code, out, _ = run_cli(capsys, "catalog")
    rep = json.loads(out)
    assert code == 0
    assert len(rep["results"]["entries"]) == 6
    assert rep["results"]["negative_controls"][0]["name"] == "indicator"
    assert set(rep) == {"command", "config", "config_hash", "version", "subject", "results", "verdict"}


def test_catalog_csv(capsys):
    code, out, _ = run_cli(capsys, "catalog", "--output", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["name", "support", "strip", "transform_reciprocal"] and len(rows) == 7


def test_tp_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "tp", "--subject", "gaussian", "--max-order", "3", "--trials", "20", "--seed", "7")
    assert code == 0 and json.loads(out)["verdict"] == "no-certified-violation"
    code, out, _ = run_cli(capsys, "tp", "--subject", "indicator", "--max-order", "4", "--trials", "500", "--seed", "7")
    rep = json.loads(out)
    assert code == 1 and rep["verdict"] == "certified-violation"
    assert rep["results"]["seed"] == 7 and rep["config"]["seed"] == 7
    assert all("worst_grid" in o for o in rep["results"]["orders"])


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["tp", "--subject", "gaussian", "--max-order", "9"],
        ["tp", "--subject", "cauchy"],
        ["tp", "--subject", "gaussian", "--seed", "-1"],
        ["laplace", "--subject", "gumbel", "--s", "abc"],
        ["bochner", "--digits", "5"],
        ["catalog", "--config", "/nonexistent/file.cfg"],
    ],
)
def test_usage_errors_exit_3(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == 3 and err


def test_strip_violation_is_a_usage_error(capsys):
    code, _, err = run_cli(capsys, "laplace", "--subject", "logistic", "--s", "2")
    assert code == 3 and "strip" in err


def test_laplace_report(capsys):
    code, out, _ = run_cli(capsys, "laplace", "--subject", "gumbel", "--s", "1", "--digits", "30")
    rep = json.loads(out)
    assert code == 0
    assert abs(float(rep["results"]["value"]["center"]) - 1) < 1e-15
    assert rep["config"]["digits"] == 30


def test_config_file_and_flag_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# battery settings\nsubject = gumbel\nmax-order = 2\ntrials = 5\nseed = 99\n")
    code, out, _ = run_cli(capsys, "tp", "--config", str(cfg))
    rep = json.loads(out)
    assert code == 0 and rep["subject"] == "gumbel" and rep["config"]["seed"] == 99
    code, out, _ = run_cli(capsys, "tp", "--config", str(cfg), "--seed", "3")
    assert json.loads(out)["config"]["seed"] == 3


def test_bad_config_line(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("subject gumbel\n")
    code, _, _ = run_cli(capsys, "tp", "--config", str(cfg))
    assert code == 3


def test_environment_sets_default_digits(capsys, monkeypatch):
    monkeypatch.setenv("TPLAB_DIGITS", "24")
    _, out, _ = run_cli(capsys, "laplace", "--subject", "gaussian", "--s", "0")
    assert json.loads(out)["config"]["digits"] == 24
    _, out, _ = run_cli(capsys, "laplace", "--subject", "gaussian", "--s", "0", "--digits", "31")
    assert json.loads(out)["config"]["digits"] == 31
    monkeypatch.setenv("TPLAB_DIGITS", "many")
    code, _, _ = run_cli(capsys, "catalog")
    assert code == 3


def test_reports_replay_byte_identical(capsys):
    argv = ["tp", "--subject", "logistic", "--max-order", "3", "--trials", "10", "--seed", "5"]
    first = run_cli(capsys, *argv)[1]
    second = run_cli(capsys, *argv, "--threads", "2")[1]
    assert first == second


def test_lambda_csv(capsys):
    code, out, _ = run_cli(capsys, "lambda", "--xmin", "0", "--xmax", "1/2", "--step", "1/4", "--digits", "20")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["x", "center", "radius"]
    assert [r[0] for r in rows[1:]] == ["0", "1/4", "1/2"]
    assert float(rows[1][1]) > float(rows[2][1]) > float(rows[3][1]) > 0


def test_lp_on_catalog_series(capsys):
    code, out, _ = run_cli(capsys, "lp", "--series", "catalog:one_sided_exp", "--n", "4", "--digits", "30")
    assert code == 0, out


def test_pipeline_and_vd(capsys):
    code, out, _ = run_cli(capsys, "pipeline", "--subject", "one_sided_exp", "--nmax", "4")
    assert code == 0 and json.loads(out)["results"]["verdict"] == "no-certified-violation"
    code, out, _ = run_cli(capsys, "vd", "--subject", "gaussian", "--trials", "10", "--degree", "4")
    rep = json.loads(out)
    assert code == 0 and rep["results"]["counts"]["holds"] == 10
