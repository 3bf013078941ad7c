import csv
import json
import subprocess
import sys

import pytest

from graphrips.cli import main


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_window_gh_from_numbers(capsys):
    code, out, _ = run_cli(capsys, "window", "--mode", "gh", "--rho", 3, "--dgh", 0.125)
    assert code == 0
    w = json.loads(out)
    assert (w["lower"], w["upper"], w["feasible"]) == (0.375, 2.25, True)


def test_window_gh_from_graph(capsys, scenarios_dir):
    code, out, _ = run_cli(capsys, "window", "--graph", scenarios_dir / "theta.graph", "--spacing", 0.25)
    assert json.loads(out)["upper"] == 1.5


def test_window_h(capsys):
    code, out, _ = run_cli(capsys, "window", "--mode", "h", "--rho", 1, "--delta", 2, "--eps", 1e-4)
    w = json.loads(out)
    assert w["lower"] == pytest.approx(0.0422, rel=1e-12)
    assert w["lower_inclusive"] is True


def test_file_pipeline(capsys, tmp_path, scenarios_dir):
    samples, matrix, cx = tmp_path / "s.csv", tmp_path / "m.csv", tmp_path / "k.txt"
    code, out, _ = run_cli(capsys, "sample", "--graph", scenarios_dir / "square.graph", "--spacing", 0.02,
                           "--noise", 0.002, "--seed", 4, "--output", samples, "--output-dir", tmp_path)
    assert code == 0 and out.startswith("200 points")
    assert (tmp_path / "sample.svg").exists()
    assert run_cli(capsys, "path-metric", "--input", samples, "--eps", 0.05, "--output", matrix)[0] == 0
    code, out, _ = run_cli(capsys, "rips", "--input", matrix, "--beta", 0.3, "--max-dim", 2, "--output", cx)
    assert code == 0 and out.startswith("200,")
    code, out, _ = run_cli(capsys, "homology", "--input", cx)
    assert out.strip() == "1,1"
    code, out, _ = run_cli(capsys, "homology", "--input", cx, "--up-to", 2)
    assert code == 2  # truncated complex cannot certify b_2


def test_abstract_sample(capsys, tmp_path, scenarios_dir):
    code, out, _ = run_cli(capsys, "sample", "--graph", scenarios_dir / "cycle12.graph", "--spacing", 1.0,
                           "--output", tmp_path / "s.csv")
    assert out.startswith("12 points")
    rows = list(csv.reader(open(tmp_path / "s.csv")))
    assert rows[0] == ["edge", "offset"] and len(rows) == 13


def test_run_writes_report_and_figures(capsys, tmp_path, scenarios_dir):
    code, out, _ = run_cli(capsys, "run", "--scenario", scenarios_dir / "square_h.yaml", "--output-dir", tmp_path,
                           "--max-dim", 1)
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] == "recovered" and rep["betti"] == [1, 1]
    assert json.loads((tmp_path / "report.json").read_text())["betti"] == [1, 1]
    assert (tmp_path / "window.svg").exists() and (tmp_path / "sample.svg").exists()


def test_run_seed_override(capsys, tmp_path, scenarios_dir):
    code, out, _ = run_cli(capsys, "run", "--scenario", scenarios_dir / "cycle_gh.yaml", "--seed", 9)
    assert json.loads(out)["scenario"]["sampling"]["seed"] == 9


def test_sweep_prints_csv(capsys, tmp_path, scenarios_dir):
    code, out, _ = run_cli(capsys, "sweep", "--scenario", scenarios_dir / "cycle_gh.yaml", "--beta", "0.5,1.0,2.0",
                           "--output-dir", tmp_path)
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == "eps,beta,b0,b1,b2,verdict,complex_edges,complex_triangles,ms_total".split(",")
    assert [r[5] for r in rows[1:]] == ["recovered"] * 3
    assert (tmp_path / "verdicts.svg").exists()


def test_sweep_linspace_and_errors(capsys, tmp_path, scenarios_dir):
    code, out, _ = run_cli(capsys, "sweep", "--scenario", scenarios_dir / "cycle_gh.yaml", "--beta", "0.5:1.5:3",
                           "--output-dir", tmp_path)
    assert len(out.strip().splitlines()) == 4
    code, _, err = run_cli(capsys, "sweep", "--scenario", scenarios_dir / "cycle_gh.yaml", "--beta", "",
                           "--output-dir", tmp_path)
    assert code == 2 and "beta" in err


def test_module_entry_point(scenarios_dir):
    proc = subprocess.run([sys.executable, "-m", "graphrips", "window", "--rho", "1", "--dgh", "1"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["feasible"] is False
