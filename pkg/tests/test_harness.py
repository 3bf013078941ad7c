import csv
import dataclasses
import json

import numpy as np
import pytest

from graphrips.harness import MatrixCache, Scenario, load_scenario, run, sweep
from graphrips.harness.scenario import Sampling, ScalePolicy
from graphrips.harness.sweep import SUMMARY_HEADER
from graphrips.scales import h_window


def scenario(scenarios_dir, name, **changes):
    s = load_scenario(scenarios_dir / name)
    return dataclasses.replace(s, **changes)


def test_cycle_gh_recovers(scenarios_dir):
    rep = run(scenario(scenarios_dir, "cycle_gh.yaml"))
    assert rep.verdict == "recovered"
    assert rep.betti == [1, 1, 0]
    assert rep.rho == 3.0
    assert (rep.window["lower"], rep.window["upper"]) == (0.375, 2.25)
    assert rep.window["lower"] < rep.beta < rep.window["upper"]
    assert rep.hypotheses == {"3*d_gh < beta < 3*rho/4": True}


def test_theta_gh_recovers(scenarios_dir):
    rep = run(scenario(scenarios_dir, "theta_gh.yaml"))
    assert rep.verdict == "recovered"
    assert rep.betti == [1, 2, 0]
    assert rep.expected_betti == [1, 2, 0]


def test_coarse_sample_is_window_infeasible(scenarios_dir):
    s = scenario(scenarios_dir, "cycle_gh.yaml", sampling=Sampling(spacing=2.0))
    rep = run(s)
    assert rep.verdict == "window-infeasible"
    assert rep.betti is None


def test_square_explicit_recovers(scenarios_dir):
    rep = run(scenario(scenarios_dir, "square_h.yaml"))
    assert rep.sample_size == 400
    assert rep.verdict == "recovered"
    assert rep.betti == [1, 1, 0]
    assert rep.hypotheses["4*d_h < eps"]
    # the strict window is empty at this eps, so this is an empirical run
    assert not rep.hypotheses["beta in window"]
    assert not rep.window["feasible"]


def test_hypothesis_violation_is_flagged(scenarios_dir):
    s = scenario(scenarios_dir, "square_h.yaml", sampling=Sampling(spacing=0.01, noise=0.005, seed=1))
    s = s.with_scales(0.02, 0.3)  # 4 * (0.005 + 0.005) = 0.04 > 0.02
    rep = run(s)
    assert rep.hypotheses["4*d_h < eps"] is False
    assert any("hypothesis violated" in n for n in rep.notes)
    assert rep.betti is not None


def test_window_policy_reports_density_plan(scenarios_dir):
    rep = run(scenario(scenarios_dir, "square_h_window.yaml"))
    assert rep.verdict == "budget-exceeded"
    assert rep.plan["point_count"] == pytest.approx(11258, rel=1e-3)
    assert rep.plan["estimated_complex"]["triangles"] > 1e9
    assert rep.window["feasible"]
    assert rep.beta in h_window(rep.rho, rep.delta, rep.eps)
    assert any("budget" in n for n in rep.notes)


def test_run_is_deterministic(scenarios_dir):
    s = scenario(scenarios_dir, "square_h.yaml", sampling=Sampling(spacing=0.02, noise=0.003, seed=11))
    s = s.with_scales(0.05, 0.3)
    a = run(s).to_json(timings=False)
    b = run(s).to_json(timings=False)
    assert a == b
    other = run(dataclasses.replace(s, sampling=Sampling(spacing=0.02, noise=0.003, seed=12)))
    assert json.loads(other.to_json(timings=False))["scenario"]["sampling"]["seed"] == 12


def test_cache_is_bit_identical(tmp_path, scenarios_dir):
    s = scenario(scenarios_dir, "square_h.yaml", sampling=Sampling(spacing=0.02))
    cache = MatrixCache(tmp_path / "cache")
    first = run(s, cache)
    files = sorted((tmp_path / "cache").glob("*.npy"))
    assert len(files) == 1
    saved = np.load(files[0])
    second = run(s, cache)
    assert cache.hits == 1
    assert first.to_json(timings=False) == second.to_json(timings=False)
    from graphrips.embedded_graph import hausdorff_sample
    from graphrips.io import read_graph
    from graphrips.path_metric import path_metric

    S = hausdorff_sample(read_graph(s.graph), 0.02)
    assert np.array_equal(saved, path_metric(S, 0.05).d)


def test_beta_sweep_recovers_on_an_interval_containing_the_window(tmp_path, scenarios_dir):
    s = scenario(scenarios_dir, "cycle_gh.yaml")
    betas = list(np.linspace(0.1, 6.5, 33))
    reports, rows = sweep(s, None, betas, tmp_path)
    ok = [r["verdict"] == "recovered" for r in rows]
    idx = [i for i, v in enumerate(ok) if v]
    assert idx == list(range(idx[0], idx[-1] + 1))
    window = reports[0].window
    for r in rows:
        if window["lower"] < r["beta"] < window["upper"]:
            assert r["verdict"] == "recovered"
    assert rows[idx[0]]["beta"] <= window["lower"] + 0.2
    with open(tmp_path / "summary.csv") as fh:
        table = list(csv.reader(fh))
    assert table[0] == SUMMARY_HEADER
    assert len(table) == len(betas) + 1
    assert (tmp_path / "verdicts.svg").read_text().startswith("<?xml")
    assert len(list(tmp_path.glob("report_*.json"))) == len(betas)


def test_eps_sweep_is_monotone(tmp_path, scenarios_dir):
    s = scenario(scenarios_dir, "square_h.yaml", sampling=Sampling(spacing=0.02))
    eps_values = [0.01, 0.019, 0.021, 0.03, 0.05]
    _, rows = sweep(s, eps_values, [0.3], tmp_path)
    b0 = [r["b0"] for r in rows]
    assert b0 == sorted(b0, reverse=True)
    assert b0[0] == 200
    ok = [r["verdict"] == "recovered" for r in rows]
    first = ok.index(True)
    assert all(ok[first:]) and not any(ok[:first])
    assert (tmp_path / "verdicts.svg").exists()


def test_sweep_rejects_bad_grids(scenarios_dir):
    s = scenario(scenarios_dir, "cycle_gh.yaml")
    with pytest.raises(ValueError):
        sweep(s, None, [])
    with pytest.raises(ValueError):
        sweep(s, [0.1], [1.0])


def test_sweep_row_errors_do_not_abort(tmp_path, scenarios_dir):
    s = scenario(scenarios_dir, "cycle_gh.yaml", graph=str(tmp_path / "missing.graph"))
    _, rows = sweep(s, None, [1.0], tmp_path, figure=False)
    assert rows[0]["verdict"].startswith("error")


def test_scenario_validation(scenarios_dir, tmp_path):
    with pytest.raises(ValueError):
        Scenario(graph="g", mode="x", sampling=Sampling(spacing=1.0))
    with pytest.raises(ValueError):
        Scenario(graph="g", sampling=Sampling(spacing=1.0), scale=ScalePolicy(policy="explicit"))
    with pytest.raises(ValueError):
        Scenario(graph="g")
    with pytest.raises(ValueError):
        Scenario.from_dict({"graph": "g", "colour": 1})
    data = load_scenario(scenarios_dir / "cycle_gh.yaml").to_dict()
    (tmp_path / "s.json").write_text(json.dumps(data))
    assert load_scenario(tmp_path / "s.json") == load_scenario(scenarios_dir / "cycle_gh.yaml")


@pytest.mark.parametrize("name,spacing", [("cycle_gh.yaml", 0.25), ("cycle_gh.yaml", 0.4), ("theta_gh.yaml", 0.2), ("theta_gh.yaml", 0.3)])
@pytest.mark.parametrize("position", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_window_runs_with_valid_hypotheses_recover(scenarios_dir, name, spacing, position):
    s = scenario(scenarios_dir, name, sampling=Sampling(spacing=spacing),
                 scale=ScalePolicy(policy="window", position=position, safety=0.98))
    rep = run(s)
    assert all(rep.hypotheses.values())
    assert rep.verdict == "recovered"
