"""End-to-end recovery runs: sample, metric, Rips complex, Betti certificate."""

from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..embedded_graph import EmbeddedMetricGraph, distortion, hausdorff_sample
from ..homology import betti_numbers
from ..io import read_graph
from ..metric_graph import MetricGraph, convexity_radius, finite_convexity_radius, first_betti, restriction_metric, sample_uniform
from ..path_metric import FiniteMetric, path_metric
from ..scales import gh_window, h_window, plan_density
from ..simplicial import rips_complex
from .scenario import Scenario

__all__ = ["RecoveryReport", "run", "run_gh_pipeline", "run_h_pipeline", "MatrixCache"]

RECOVERED = "recovered"
NOT_RECOVERED = "not-recovered"
INFEASIBLE = "window-infeasible"
OVER_BUDGET = "budget-exceeded"


@dataclass
class RecoveryReport:
    scenario: dict
    mode: str
    graph: dict
    rho: float | None = None
    delta: float | None = None
    delta_source: str | None = None
    sample_bound: float | None = None
    sample_size: int | None = None
    eps: float | None = None
    beta: float | None = None
    window: dict | None = None
    hypotheses: dict = field(default_factory=dict)
    plan: dict | None = None
    complex_sizes: list[int] | None = None
    betti: list[int] | None = None
    expected_betti: list[int] | None = None
    verdict: str = NOT_RECOVERED
    notes: list[str] = field(default_factory=list)
    timings_ms: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        if not timings:
            out.pop("timings_ms")
        return _jsonable(out)

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    @property
    def ms_total(self) -> float:
        return float(sum(self.timings_ms.values()))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x


class MatrixCache:
    """Distance matrices on disk keyed by a hash of everything they depend on."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.hits = 0

    @staticmethod
    def key(kind: str, points: np.ndarray, param: float | None) -> str:
        h = hashlib.sha256()
        h.update(kind.encode())
        h.update(np.ascontiguousarray(points, dtype=float).tobytes())
        h.update(repr(points.shape).encode())
        h.update(repr(param).encode())
        return h.hexdigest()[:32]

    def get_or_compute(self, key: str, compute) -> FiniteMetric:
        path = self.directory / f"{key}.npy"
        if path.exists():
            self.hits += 1
            return FiniteMetric(np.load(path), check=False)
        m = compute()
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".npy")
        os.close(fd)
        np.save(tmp, m.d)
        os.replace(tmp, path)
        return m


class _Timer:
    def __init__(self):
        self.stages: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.stages[name] = self.stages.get(name, 0.0) + (time.perf_counter() - t0) * 1e3


def _load(s: Scenario, timer: _Timer):
    with timer.stage("load"):
        G = read_graph(s.graph)
    base = G.base if isinstance(G, EmbeddedMetricGraph) else G
    info = {
        "vertices": base.vertex_count,
        "edges": len(base.edges),
        "total_length": base.total_length,
        "first_betti": first_betti(base),
        "embedded": isinstance(G, EmbeddedMetricGraph),
    }
    return G, base, info


def _expected(base: MetricGraph, cap: int) -> list[int]:
    return ([1, first_betti(base)] + [0] * cap)[: cap + 1]


def _certify(report: RecoveryReport, metric, beta: float, s: Scenario, timer: _Timer, base: MetricGraph) -> None:
    cap = s.homology_dim
    with timer.stage("rips"):
        K = rips_complex(metric, beta, max_dim=cap + 1, closed=s.closed)
    with timer.stage("homology"):
        betti = betti_numbers(K, cap)
    report.complex_sizes = K.counts()
    report.betti = list(betti)
    report.expected_betti = _expected(base, cap)
    report.verdict = RECOVERED if report.betti == report.expected_betti else NOT_RECOVERED
    report.notes.append(f"complex built to dimension {cap + 1}, so b_{cap} is exact")


def run_gh_pipeline(s: Scenario, cache: MatrixCache | None = None) -> RecoveryReport:
    """Abstract pipeline: restriction metric of a uniform sample, Rips at beta in (3 d_GH, 3 rho / 4)."""
    if s.mode != "gh":
        raise ValueError("run_gh_pipeline needs mode 'gh'")
    timer = _Timer()
    G, base, info = _load(s, timer)
    report = RecoveryReport(scenario=s.to_dict(), mode="gh", graph=info)
    with timer.stage("convexity"):
        rho_raw = convexity_radius(base)
        rho = finite_convexity_radius(base)
    if not math.isfinite(rho_raw):
        report.notes.append("graph is a tree; convexity radius capped at the graph diameter")
    report.rho = rho
    with timer.stage("sample"):
        points, bound = sample_uniform(base, s.sampling.spacing)
    report.sample_bound = bound
    report.sample_size = len(points)
    window = gh_window(rho, bound)
    report.window = window.to_dict()
    if s.scale.policy == "window":
        if not window.feasible:
            report.verdict = INFEASIBLE
            report.timings_ms = timer.stages
            return report
        beta = window.at(s.scale.position, s.scale.safety)
    else:
        beta = float(s.scale.beta)
    report.beta = beta
    report.hypotheses = {"3*d_gh < beta < 3*rho/4": beta in window}
    with timer.stage("metric"):
        coords = np.array([(p.edge, p.offset) for p in points], dtype=float)
        compute = lambda: restriction_metric(base, points)  # noqa: E731
        if cache is None:
            metric = compute()
        else:
            metric = cache.get_or_compute(MatrixCache.key("restriction:" + _graph_key(base), coords, None), compute)
    _certify(report, metric, beta, s, timer, base)
    report.timings_ms = timer.stages
    return report


def _graph_key(base: MetricGraph) -> str:
    return repr((base.vertex_count, base.edges))


def _estimate_complex(point_count: int, spacing: float, beta: float) -> dict:
    # neighbours per side along a curve sampled at this spacing
    k = int(beta / spacing)
    return {
        "neighbours_per_side": k,
        "edges": point_count * k,
        "triangles": point_count * k * (k - 1) // 2,
    }


def run_h_pipeline(s: Scenario, cache: MatrixCache | None = None) -> RecoveryReport:
    """Embedded pipeline: Hausdorff sample, epsilon-path metric, Rips at beta."""
    if s.mode != "h":
        raise ValueError("run_h_pipeline needs mode 'h'")
    timer = _Timer()
    G, base, info = _load(s, timer)
    if not isinstance(G, EmbeddedMetricGraph):
        raise ValueError("mode 'h' needs an embedded graph (P lines)")
    report = RecoveryReport(scenario=s.to_dict(), mode="h", graph=info)
    with timer.stage("convexity"):
        rho = finite_convexity_radius(base)
    report.rho = rho
    if s.delta is not None:
        delta = float(s.delta)
        report.delta_source = "scenario"
    else:
        resolution = s.distortion_resolution or base.total_length / 400.0
        with timer.stage("distortion"):
            delta, _ = distortion(G, resolution)
        report.delta_source = f"grid lower bound at resolution {resolution!r}"
    report.delta = delta

    spacing = s.sampling.spacing
    if s.scale.policy == "window":
        plan = plan_density(rho, delta, s.scale.safety, base.total_length)
        eps = plan.eps
        spacing = plan.spacing
        window = h_window(rho, delta, eps)
        report.plan = plan.to_dict()
        report.plan["estimated_complex"] = _estimate_complex(plan.point_count, plan.spacing, window.lower)
        report.window = window.to_dict()
        report.eps = eps
        if s.sampling.spacing is not None and s.sampling.spacing != spacing:
            report.notes.append("sampling spacing replaced by the density plan")
        if not window.feasible:
            report.verdict = INFEASIBLE
            report.timings_ms = timer.stages
            return report
        beta = window.at(s.scale.position, s.scale.safety)
        report.beta = beta
        if plan.point_count > s.point_budget:
            report.verdict = OVER_BUDGET
            report.notes.append(
                f"plan needs {plan.point_count} points (budget {s.point_budget}); "
                f"estimated {report.plan['estimated_complex']['triangles']} triangles; run skipped"
            )
            report.timings_ms = timer.stages
            return report
    else:
        eps = float(s.scale.eps)
        beta = float(s.scale.beta)
        window = h_window(rho, delta, eps)
        report.window = window.to_dict()
        report.eps, report.beta = eps, beta

    with timer.stage("sample"):
        S = hausdorff_sample(G, spacing, s.sampling.noise, s.sampling.seed)
    report.sample_bound = S.hausdorff_bound
    report.sample_size = len(S)
    report.hypotheses = {
        "4*d_h < eps": 4.0 * S.hausdorff_bound < eps,
        "eps < 2*rho/delta": eps < 2.0 * rho / delta,
        "beta in window": beta in window,
    }
    if not report.hypotheses["4*d_h < eps"]:
        report.notes.append("hypothesis violated: eps is not above 4 x the Hausdorff bound")
    with timer.stage("metric"):
        compute = lambda: path_metric(S, eps)  # noqa: E731
        if cache is None:
            metric = compute()
        else:
            metric = cache.get_or_compute(MatrixCache.key("eps-path", S.points, eps), compute)
    _certify(report, metric, beta, s, timer, base)
    report.timings_ms = timer.stages
    return report


def run(s: Scenario, cache: MatrixCache | None = None) -> RecoveryReport:
    return run_gh_pipeline(s, cache) if s.mode == "gh" else run_h_pipeline(s, cache)
