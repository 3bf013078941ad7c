"""Command line interface: ``graphrips <subcommand> ...``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import io as gio
from .embedded_graph import EmbeddedMetricGraph, distortion, hausdorff_sample
from .homology import betti_numbers
from .metric_graph import finite_convexity_radius, sample_uniform
from .path_metric import path_metric
from .scales import gh_window, h_window
from .simplicial import rips_complex


def _floats(text: str) -> list[float]:
    """Comma list ``0.1,0.2`` or linspace ``start:stop:count``."""
    if ":" in text:
        a, b, n = text.split(":")
        return [float(x) for x in np.linspace(float(a), float(b), int(n))]
    return [float(x) for x in text.split(",") if x.strip()]


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_window(args) -> int:
    if args.mode == "gh":
        if args.graph:
            G = gio.read_graph(args.graph)
            base = G.base if isinstance(G, EmbeddedMetricGraph) else G
            rho = finite_convexity_radius(base)
            bound = args.dgh if args.dgh is not None else sample_uniform(base, args.spacing)[1]
        else:
            rho, bound = args.rho, args.dgh
        if rho is None or bound is None:
            raise SystemExit("window gh needs --rho and --dgh, or --graph with --spacing/--dgh")
        w = gh_window(rho, bound)
    else:
        rho, delta = args.rho, args.delta
        if args.graph:
            G = gio.read_graph(args.graph)
            if not isinstance(G, EmbeddedMetricGraph):
                raise SystemExit("window h needs an embedded graph")
            rho = finite_convexity_radius(G.base) if rho is None else rho
            if delta is None:
                delta = distortion(G, args.resolution or G.base.total_length / 400.0)[0]
        if rho is None or delta is None or args.eps is None:
            raise SystemExit("window h needs --rho, --delta and --eps (or --graph)")
        w = h_window(rho, delta, args.eps)
    _print_json(w.to_dict())
    return 0


def cmd_sample(args) -> int:
    G = gio.read_graph(args.graph)
    if isinstance(G, EmbeddedMetricGraph):
        S = hausdorff_sample(G, args.spacing, args.noise, args.seed)
        gio.write_samples(S, args.output)
        print(f"{len(S)} points, hausdorff bound {S.hausdorff_bound!r}")
        if args.output_dir:
            from .harness.plotting import sample_figure

            Path(args.output_dir).mkdir(parents=True, exist_ok=True)
            sample_figure(G, S.points, Path(args.output_dir) / "sample.svg")
    else:
        pts, bound = sample_uniform(G, args.spacing)
        gio.write_samples(pts, args.output)
        print(f"{len(pts)} points, gromov-hausdorff bound {bound!r}")
    return 0


def cmd_path_metric(args) -> int:
    S = gio.read_samples(args.input)
    if not hasattr(S, "points"):
        raise SystemExit("path-metric needs a Euclidean sample file (x1,...,xd columns)")
    m = path_metric(S, args.eps)
    gio.write_matrix(m, args.output)
    finite = np.isfinite(m.d)
    print(f"{m.n} points, {int((~finite).sum()) // 2} unreachable pairs")
    return 0


def cmd_rips(args) -> int:
    m = gio.read_matrix(args.input)
    K = rips_complex(m, args.beta, args.max_dim, closed=args.closed)
    gio.write_complex(K, args.output)
    print(",".join(str(c) for c in K.counts()))
    return 0


def cmd_homology(args) -> int:
    K = gio.read_complex(args.input)
    print(betti_numbers(K, args.up_to).to_csv())
    return 0


def _scenario(args):
    from .harness import load_scenario

    s = load_scenario(args.scenario)
    if args.seed is not None:
        s = dataclasses.replace(s, sampling=dataclasses.replace(s.sampling, seed=args.seed))
    if args.max_dim is not None:
        s = dataclasses.replace(s, homology_dim=args.max_dim)
    out = args.output_dir or s.output_dir
    return s, (Path(out) if out else None)


def cmd_run(args) -> int:
    from .harness import MatrixCache, run
    from .harness.plotting import sample_figure, window_figure
    from .scales import ScaleWindow

    s, out = _scenario(args)
    cache = MatrixCache(out / "cache") if out else None
    report = run(s, cache)
    text = report.to_json()
    if out:
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(text)
        if report.window:
            w = report.window
            window_figure(
                ScaleWindow(w["lower"], w["upper"], w["lower_inclusive"], w["upper_inclusive"]),
                report.beta,
                out / "window.svg",
            )
        if s.mode == "h" and report.sample_size:
            G = gio.read_graph(s.graph)
            S = hausdorff_sample(G, report.scenario["sampling"]["spacing"] or report.plan["spacing"],
                                 s.sampling.noise, s.sampling.seed)
            sample_figure(G, S.points, out / "sample.svg")
    sys.stdout.write(text)
    return 0 if report.verdict in ("recovered", "window-infeasible", "budget-exceeded") else 1


def cmd_sweep(args) -> int:
    from .harness import sweep

    s, out = _scenario(args)
    if out is None:
        raise SystemExit("sweep needs --output-dir (or output_dir in the scenario)")
    _, rows = sweep(s, _floats(args.eps) if args.eps else None, _floats(args.beta), out, jobs=args.jobs)
    sys.stdout.write((out / "summary.csv").read_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphrips", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("window", help="print the admissible scale window as JSON")
    w.add_argument("--mode", choices=["gh", "h"], default="gh")
    w.add_argument("--graph", help="graph file; rho (and delta) are computed from it")
    w.add_argument("--rho", type=float)
    w.add_argument("--dgh", type=float, help="Gromov-Hausdorff bound (gh mode)")
    w.add_argument("--spacing", type=float, help="uniform sample spacing; bound = spacing / 2")
    w.add_argument("--delta", type=float, help="distortion of the embedding (h mode)")
    w.add_argument("--eps", type=float, help="path-metric eps (h mode)")
    w.add_argument("--resolution", type=float, help="probe resolution for the distortion estimate")
    w.set_defaults(func=cmd_window)

    s = sub.add_parser("sample", help="sample a graph file")
    s.add_argument("--graph", required=True)
    s.add_argument("--spacing", type=float, required=True)
    s.add_argument("--noise", type=float, default=0.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", required=True)
    s.add_argument("--output-dir", help="also write sample.svg here (embedded graphs)")
    s.set_defaults(func=cmd_sample)

    m = sub.add_parser("path-metric", help="epsilon-path distance matrix of a sample")
    m.add_argument("--input", required=True)
    m.add_argument("--eps", type=float, required=True)
    m.add_argument("--output", required=True)
    m.set_defaults(func=cmd_path_metric)

    r = sub.add_parser("rips", help="Rips complex of a distance matrix")
    r.add_argument("--input", required=True)
    r.add_argument("--beta", type=float, required=True)
    r.add_argument("--max-dim", type=int, default=3)
    r.add_argument("--closed", action="store_true", help="use diameter <= beta instead of < beta")
    r.add_argument("--output", required=True)
    r.set_defaults(func=cmd_rips)

    h = sub.add_parser("homology", help="Betti numbers of a complex file as a CSV row")
    h.add_argument("--input", required=True)
    h.add_argument("--up-to", type=int)
    h.set_defaults(func=cmd_homology)

    for name, func, helptext in (("run", cmd_run, "run one scenario"), ("sweep", cmd_sweep, "sweep eps/beta")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("--scenario", required=True)
        q.add_argument("--output-dir")
        q.add_argument("--seed", type=int)
        q.add_argument("--max-dim", type=int, help="homology dimension cap (complex is built one higher)")
        if name == "sweep":
            q.add_argument("--beta", required=True, help="comma list or start:stop:count")
            q.add_argument("--eps", help="comma list or start:stop:count (mode h)")
            q.add_argument("--jobs", type=int, default=1)
        q.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"graphrips: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
