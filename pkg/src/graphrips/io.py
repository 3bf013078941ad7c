"""Text formats: graphs, sample sets, distance matrices, complexes, correspondences.

Floats are written in shortest round-trip form (``repr``), so read/write
cycles are bit-exact.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Sequence

import numpy as np

from .correspondence import Correspondence
from .embedded_graph import EmbeddedMetricGraph, SampleSet
from .metric_graph import GraphPoint, MetricGraph
from .path_metric import FiniteMetric
from .simplicial import SimplicialComplex

__all__ = [
    "format_graph",
    "parse_graph",
    "read_graph",
    "write_graph",
    "format_samples",
    "parse_samples",
    "read_samples",
    "write_samples",
    "format_matrix",
    "parse_matrix",
    "read_matrix",
    "write_matrix",
    "format_complex",
    "parse_complex",
    "read_complex",
    "write_complex",
    "read_correspondence",
    "write_correspondence",
]


def _num(x: float) -> str:
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


# graph files
#   V <n>
#   E <u> <v> <length>
#   P <u> <x1> ... <xd>          embedded vertex coordinates
#   W <edge> <x1> ... <xd>       interior polyline waypoint, in order


def format_graph(G: MetricGraph | EmbeddedMetricGraph) -> str:
    base = G.base if isinstance(G, EmbeddedMetricGraph) else G
    lines = [f"V {base.vertex_count}"]
    lines += [f"E {u} {v} {_num(length)}" for u, v, length in base.edges]
    if isinstance(G, EmbeddedMetricGraph):
        for u, xs in enumerate(G.vertex_coords.tolist()):
            lines.append("P " + " ".join([str(u)] + [_num(x) for x in xs]))
        for e in range(len(base.edges)):
            for xs in G.waypoints(e).tolist():
                lines.append("W " + " ".join([str(e)] + [_num(x) for x in xs]))
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> MetricGraph | EmbeddedMetricGraph:
    n = None
    edges: list[tuple[int, int, float]] = []
    coords: dict[int, list[float]] = {}
    waypoints: dict[int, list[list[float]]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        try:
            if tag == "V":
                n = int(rest[0])
            elif tag == "E":
                edges.append((int(rest[0]), int(rest[1]), float(rest[2])))
            elif tag == "P":
                coords[int(rest[0])] = [float(x) for x in rest[1:]]
            elif tag == "W":
                waypoints.setdefault(int(rest[0]), []).append([float(x) for x in rest[1:]])
            else:
                raise ValueError(f"unknown record {tag!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"graph file line {lineno}: {exc}") from exc
    if n is None:
        raise ValueError("graph file has no 'V' header")
    if not coords:
        if waypoints:
            raise ValueError("waypoints given without vertex coordinates")
        return MetricGraph(n, edges)
    if sorted(coords) != list(range(n)):
        raise ValueError("embedded graph needs a 'P' line for every vertex")
    return EmbeddedMetricGraph(
        [coords[u] for u in range(n)],
        [(u, v) for u, v, _ in edges],
        waypoints=[waypoints.get(e) for e in range(len(edges))],
        lengths=[length for _, _, length in edges],
    )


def read_graph(path) -> MetricGraph | EmbeddedMetricGraph:
    return parse_graph(Path(path).read_text())


def write_graph(G, path) -> None:
    Path(path).write_text(format_graph(G))


# sample files: CSV with a mandatory header
#   embedded: x1,...,xd[,edge,offset,dist]
#   abstract: edge,offset


def format_samples(S: SampleSet | Sequence[GraphPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(S, SampleSet):
        d = S.points.shape[1]
        header = [f"x{i + 1}" for i in range(d)]
        if S.provenance is not None:
            header += ["edge", "offset", "dist"]
        w.writerow(header)
        for i, row in enumerate(S.points.tolist()):
            out = [_num(x) for x in row]
            if S.provenance is not None:
                p = S.provenance[i]
                out += [str(p.edge), _num(p.offset), _num(S.provenance_dist[i])]
            w.writerow(out)
    else:
        w.writerow(["edge", "offset"])
        for p in S:
            w.writerow([str(p.edge), _num(p.offset)])
    return buf.getvalue()


def parse_samples(text: str, hausdorff_bound: float | None = None) -> SampleSet | list[GraphPoint]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValueError("sample file is empty")
    header = [h.strip() for h in rows[0]]
    body = [r for r in rows[1:] if r]
    if header == ["edge", "offset"]:
        return [GraphPoint(int(r[0]), float(r[1])) for r in body]
    coord_cols = [i for i, h in enumerate(header) if h.startswith("x")]
    if not coord_cols or coord_cols != list(range(len(coord_cols))):
        raise ValueError(f"unrecognised sample header {header}")
    d = len(coord_cols)
    pts = np.array([[float(x) for x in r[:d]] for r in body], dtype=float).reshape(-1, d)
    if header[d:] == ["edge", "offset", "dist"]:
        prov = [GraphPoint(int(r[d]), float(r[d + 1])) for r in body]
        dist = np.array([float(r[d + 2]) for r in body])
        return SampleSet(pts, prov, dist, hausdorff_bound)
    if header[d:]:
        raise ValueError(f"unrecognised sample header {header}")
    return SampleSet(pts, hausdorff_bound=hausdorff_bound)


def read_samples(path, hausdorff_bound: float | None = None):
    return parse_samples(Path(path).read_text(), hausdorff_bound)


def write_samples(S, path) -> None:
    Path(path).write_text(format_samples(S))


# distance matrices: one CSV row per point, 'inf' for unreachable pairs


def format_matrix(m) -> str:
    d = np.asarray(getattr(m, "d", m), dtype=float)
    return "".join(",".join(_num(x) for x in row) + "\n" for row in d.tolist())


def parse_matrix(text: str) -> FiniteMetric:
    rows = [line for line in text.splitlines() if line.strip()]
    d = np.array([[float(x) for x in line.split(",")] for line in rows], dtype=float)
    return FiniteMetric(d.reshape(len(rows), -1) if rows else np.zeros((0, 0)))


def read_matrix(path) -> FiniteMetric:
    return parse_matrix(Path(path).read_text())


def write_matrix(m, path) -> None:
    Path(path).write_text(format_matrix(m))


# complexes: "# dim k" blocks, one simplex per line


def format_complex(K: SimplicialComplex) -> str:
    parts = [f"# complete {int(K.complete)}\n"]
    for k, arr in enumerate(K.simplices_by_dim):
        parts.append(f"# dim {k}\n")
        parts.append("".join(" ".join(map(str, r)) + "\n" for r in arr.tolist()))
    return "".join(parts)


def parse_complex(text: str) -> SimplicialComplex:
    blocks: list[list[list[int]]] = []
    complete = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            words = line[1:].split()
            if words[:1] == ["dim"]:
                k = int(words[1])
                if k != len(blocks):
                    raise ValueError(f"dimension blocks out of order at '# dim {k}'")
                blocks.append([])
            elif words[:1] == ["complete"]:
                complete = bool(int(words[1]))
            continue
        if not blocks:
            raise ValueError("simplex listed before any '# dim' header")
        blocks[-1].append([int(x) for x in line.split()])
    return SimplicialComplex(blocks, complete=complete, check=True)


def read_complex(path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text())


def write_complex(K: SimplicialComplex, path) -> None:
    Path(path).write_text(format_complex(K))


def write_correspondence(C: Correspondence, path) -> None:
    Path(path).write_text("".join(f"{i},{j}\n" for i, j in C))


def read_correspondence(path, n1: int, n2: int) -> Correspondence:
    pairs = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line:
            i, j = line.split(",")
            pairs.append((int(i), int(j)))
    return Correspondence(pairs, n1, n2)
