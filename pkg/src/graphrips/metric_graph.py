"""Metric graphs as geodesic spaces.

A point of the graph is addressed by an edge and an arc-length offset from the
edge's first endpoint. Distances between arbitrary points reduce to the
vertex-to-vertex shortest path distances plus the partial edge lengths at both
ends, which is exactly what a shortest-path search over the graph split at the
two points would return.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

__all__ = [
    "GraphPoint",
    "MetricGraph",
    "geodesic_distance",
    "convexity_radius",
    "finite_convexity_radius",
    "systole",
    "circumcenter",
    "geodesic_midpoint",
    "sample_uniform",
    "first_betti",
    "restriction_metric",
    "cycle_graph",
    "theta_graph",
]


@dataclass(frozen=True, order=True)
class GraphPoint:
    """A point at arc length ``offset`` along edge ``edge`` (from its u end)."""

    edge: int
    offset: float


class MetricGraph:
    """Connected graph with positive edge lengths; loops and parallel edges allowed."""

    def __init__(self, vertex_count: int, edges: Sequence[tuple[int, int, float]]):
        if vertex_count < 1:
            raise ValueError("a metric graph needs at least one vertex")
        self.vertex_count = int(vertex_count)
        clean = []
        for u, v, length in edges:
            u, v, length = int(u), int(v), float(length)
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) references a missing vertex")
            if not (length > 0 and math.isfinite(length)):
                raise ValueError(f"edge ({u}, {v}) has non-positive length {length}")
            clean.append((u, v, length))
        self.edges: tuple[tuple[int, int, float], ...] = tuple(clean)
        self._check_connected()

    def _check_connected(self) -> None:
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, _ in self.edges:
            parent[find(u)] = find(v)
        roots = {find(x) for x in range(self.vertex_count)}
        if len(roots) != 1:
            raise ValueError("metric graph must be connected")

    def __repr__(self) -> str:
        return f"MetricGraph(V={self.vertex_count}, E={len(self.edges)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetricGraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    @property
    def total_length(self) -> float:
        return math.fsum(e[2] for e in self.edges)

    def length(self, edge: int) -> float:
        return self.edges[edge][2]

    @cached_property
    def _adjacency(self) -> list[list[tuple[int, int, float]]]:
        adj: list[list[tuple[int, int, float]]] = [[] for _ in range(self.vertex_count)]
        for idx, (u, v, length) in enumerate(self.edges):
            if u == v:
                continue
            adj[u].append((v, idx, length))
            adj[v].append((u, idx, length))
        return adj

    @cached_property
    def _incident_min(self) -> list[int]:
        best = [-1] * self.vertex_count
        for idx, (u, v, _) in enumerate(self.edges):
            for x in (u, v):
                if best[x] < 0:
                    best[x] = idx
        return best

    def dijkstra(self, source: int, skip_edge: int = -1) -> tuple[list[float], list[int]]:
        """Vertex distances from ``source`` and the predecessor edge of each vertex."""
        dist = [math.inf] * self.vertex_count
        pred = [-1] * self.vertex_count
        dist[source] = 0.0
        heap = [(0.0, source)]
        adj = self._adjacency
        while heap:
            du, u = heapq.heappop(heap)
            if du > dist[u]:
                continue
            for v, idx, length in adj[u]:
                if idx == skip_edge:
                    continue
                nd = du + length
                if nd < dist[v]:
                    dist[v] = nd
                    pred[v] = idx
                    heapq.heappush(heap, (nd, v))
        return dist, pred

    @cached_property
    def _apsp(self) -> tuple[np.ndarray, list[list[int]]]:
        dists, preds = [], []
        for s in range(self.vertex_count):
            d, p = self.dijkstra(s)
            dists.append(d)
            preds.append(p)
        D = np.array(dists, dtype=float)
        # both directions are computed independently; keep the exact minimum
        D = np.minimum(D, D.T)
        return D, preds

    @property
    def vertex_distances(self) -> np.ndarray:
        return self._apsp[0]

    def vertex_point(self, vertex: int) -> GraphPoint:
        """Canonical point of a vertex: its smallest incident edge at the matching end."""
        idx = self._incident_min[vertex]
        if idx < 0:
            # isolated vertex only happens in the one-vertex, no-edge graph
            raise ValueError(f"vertex {vertex} has no incident edge")
        u, _, length = self.edges[idx]
        return GraphPoint(idx, 0.0 if u == vertex else length)

    def point(self, edge: int, offset: float) -> GraphPoint:
        """Validated, canonical point on ``edge`` at ``offset``."""
        if not 0 <= edge < len(self.edges):
            raise ValueError(f"edge index {edge} out of range")
        u, v, length = self.edges[edge]
        offset = float(offset)
        if not (-1e-12 * length <= offset <= length * (1 + 1e-12)):
            raise ValueError(f"offset {offset} outside edge {edge} of length {length}")
        offset = min(max(offset, 0.0), length)
        if offset == 0.0:
            return self.vertex_point(u)
        if offset == length:
            return self.vertex_point(v)
        return GraphPoint(edge, offset)

    def canonical(self, p: GraphPoint) -> GraphPoint:
        return self.point(p.edge, p.offset)

    def endpoint_vertex(self, p: GraphPoint) -> int | None:
        u, v, length = self.edges[p.edge]
        if p.offset == 0.0:
            return u
        if p.offset == length:
            return v
        return None

    def distance(self, p: GraphPoint, q: GraphPoint) -> float:
        return float(self._route(p, q)[0])

    def _route(self, p: GraphPoint, q: GraphPoint):
        """Shortest route between two points as (length, kind, x, exit, y, entry).

        ``kind`` is "edge" for the direct run along a shared edge; otherwise the
        route leaves p's edge at offset ``exit`` (vertex x) and enters q's edge
        at offset ``entry`` (vertex y).
        """
        D = self.vertex_distances
        u1, v1, l1 = self.edges[p.edge]
        u2, v2, l2 = self.edges[q.edge]
        a = ((u1, p.offset, 0.0), (v1, l1 - p.offset, l1))
        b = ((u2, q.offset, 0.0), (v2, l2 - q.offset, l2))
        best = (math.inf, "via", -1, 0.0, -1, 0.0)
        for x, ax, ex in a:
            for y, by, ey in b:
                cand = ax + D[x, y] + by
                if cand < best[0]:
                    best = (cand, "via", x, ex, y, ey)
        if p.edge == q.edge:
            direct = abs(p.offset - q.offset)
            if direct <= best[0]:
                best = (direct, "edge", -1, 0.0, -1, 0.0)
        return best

    def vertex_path_edges(self, x: int, y: int) -> list[int]:
        """Edge indices of the recorded shortest path from vertex x to vertex y."""
        pred = self._apsp[1][x]
        path = []
        cur = y
        while cur != x:
            idx = pred[cur]
            path.append(idx)
            u, v, _ = self.edges[idx]
            cur = u if v == cur else v
        path.reverse()
        return path


def geodesic_distance(G: MetricGraph, p: GraphPoint, q: GraphPoint) -> float:
    """Length of a shortest path between two points of G."""
    return G.distance(p, q)


def restriction_metric(G: MetricGraph, points: Sequence[GraphPoint]):
    """Pairwise geodesic distances of ``points`` as a FiniteMetric."""
    from .path_metric import FiniteMetric

    return FiniteMetric(_pairwise(G, points), check=False)


def _pairwise(G: MetricGraph, points: Sequence[GraphPoint], others: Sequence[GraphPoint] | None = None) -> np.ndarray:
    D = G.vertex_distances
    ends = np.array([(e[0], e[1]) for e in G.edges], dtype=np.int64).reshape(-1, 2)
    lengths = np.array([e[2] for e in G.edges], dtype=float)

    def unpack(pts):
        e = np.array([p.edge for p in pts], dtype=np.int64)
        t = np.array([p.offset for p in pts], dtype=float)
        return e, t, ends[e, 0], ends[e, 1], t, lengths[e] - t

    symmetric = others is None
    e1, t1, u1, v1, au, av = unpack(points)
    e2, t2, u2, v2, bu, bv = (e1, t1, u1, v1, au, av) if symmetric else unpack(others)
    out = np.full((len(e1), len(e2)), np.inf)
    for x, ax in ((u1, au), (v1, av)):
        for y, by in ((u2, bu), (v2, bv)):
            np.minimum(out, ax[:, None] + D[np.ix_(x, y)] + by[None, :], out=out)
    same = e1[:, None] == e2[None, :]
    direct = np.abs(t1[:, None] - t2[None, :])
    out = np.where(same, np.minimum(out, direct), out)
    if symmetric:
        out = np.minimum(out, out.T)
        np.fill_diagonal(out, 0.0)
    return out


def systole(G: MetricGraph) -> float:
    """Length of the shortest cycle (inf for trees)."""
    best = math.inf
    for idx, (u, v, length) in enumerate(G.edges):
        if u == v:
            best = min(best, length)
            continue
        if length >= best:
            continue
        dist, _ = G.dijkstra(u, skip_edge=idx)
        best = min(best, length + dist[v])
    return best


def convexity_radius(G: MetricGraph) -> float:
    """Convexity radius as systole / 4; ``math.inf`` (unbounded) for trees."""
    return systole(G) / 4.0


def graph_diameter(G: MetricGraph) -> float:
    """Largest vertex-to-vertex distance; the point diameter for trees."""
    return float(G.vertex_distances.max())


def finite_convexity_radius(G: MetricGraph) -> float:
    """Convexity radius with the unbounded case capped at the graph diameter."""
    rho = convexity_radius(G)
    return rho if math.isfinite(rho) else graph_diameter(G)


def first_betti(G: MetricGraph) -> int:
    return len(G.edges) - G.vertex_count + 1


def geodesic_midpoint(G: MetricGraph, p: GraphPoint, q: GraphPoint) -> GraphPoint:
    """Midpoint of the recorded shortest path from p to q."""
    total, kind, x, exit_off, y, entry_off = G._route(p, q)
    half = total / 2.0
    if kind == "edge":
        return G.point(p.edge, (p.offset + q.offset) / 2.0)
    # legs: (edge, start offset, end offset)
    legs = [(p.edge, p.offset, exit_off)]
    cur = x
    for idx in G.vertex_path_edges(x, y):
        u, v, length = G.edges[idx]
        if cur == u:
            legs.append((idx, 0.0, length))
            cur = v
        else:
            legs.append((idx, length, 0.0))
            cur = u
    legs.append((q.edge, entry_off, q.offset))
    walked = 0.0
    for idx, start, end in legs:
        span = abs(end - start)
        if walked + span >= half:
            step = half - walked
            off = start + step if end >= start else start - step
            return G.point(idx, off)
        walked += span
    idx, _, end = legs[-1]
    return G.point(idx, end)


def circumcenter(G: MetricGraph, Y: Sequence[GraphPoint], rho: float | None = None) -> tuple[GraphPoint, float]:
    """Circumcenter and circumradius of a finite set with diameter < 2 rho(G).

    The center is the midpoint of the geodesic joining the lexicographically
    first farthest pair; the radius is half the diameter.
    """
    pts = sorted({G.canonical(y) for y in Y})
    if not pts:
        raise ValueError("circumcenter of an empty set")
    if len(pts) == 1:
        return pts[0], 0.0
    if rho is None:
        rho = convexity_radius(G)
    D = _pairwise(G, pts)
    diam = float(D.max())
    if not diam < 2.0 * rho:
        raise ValueError(f"diameter {diam} is not below twice the convexity radius {rho}")
    for i, j in combinations(range(len(pts)), 2):
        if D[i, j] == diam:
            break
    return geodesic_midpoint(G, pts[i], pts[j]), diam / 2.0


def _edge_offsets(length: float, spacing: float) -> np.ndarray:
    segments = max(1, math.ceil(length / spacing))
    return np.arange(segments + 1) * (length / segments)


def sample_uniform(G: MetricGraph, spacing: float) -> tuple[list[GraphPoint], float]:
    """Arc-length equispaced points on every edge, endpoints included.

    Returns the distinct points (edge order) and the bound ``spacing / 2`` on
    the Gromov-Hausdorff distance between G and the sample.
    """
    spacing = float(spacing)
    if not (spacing > 0 and math.isfinite(spacing)):
        raise ValueError(f"spacing must be positive, got {spacing}")
    seen: set[GraphPoint] = set()
    points: list[GraphPoint] = []
    for idx, (_, _, length) in enumerate(G.edges):
        offs = _edge_offsets(length, spacing)
        offs[-1] = length
        for t in offs.tolist():
            p = G.point(idx, t)
            if p not in seen:
                seen.add(p)
                points.append(p)
    return points, spacing / 2.0


def cycle_graph(edge_count: int, edge_length: float = 1.0) -> MetricGraph:
    """A cycle of ``edge_count`` equal edges (a loop when edge_count == 1)."""
    n = edge_count
    return MetricGraph(n, [(i, (i + 1) % n, edge_length) for i in range(n)])


def theta_graph(branches: int = 3, edge_length: float = 1.0) -> MetricGraph:
    """Two vertices joined by ``branches`` parallel edges."""
    return MetricGraph(2, [(0, 1, edge_length)] * branches)
