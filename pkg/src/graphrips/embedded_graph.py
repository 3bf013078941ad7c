"""Metric graphs embedded in R^d with polyline edges."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .metric_graph import GraphPoint, MetricGraph, _pairwise, sample_uniform

__all__ = [
    "EmbeddedMetricGraph",
    "SampleSet",
    "euclidean_position",
    "euclidean_positions",
    "probe_grid",
    "distortion",
    "hausdorff_sample",
    "hausdorff_distance",
    "square_boundary",
    "regular_polygon",
    "regular_polygon_distortion",
    "straight_segment",
]


class EmbeddedMetricGraph:
    """A metric graph whose edges are polylines in R^d.

    Edge lengths are the Euclidean polyline lengths. When ``lengths`` are given
    they must agree with the polylines to within 1e-9 (relative to the length).
    """

    def __init__(
        self,
        vertex_coords,
        edges: Sequence[tuple[int, int]],
        waypoints: Sequence | None = None,
        lengths: Sequence[float] | None = None,
    ):
        coords = np.asarray(vertex_coords, dtype=float)
        if coords.ndim != 2:
            raise ValueError("vertex_coords must be a (V, d) array")
        self.vertex_coords = coords
        self.dim = coords.shape[1]
        polylines = []
        cum = []
        base_edges = []
        for idx, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            mids = [] if waypoints is None or waypoints[idx] is None else waypoints[idx]
            mids = np.asarray(mids, dtype=float).reshape(-1, self.dim)
            line = np.vstack([coords[u], mids, coords[v]])
            seg = np.linalg.norm(np.diff(line, axis=0), axis=1)
            c = np.concatenate([[0.0], np.cumsum(seg)])
            length = float(c[-1])
            if not length > 0:
                raise ValueError(f"edge {idx} has zero polyline length")
            if lengths is not None:
                given = float(lengths[idx])
                if abs(given - length) > 1e-9 * max(1.0, length):
                    raise ValueError(f"edge {idx}: stated length {given} differs from polyline length {length}")
            line.setflags(write=False)
            polylines.append(line)
            cum.append(c)
            base_edges.append((u, v, length))
        self.polylines: tuple[np.ndarray, ...] = tuple(polylines)
        self._cum = cum
        self.base = MetricGraph(len(coords), base_edges)

    def __repr__(self) -> str:
        return f"EmbeddedMetricGraph(V={self.base.vertex_count}, E={len(self.base.edges)}, d={self.dim})"

    @property
    def edges(self):
        return self.base.edges

    def waypoints(self, edge: int) -> np.ndarray:
        return self.polylines[edge][1:-1]


@dataclass
class SampleSet:
    """Points in R^d, optionally with the graph points they were generated from."""

    points: np.ndarray
    provenance: list[GraphPoint] | None = None
    provenance_dist: np.ndarray | None = None
    hausdorff_bound: float | None = None

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2:
            raise ValueError("sample points must form an (n, d) array")
        if self.provenance is not None:
            if len(self.provenance) != len(self.points):
                raise ValueError("provenance length must match the number of points")
            if self.provenance_dist is None:
                raise ValueError("provenance requires per-point distances")
            self.provenance_dist = np.asarray(self.provenance_dist, dtype=float)
            if self.hausdorff_bound is not None and np.any(self.provenance_dist > self.hausdorff_bound):
                raise ValueError("provenance distance exceeds the Hausdorff bound")

    def __len__(self) -> int:
        return len(self.points)


def euclidean_position(EG: EmbeddedMetricGraph, p: GraphPoint) -> np.ndarray:
    """Arc-length interpolation of p along its edge polyline."""
    line = EG.polylines[p.edge]
    c = EG._cum[p.edge]
    t = min(max(p.offset, 0.0), c[-1])
    j = int(np.searchsorted(c, t, side="right")) - 1
    j = min(max(j, 0), len(line) - 2)
    seg = c[j + 1] - c[j]
    w = 0.0 if seg == 0 else (t - c[j]) / seg
    return line[j] + w * (line[j + 1] - line[j])


def euclidean_positions(EG: EmbeddedMetricGraph, points: Sequence[GraphPoint]) -> np.ndarray:
    out = np.empty((len(points), EG.dim))
    for i, p in enumerate(points):
        out[i] = euclidean_position(EG, p)
    return out


def probe_grid(EG: EmbeddedMetricGraph, resolution: float) -> list[GraphPoint]:
    """Arc-length uniform grid with spacing <= resolution on every edge."""
    return sample_uniform(EG.base, resolution)[0]


def distortion(EG: EmbeddedMetricGraph, resolution: float) -> tuple[float, tuple[GraphPoint, GraphPoint]]:
    """Grid lower bound on the distortion sup d_G(a, b) / |a - b|, with its witness pair."""
    if not resolution > 0:
        raise ValueError("resolution must be positive")
    grid = probe_grid(EG, resolution)
    if len(grid) < 2:
        raise ValueError("probe grid has fewer than two points")
    pos = euclidean_positions(EG, grid)
    dg = _pairwise(EG.base, grid)
    diff = pos[:, None, :] - pos[None, :, :]
    de = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    off = ~np.eye(len(grid), dtype=bool)
    if np.any(de[off] == 0):
        i, j = np.argwhere((de == 0) & off)[0]
        raise ValueError(f"embedding is not injective: probe points {grid[i]} and {grid[j]} coincide")
    ratio = np.where(off, dg / np.where(off, de, 1.0), 0.0)
    i, j = np.unravel_index(int(np.argmax(ratio)), ratio.shape)
    return max(1.0, float(ratio[i, j])), (grid[min(i, j)], grid[max(i, j)])


def hausdorff_sample(EG: EmbeddedMetricGraph, spacing: float, noise: float = 0.0, seed: int = 0) -> SampleSet:
    """Equispaced points on every edge, each moved uniformly within a ball of radius ``noise``."""
    if noise < 0 or not math.isfinite(noise):
        raise ValueError(f"noise must be non-negative, got {noise}")
    gen, _ = sample_uniform(EG.base, spacing)
    exact = euclidean_positions(EG, gen)
    rng = np.random.default_rng(seed)
    n, d = exact.shape
    if noise > 0:
        direction = rng.standard_normal((n, d))
        direction /= np.linalg.norm(direction, axis=1, keepdims=True)
        radius = noise * rng.random(n) ** (1.0 / d)
        pts = exact + direction * radius[:, None]
    else:
        pts = exact.copy()
    dist = np.linalg.norm(pts - exact, axis=1)
    return SampleSet(pts, list(gen), dist, spacing / 2.0 + noise)


def hausdorff_distance(EG: EmbeddedMetricGraph, S: SampleSet, resolution: float) -> float:
    """Two-sided Hausdorff estimate between the graph's probe grid and S."""
    pts = S.points if isinstance(S, SampleSet) else np.asarray(S, dtype=float)
    if len(pts) == 0:
        raise ValueError("empty sample set")
    if not resolution > 0:
        raise ValueError("resolution must be positive")
    grid = euclidean_positions(EG, probe_grid(EG, resolution))
    to_sample, _ = cKDTree(pts).query(grid)
    to_grid, _ = cKDTree(grid).query(pts)
    return float(max(to_sample.max(), to_grid.max()))


def straight_segment(length: float = 1.0, dim: int = 2) -> EmbeddedMetricGraph:
    a = np.zeros(dim)
    b = np.zeros(dim)
    b[0] = length
    return EmbeddedMetricGraph([a, b], [(0, 1)])


def square_boundary(side: float = 1.0) -> EmbeddedMetricGraph:
    """Boundary of the axis-aligned square [0, side]^2 as a 4-cycle."""
    corners = np.array([[0, 0], [side, 0], [side, side], [0, side]], dtype=float)
    return EmbeddedMetricGraph(corners, [(0, 1), (1, 2), (2, 3), (3, 0)])


def regular_polygon(n: int, radius: float = 1.0) -> EmbeddedMetricGraph:
    """Inscribed regular n-gon with one vertex per corner."""
    theta = 2 * np.pi * np.arange(n) / n
    corners = radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    return EmbeddedMetricGraph(corners, [(i, (i + 1) % n) for i in range(n)])


def regular_polygon_distortion(n: int) -> float:
    """Distortion of an even regular n-gon: attained by midpoints of opposite sides."""
    if n % 2:
        raise ValueError("closed form only for even n")
    return (n / 2) * math.tan(math.pi / n)
