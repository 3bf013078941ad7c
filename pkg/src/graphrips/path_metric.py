"""Finite metrics and the epsilon-path metric on Euclidean samples.

The epsilon-path distance between two sample points is the length of the
shortest chain of sample points whose consecutive Euclidean gaps are all
strictly below eps. Hop lengths are rounded up onto a dyadic grid fine enough
that every path sum is exact in double precision, so the resulting matrix is
exactly symmetric and satisfies the triangle inequality without rounding slack.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra
from scipy.spatial import cKDTree

__all__ = [
    "FiniteMetric",
    "EpsilonPath",
    "path_metric",
    "epsilon_graph",
    "epsilon_path_witness",
    "alpha_circumcenter",
    "diameter",
]


class FiniteMetric:
    """Symmetric n x n distance matrix with zero diagonal; entries may be inf."""

    def __init__(self, d, check: bool = True):
        arr = np.array(d, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("distance matrix must be square")
        if check:
            if np.isnan(arr).any():
                raise ValueError("distance matrix contains NaN")
            if (arr < 0).any():
                raise ValueError("distances must be non-negative")
            if not np.array_equal(arr, arr.T):
                raise ValueError("distance matrix must be symmetric")
            if np.any(np.diag(arr) != 0):
                raise ValueError("distance matrix must have a zero diagonal")
        arr.setflags(write=False)
        self.d = arr

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.d if dtype is None else self.d.astype(dtype)

    def __getitem__(self, idx):
        return self.d[idx]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteMetric):
            return NotImplemented
        return np.array_equal(self.d, other.d)

    def __repr__(self) -> str:
        return f"FiniteMetric(n={self.n})"


@dataclass(frozen=True)
class EpsilonPath:
    indices: tuple[int, ...]
    length: float


def _points(S) -> np.ndarray:
    pts = getattr(S, "points", S)
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise ValueError("need a non-empty (n, d) point array")
    return pts


def _quantum(pts: np.ndarray) -> float:
    # any simple path has < n hops of length <= bounding-box diagonal
    diag = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
    bound = max(len(pts), 2) * max(diag, 1e-300) * 2.0
    return math.ldexp(1.0, math.frexp(bound)[1] - 52)


def _round_up(w: np.ndarray, q: float) -> np.ndarray:
    # strictly above the Euclidean gap
    return (np.floor(w / q) + 1.0) * q


def epsilon_graph(S, eps: float) -> csr_matrix:
    """Sparse symmetric graph of hops with Euclidean gap < eps (rounded lengths)."""
    pts = _points(S)
    eps = float(eps)
    if not (eps > 0 and math.isfinite(eps)):
        raise ValueError(f"eps must be positive and finite, got {eps}")
    n = len(pts)
    pairs = cKDTree(pts).query_pairs(eps, output_type="ndarray")
    if len(pairs):
        gaps = np.linalg.norm(pts[pairs[:, 0]] - pts[pairs[:, 1]], axis=1)
        keep = gaps < eps
        pairs, gaps = pairs[keep], gaps[keep]
    else:
        gaps = np.empty(0)
    w = _round_up(gaps, _quantum(pts))
    rows = np.concatenate([pairs[:, 0], pairs[:, 1]]) if len(pairs) else np.empty(0, dtype=np.int64)
    cols = np.concatenate([pairs[:, 1], pairs[:, 0]]) if len(pairs) else np.empty(0, dtype=np.int64)
    return csr_matrix((np.concatenate([w, w]), (rows, cols)), shape=(n, n))


def path_metric(S, eps: float) -> FiniteMetric:
    """All-pairs epsilon-path distances; inf where no epsilon-path exists."""
    graph = epsilon_graph(S, eps)
    d = _csgraph_dijkstra(graph, directed=True)
    # sums are exact, so both directions agree; min() guards the invariant anyway
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    return FiniteMetric(d, check=False)


def epsilon_path_witness(S, eps: float, a: int, b: int) -> EpsilonPath:
    """A shortest epsilon-path from a to b; ties go to the lexicographically smallest index sequence."""
    graph = epsilon_graph(S, eps)
    n = graph.shape[0]
    if not (0 <= a < n and 0 <= b < n):
        raise IndexError("sample index out of range")
    indptr, indices, data = graph.indptr, graph.indices, graph.data
    # distances to b; exact sums make equality tests meaningful
    to_b = [math.inf] * n
    to_b[b] = 0.0
    heap = [(0.0, b)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > to_b[u]:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            v = int(indices[k])
            nd = du + float(data[k])
            if nd < to_b[v]:
                to_b[v] = nd
                heapq.heappush(heap, (nd, v))
    if math.isinf(to_b[a]):
        raise ValueError(f"points {a} and {b} are not joined by an epsilon-path")
    path = [a]
    cur = a
    visited = {a}
    total = 0.0
    while cur != b:
        nxt = None
        for k in np.argsort(indices[indptr[cur] : indptr[cur + 1]], kind="stable"):
            k = indptr[cur] + int(k)
            v = int(indices[k])
            if v in visited:
                continue
            if float(data[k]) + to_b[v] == to_b[cur]:
                nxt, step = v, float(data[k])
                break
        if nxt is None:
            raise RuntimeError("shortest-path reconstruction failed")
        total += step
        visited.add(nxt)
        path.append(nxt)
        cur = nxt
    return EpsilonPath(tuple(path), total)


def diameter(m, Y: Sequence[int]) -> float:
    d = getattr(m, "d", m)
    idx = np.asarray(list(Y), dtype=np.int64)
    return float(np.asarray(d)[np.ix_(idx, idx)].max()) if len(idx) else 0.0


def alpha_circumcenter(m, Y: Sequence[int], alpha: float) -> int | None:
    """Smallest index x with max_{y in Y} m(x, y) <= diam(Y)/2 + alpha, or None."""
    d = np.asarray(getattr(m, "d", m))
    idx = sorted(set(int(y) for y in Y))
    if not idx:
        raise ValueError("Y must be non-empty")
    if len(idx) == 1:
        return idx[0]
    sub = d[np.ix_(idx, idx)]
    if not np.isfinite(sub).all():
        raise ValueError("distances within Y must be finite")
    radius = float(sub.max()) / 2.0 + float(alpha)
    reach = d[:, idx].max(axis=1)
    hits = np.flatnonzero(reach <= radius)
    return int(hits[0]) if len(hits) else None
