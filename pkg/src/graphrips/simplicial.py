"""Abstract simplicial complexes: Rips/flag complexes, barycentric subdivision, skeleta.

Simplices of each dimension are stored as a lexicographically sorted integer
array of shape ``(count, k + 1)`` whose rows are strictly increasing vertex ids.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SimplicialComplex",
    "rips_complex",
    "barycentric_subdivision",
    "skeleton",
]

# bounds the candidate array built per expansion step
_EXPAND_CHUNK = 1 << 21


def _as_simplex_array(rows, k: int) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        return np.empty((0, k + 1), dtype=np.int64)
    return arr.reshape(-1, k + 1)


def _lex_unique(arr: np.ndarray) -> np.ndarray:
    if len(arr) == 0:
        return arr
    return np.unique(arr, axis=0)


class SimplicialComplex:
    """An immutable, face-closed simplicial complex.

    Parameters
    ----------
    simplices_by_dim : sequence of array-like
        Entry ``k`` holds the k-simplices as rows of sorted vertex ids.
    complete : bool, optional
        Whether the complex has no simplices above ``max_dim``. Complexes
        truncated at ``max_dim`` (such as Rips complexes) may not be complete,
        which limits the exact Betti numbers that can be read off them.
        Defaults to True exactly when the top dimension is empty.
    labels : sequence, optional
        Per-vertex annotation; barycentric subdivisions store the source
        simplex of every new vertex here.
    check : bool
        Validate ordering and face closure.
    """

    def __init__(
        self,
        simplices_by_dim: Sequence,
        complete: bool | None = None,
        labels: Sequence | None = None,
        check: bool = True,
    ):
        if len(simplices_by_dim) == 0:
            simplices_by_dim = [np.empty((0, 1), dtype=np.int64)]
        arrays = []
        for k, rows in enumerate(simplices_by_dim):
            arr = _as_simplex_array(rows, k)
            arr.setflags(write=False)
            arrays.append(arr)
        self._simplices = tuple(arrays)
        if complete is None:
            complete = len(arrays[-1]) == 0
        self.complete = bool(complete)
        self.labels = None if labels is None else tuple(labels)
        self._keys: dict[int, dict] = {}
        if check:
            self._validate()

    @classmethod
    def from_simplices(
        cls, simplices: Iterable[Sequence[int]], max_dim: int | None = None
    ) -> "SimplicialComplex":
        """Face closure of the given simplices (treated as a complete complex)."""
        by_dim: dict[int, set] = {}
        top = -1
        for s in simplices:
            t = tuple(sorted(set(int(v) for v in s)))
            if not t:
                continue
            top = max(top, len(t) - 1)
            for r in range(1, len(t) + 1):
                by_dim.setdefault(r - 1, set()).update(combinations(t, r))
        if max_dim is None:
            max_dim = max(top, 0)
        rows = [sorted(by_dim.get(k, ())) for k in range(max_dim + 1)]
        return cls(rows, complete=top <= max_dim, check=False)

    def _validate(self) -> None:
        for k, arr in enumerate(self._simplices):
            if len(arr) == 0:
                continue
            if np.any(arr < 0):
                raise ValueError("vertex ids must be non-negative")
            if k > 0 and np.any(np.diff(arr, axis=1) <= 0):
                raise ValueError(f"dimension {k}: rows must be strictly increasing")
            if len(arr) > 1:
                order = np.lexsort(arr.T[::-1])
                if np.any(order != np.arange(len(arr))):
                    raise ValueError(f"dimension {k}: rows must be lexicographically sorted")
                diff = np.any(arr[1:] != arr[:-1], axis=1)
                if not np.all(diff):
                    raise ValueError(f"dimension {k}: duplicate simplex")
        for k in range(1, len(self._simplices)):
            arr = self._simplices[k]
            if len(arr) == 0:
                continue
            lower = self.keys(k - 1)
            for j in range(k + 1):
                faces = np.delete(arr, j, axis=1)
                for f in map(tuple, faces):
                    if f not in lower:
                        raise ValueError(f"face {f} of a {k}-simplex is missing")

    @property
    def max_dim(self) -> int:
        return len(self._simplices) - 1

    @property
    def simplices_by_dim(self) -> tuple[np.ndarray, ...]:
        return self._simplices

    def simplices(self, k: int) -> np.ndarray:
        if k < 0 or k > self.max_dim:
            return np.empty((0, k + 1 if k >= 0 else 0), dtype=np.int64)
        return self._simplices[k]

    def count(self, k: int) -> int:
        return len(self.simplices(k))

    def counts(self) -> list[int]:
        return [len(a) for a in self._simplices]

    def total(self) -> int:
        return sum(self.counts())

    def vertices(self) -> np.ndarray:
        return self._simplices[0][:, 0]

    def keys(self, k: int) -> dict:
        """Map from k-simplex tuple to its row index."""
        if k not in self._keys:
            self._keys[k] = {tuple(r): i for i, r in enumerate(self.simplices(k).tolist())}
        return self._keys[k]

    def __contains__(self, simplex) -> bool:
        t = tuple(sorted(int(v) for v in simplex))
        if not t:
            return False
        return t in self.keys(len(t) - 1)

    def iter_simplices(self):
        for arr in self._simplices:
            for row in arr.tolist():
                yield tuple(row)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        for k, arr in enumerate(self._simplices):
            if len(arr) == 0:
                continue
            if k > other.max_dim:
                return False
            keys = other.keys(k)
            if any(tuple(r) not in keys for r in arr.tolist()):
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        if self.max_dim != other.max_dim:
            return False
        return all(np.array_equal(a, b) for a, b in zip(self._simplices, other._simplices))

    def __repr__(self) -> str:
        return f"SimplicialComplex(counts={self.counts()}, complete={self.complete})"


def _distance_array(metric) -> np.ndarray:
    d = getattr(metric, "d", metric)
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError("metric must be a square matrix")
    return d


def rips_complex(metric, beta: float, max_dim: int = 3, closed: bool = False) -> SimplicialComplex:
    """Vietoris-Rips complex: every vertex set of diameter < beta, up to ``max_dim``.

    ``closed=True`` switches to diameter <= beta. Infinite distances never give
    an edge.
    """
    beta = float(beta)
    if not math.isfinite(beta) or beta <= 0:
        raise ValueError(f"beta must be positive and finite, got {beta}")
    if int(max_dim) != max_dim or max_dim < 0:
        raise ValueError(f"max_dim must be a non-negative integer, got {max_dim}")
    max_dim = int(max_dim)
    d = _distance_array(metric)
    adj = (d <= beta) if closed else (d < beta)
    np.fill_diagonal(adj, False)
    return flag_complex(adj, max_dim)


def flag_complex(adj: np.ndarray, max_dim: int) -> SimplicialComplex:
    """Clique complex of a boolean adjacency matrix, truncated at ``max_dim``."""
    n = adj.shape[0]
    levels = [np.arange(n, dtype=np.int64).reshape(-1, 1)]
    if max_dim >= 1 and n > 1:
        upper = np.triu(adj, 1)
        iu, ju = np.nonzero(upper)
        edges = np.stack([iu, ju], axis=1).astype(np.int64)
        levels.append(edges)
        # CSR of higher neighbours, rows sorted ascending
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(iu, minlength=n), out=indptr[1:])
        indices = ju.astype(np.int64)
        for _ in range(2, max_dim + 1):
            prev = levels[-1]
            if len(prev) == 0:
                levels.append(np.empty((0, prev.shape[1] + 1), dtype=np.int64))
                continue
            levels.append(_expand(prev, adj, indptr, indices))
    while len(levels) < max_dim + 1:
        levels.append(np.empty((0, len(levels) + 1), dtype=np.int64))
    # no clique can have more than n vertices
    complete = len(levels[-1]) == 0 or max_dim >= n - 1
    return SimplicialComplex(levels, complete=complete, check=False)


def _expand(prev: np.ndarray, adj: np.ndarray, indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    # extend each clique by the common neighbours above its last vertex
    last = prev[:, -1]
    deg = indptr[last + 1] - indptr[last]
    out = []
    start = 0
    m = len(prev)
    while start < m:
        # grow the chunk until the candidate budget is reached
        csum = np.cumsum(deg[start:])
        stop = start + max(1, int(np.searchsorted(csum, _EXPAND_CHUNK, side="right")))
        stop = min(stop, m)
        block = prev[start:stop]
        bdeg = deg[start:stop]
        total = int(bdeg.sum())
        if total:
            rep = np.repeat(np.arange(len(block)), bdeg)
            offs = np.arange(total) - np.repeat(np.cumsum(bdeg) - bdeg, bdeg)
            cand = indices[indptr[block[rep, -1]] + offs]
            keep = np.ones(total, dtype=bool)
            for j in range(block.shape[1] - 1):
                keep &= adj[block[rep, j], cand]
            rows = np.concatenate([block[rep[keep]], cand[keep, None]], axis=1)
            out.append(rows)
        start = stop
    if not out:
        return np.empty((0, prev.shape[1] + 1), dtype=np.int64)
    return np.concatenate(out, axis=0)


def skeleton(K: SimplicialComplex, k: int) -> SimplicialComplex:
    """All simplices of dimension <= k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k >= K.max_dim:
        return K
    complete = K.complete and all(K.count(j) == 0 for j in range(k + 1, K.max_dim + 1))
    return SimplicialComplex(K.simplices_by_dim[: k + 1], complete=complete, labels=K.labels, check=False)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Barycentric subdivision ``sd K``.

    New vertex ``i`` is the barycenter of ``labels[i]``, the i-th simplex of K
    in (dimension, lexicographic) order. Simplices are chains of proper faces.
    """
    source: list[tuple] = []
    index: dict[tuple, int] = {}
    for s in K.iter_simplices():
        index[s] = len(source)
        source.append(s)
    # chains[s] = all chains (as id tuples) whose top element is s
    chains: dict[tuple, list[tuple]] = {}
    by_dim: list[set] = [set() for _ in range(K.max_dim + 1)]
    for s in source:
        mine = [(index[s],)]
        for r in range(1, len(s)):
            for face in combinations(s, r):
                mine.extend(c + (index[s],) for c in chains[face])
        chains[s] = mine
        for c in mine:
            by_dim[len(c) - 1].add(c)
    rows = [sorted(level) for level in by_dim]
    # chain ids increase with dimension, so rows are already sorted tuples
    return SimplicialComplex(rows, complete=K.complete, labels=source, check=False)
