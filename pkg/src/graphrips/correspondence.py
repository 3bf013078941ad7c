"""Correspondences between finite metric spaces and the vertex maps they induce."""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .simplicial import SimplicialComplex

__all__ = [
    "Correspondence",
    "distortion",
    "gh_upper_bound",
    "induced_vertex_map",
    "is_simplicial",
    "compose",
    "identity_correspondence",
]


class Correspondence:
    """A relation between [0, n1) and [0, n2) whose projections are both onto."""

    def __init__(self, pairs: Iterable[tuple[int, int]], n1: int, n2: int):
        arr = np.array(sorted({(int(i), int(j)) for i, j in pairs}), dtype=np.int64).reshape(-1, 2)
        self.n1, self.n2 = int(n1), int(n2)
        if len(arr) and (arr.min() < 0 or arr[:, 0].max() >= n1 or arr[:, 1].max() >= n2):
            raise ValueError("correspondence index out of range")
        if len(np.unique(arr[:, 0])) != n1:
            raise ValueError("correspondence is not left-total")
        if len(np.unique(arr[:, 1])) != n2:
            raise ValueError("correspondence is not right-total")
        arr.setflags(write=False)
        self.pairs = arr

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(map(tuple, self.pairs.tolist()))

    def inverse(self) -> "Correspondence":
        return Correspondence(self.pairs[:, ::-1].tolist(), self.n2, self.n1)

    def __repr__(self) -> str:
        return f"Correspondence(n1={self.n1}, n2={self.n2}, pairs={len(self)})"


def identity_correspondence(n: int) -> Correspondence:
    return Correspondence(((i, i) for i in range(n)), n, n)


def _matrix(m) -> np.ndarray:
    return np.asarray(getattr(m, "d", m), dtype=float)


def distortion(C: Correspondence, m1, m2) -> float:
    """max |m1(i1, i2) - m2(j1, j2)| over pairs (i1, j1), (i2, j2) of C."""
    d1, d2 = _matrix(m1), _matrix(m2)
    if d1.shape != (C.n1, C.n1) or d2.shape != (C.n2, C.n2):
        raise ValueError("metric sizes do not match the correspondence")
    i, j = C.pairs[:, 0], C.pairs[:, 1]
    a = d1[np.ix_(i, i)]
    b = d2[np.ix_(j, j)]
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise ValueError("distortion needs finite distances on the paired points")
    return float(np.abs(a - b).max())


def gh_upper_bound(C: Correspondence, m1, m2) -> float:
    """Half the distortion of C: an upper bound on the Gromov-Hausdorff distance."""
    return distortion(C, m1, m2) / 2.0


def induced_vertex_map(C: Correspondence, direction: str = "left-to-right") -> dict[int, int]:
    """Each source index sent to its smallest partner."""
    if direction == "left-to-right":
        src, dst = C.pairs[:, 0], C.pairs[:, 1]
    elif direction == "right-to-left":
        src, dst = C.pairs[:, 1], C.pairs[:, 0]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    out: dict[int, int] = {}
    for s, t in zip(src.tolist(), dst.tolist()):
        if s not in out or t < out[s]:
            out[s] = t
    return dict(sorted(out.items()))


def compose(C1: Correspondence, C2: Correspondence) -> Correspondence:
    """{(i, k) : (i, j) in C1 and (j, k) in C2 for some j}."""
    if C1.n2 != C2.n1:
        raise ValueError("correspondences do not compose")
    by_mid: dict[int, list[int]] = {}
    for j, k in C2:
        by_mid.setdefault(j, []).append(k)
    pairs = {(i, k) for i, j in C1 for k in by_mid.get(j, ())}
    return Correspondence(pairs, C1.n1, C2.n2)


def is_simplicial(vertex_map: Mapping[int, int], K: SimplicialComplex, L: SimplicialComplex) -> bool:
    """Whether the vertex map sends every simplex of K onto a simplex of L."""
    lookup = np.full(int(K.vertices().max()) + 1 if K.count(0) else 0, -1, dtype=np.int64)
    for v in K.vertices().tolist():
        if v not in vertex_map:
            raise ValueError(f"vertex map is undefined on vertex {v}")
        lookup[v] = vertex_map[v]
    for k in range(K.max_dim + 1):
        arr = K.simplices(k)
        if len(arr) == 0:
            continue
        images = {tuple(sorted(set(r))) for r in lookup[arr].tolist()}
        for img in images:
            if len(img) - 1 > L.max_dim or img not in L:
                return False
    return True
