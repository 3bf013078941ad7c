"""Z/2 simplicial homology: Betti numbers, Euler characteristic, components.

Ranks of the boundary maps are obtained by reducing the coboundary matrices
(the anti-transposes of the boundary matrices) one dimension at a time, from
low to high, with the clearing optimization. Columns are processed in reverse
lexicographic order and the pivot of a column is its lexicographically
smallest cofacet; for flag complexes most columns form apparent pairs and need
no reduction at all.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simplicial import SimplicialComplex

__all__ = [
    "BettiVector",
    "betti_numbers",
    "boundary_ranks",
    "euler_characteristic",
    "connected_components",
    "facet_indices",
]


@dataclass(frozen=True)
class BettiVector:
    values: tuple[int, ...]
    computed_up_to: int

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def to_csv(self) -> str:
        return ",".join(str(b) for b in self.values)


def _encode(arr: np.ndarray, base: int):
    """Integer keys preserving lexicographic order, or None on overflow."""
    width = arr.shape[1]
    if base ** width >= 2**62:
        return None
    keys = np.zeros(len(arr), dtype=np.int64)
    for j in range(width):
        keys = keys * base + arr[:, j]
    return keys


def facet_indices(K: SimplicialComplex, k: int) -> np.ndarray:
    """Row indices into ``K.simplices(k-1)`` of every facet of every k-simplex.

    Column ``j`` corresponds to deleting vertex position ``j``.
    """
    top = K.simplices(k)
    low = K.simplices(k - 1)
    out = np.empty((len(top), k + 1), dtype=np.int64)
    if len(top) == 0:
        return out
    base = int(K.simplices(0).max()) + 1 if K.count(0) else 1
    low_keys = _encode(low, base)
    for j in range(k + 1):
        faces = np.delete(top, j, axis=1)
        if low_keys is not None:
            fk = _encode(faces, base)
            pos = np.searchsorted(low_keys, fk)
            pos = np.minimum(pos, len(low_keys) - 1)
            if np.any(low_keys[pos] != fk):
                raise ValueError(f"complex is not closed under faces in dimension {k}")
            out[:, j] = pos
        else:
            lookup = K.keys(k - 1)
            try:
                out[:, j] = [lookup[tuple(f)] for f in faces.tolist()]
            except KeyError as exc:
                raise ValueError(f"complex is not closed under faces in dimension {k}") from exc
    return out


def _cofacet_csr(facets: np.ndarray, n_low: int):
    # column c of the coboundary lists the (k+1)-simplices having c as a facet,
    # in ascending order
    m, w = facets.shape
    owners = np.repeat(np.arange(m, dtype=np.int64), w)
    flat = facets.ravel()
    order = np.argsort(flat, kind="stable")
    rows = owners[order]
    indptr = np.zeros(n_low + 1, dtype=np.int64)
    np.cumsum(np.bincount(flat, minlength=n_low), out=indptr[1:])
    return indptr, rows


def _reduce_coboundary(indptr: np.ndarray, rows: np.ndarray, n_cols: int, cleared: set) -> dict:
    """Reduce one coboundary matrix; returns ``{pivot row: column}``."""
    pivots: dict[int, int] = {}
    reduced: dict[int, set] = {}
    ip = indptr.tolist()
    for c in range(n_cols - 1, -1, -1):
        if c in cleared:
            continue
        lo, hi = ip[c], ip[c + 1]
        if lo == hi:
            continue
        first = int(rows[lo])
        owner = pivots.get(first)
        if owner is None:
            # apparent pivot: the unreduced column is kept implicitly
            pivots[first] = c
            continue
        col = set(rows[lo:hi].tolist())
        while col:
            p = min(col)
            owner = pivots.get(p)
            if owner is None:
                pivots[p] = c
                reduced[c] = col
                break
            other = reduced.get(owner)
            if other is None:
                other = rows[ip[owner] : ip[owner + 1]].tolist()
            col.symmetric_difference_update(other)
    return pivots


def boundary_ranks(K: SimplicialComplex, up_to: int) -> list[int]:
    """``rank d_{k+1}`` over GF(2) for k = 0..up_to (needs up_to + 1 <= max_dim)."""
    ranks = []
    cleared: set = set()
    for k in range(up_to + 1):
        if k + 1 > K.max_dim:
            ranks.append(0)
            cleared = set()
            continue
        facets = facet_indices(K, k + 1)
        indptr, rows = _cofacet_csr(facets, K.count(k))
        pivots = _reduce_coboundary(indptr, rows, K.count(k), cleared)
        ranks.append(len(pivots))
        cleared = set(pivots)
    return ranks


def betti_numbers(K: SimplicialComplex, up_to: int | None = None) -> BettiVector:
    """Betti numbers b_0..b_up_to over GF(2).

    ``b_up_to`` needs the (up_to + 1)-simplices, so a truncated complex must be
    built to at least ``up_to + 1``. The default is the largest exact value.
    """
    if up_to is None:
        up_to = K.max_dim if K.complete else K.max_dim - 1
    if up_to < 0:
        raise ValueError("up_to must be non-negative and the complex must reach dimension 1")
    if up_to >= K.max_dim and not K.complete:
        raise ValueError(
            f"b_{up_to} needs the {up_to + 1}-simplices; complex is truncated at dimension {K.max_dim}"
        )
    ranks = boundary_ranks(K, up_to)
    values = []
    for k in range(up_to + 1):
        below = ranks[k - 1] if k > 0 else 0
        values.append(K.count(k) - below - ranks[k])
    return BettiVector(tuple(values), up_to)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** k * c for k, c in enumerate(K.counts()))


def connected_components(K: SimplicialComplex) -> int:
    """Number of components, by union-find over the edges."""
    verts = K.vertices().tolist()
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = len(verts)
    for u, v in K.simplices(1).tolist():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
            count -= 1
    return count
