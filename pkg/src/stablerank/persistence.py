"""Vietoris-Rips persistence in degrees 0 and 1 over the two-element field.

Point clouds are plain (n, d) float arrays and distance matrices plain
symmetric (n, n) arrays with zero diagonal; the triangle inequality is not
required. Degree 0 is single-linkage union-find over the sorted edges.
Degree 1 reduces the triangle/edge boundary matrix with bit-packed
columns, lazily using raw boundaries as pivots so that first-time lows
cost nothing. Simplices enter the filtration ordered by value, then
dimension, then lexicographic vertex tuple, which pins the output down to
the last bit.
"""
from __future__ import annotations

import logging

import numba
import numpy as np
from scipy.spatial.distance import pdist, squareform

from .barcodes import Bar, Barcode
from .stepfun import INF

__all__ = [
    "pairwise_distances",
    "validate_distance_matrix",
    "vr_h0",
    "vr_h1",
    "vr_persistence",
]

log = logging.getLogger(__name__)


def pairwise_distances(points) -> np.ndarray:
    """Euclidean distance matrix of an (n, d) point cloud."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise ValueError("point cloud must be a non-empty (n, d) array")
    if pts.shape[0] == 1:
        return np.zeros((1, 1))
    return squareform(pdist(pts))


def validate_distance_matrix(dm) -> np.ndarray:
    dm = np.asarray(dm, dtype=np.float64)
    if dm.ndim != 2 or dm.shape[0] != dm.shape[1] or dm.shape[0] < 1:
        raise ValueError("distance matrix must be square and non-empty")
    if np.any(np.diag(dm) != 0):
        raise ValueError("distance matrix must have a zero diagonal")
    if not np.array_equal(dm, dm.T):
        raise ValueError("distance matrix must be symmetric")
    if np.any(dm < 0) or not np.all(np.isfinite(dm)):
        raise ValueError("distances must be finite and non-negative")
    return dm


def _sorted_edges(dm: np.ndarray, cap: float):
    """Edges with weight <= cap, ordered by (weight, i, j)."""
    n = dm.shape[0]
    iu, ju = np.triu_indices(n, 1)
    w = dm[iu, ju]
    keep = w <= cap
    iu, ju, w = iu[keep], ju[keep], w[keep]
    order = np.lexsort((ju, iu, w))
    return iu[order].astype(np.int64), ju[order].astype(np.int64), w[order]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def vr_h0(dm) -> Barcode:
    """Degree-0 barcode: one merge bar per union event plus the survivor.

    Merge lengths are exactly the minimum-spanning-tree edge weights.
    Zero-length bars from duplicate points are invisible to every
    invariant downstream and are dropped.
    """
    dm = validate_distance_matrix(dm)
    n = dm.shape[0]
    iu, ju, w = _sorted_edges(dm, float(np.max(dm)) if n > 1 else 0.0)
    uf = _UnionFind(n)
    bars = []
    for e in range(len(w)):
        if uf.union(int(iu[e]), int(ju[e])) and w[e] > 0:
            bars.append(Bar(0.0, float(w[e])))
    roots = {uf.find(i) for i in range(n)}
    bars.extend(Bar(0.0, INF) for _ in roots)
    return Barcode(0, bars)


@numba.njit(cache=True)
def _enum_triangles(dm, cap):  # pragma: no cover - exercised via vr_h1
    n = dm.shape[0]
    cnt = 0
    for i in range(n):
        for j in range(i + 1, n):
            dij = dm[i, j]
            if dij > cap:
                continue
            for k in range(j + 1, n):
                w = dij
                if dm[i, k] > w:
                    w = dm[i, k]
                if dm[j, k] > w:
                    w = dm[j, k]
                if w <= cap:
                    cnt += 1
    tri = np.empty((cnt, 3), dtype=np.int64)
    wt = np.empty(cnt, dtype=np.float64)
    c = 0
    for i in range(n):
        for j in range(i + 1, n):
            dij = dm[i, j]
            if dij > cap:
                continue
            for k in range(j + 1, n):
                w = dij
                if dm[i, k] > w:
                    w = dm[i, k]
                if dm[j, k] > w:
                    w = dm[j, k]
                if w <= cap:
                    tri[c, 0] = i
                    tri[c, 1] = j
                    tri[c, 2] = k
                    wt[c] = w
                    c += 1
    return tri, wt


@numba.njit(cache=True)
def _scan_down(work, from_word):  # pragma: no cover
    for w in range(from_word, -1, -1):
        v = work[w]
        if v != np.uint64(0):
            b = 63
            while (v >> np.uint64(b)) & np.uint64(1) == np.uint64(0):
                b -= 1
            return (w << 6) + b
    return -1


@numba.njit(cache=True)
def _reduce_triangle_columns(tri_rows, n_edges):  # pragma: no cover
    """Column reduction of the triangle block; returns the paired edge per
    triangle column (-1 when the column reduces to zero).

    A column whose low is fresh is recorded as a raw pivot without ever
    materializing it; only colliding columns touch the bit-packed work
    buffer. Raw pivots stay valid because any column with the right low
    may serve for elimination.
    """
    m2 = tri_rows.shape[0]
    nwords = (n_edges + 63) // 64
    work = np.zeros(nwords, dtype=np.uint64)
    pivot = np.full(n_edges, -1, dtype=np.int64)
    stored_of_low = np.full(n_edges, -1, dtype=np.int64)
    col_store = np.zeros((n_edges + 1, nwords), dtype=np.uint64)
    n_stored = 0
    pair_edge = np.full(m2, -1, dtype=np.int64)
    one = np.uint64(1)
    for j in range(m2):
        r2 = tri_rows[j, 2]
        if pivot[r2] == -1:
            pivot[r2] = j
            pair_edge[j] = r2
            continue
        top = r2 >> 6
        for w in range(top + 1):
            work[w] = np.uint64(0)
        for k in range(3):
            r = tri_rows[j, k]
            work[r >> 6] ^= one << np.uint64(r & 63)
        low = r2
        while low >= 0:
            p = pivot[low]
            if p == -1:
                pivot[low] = j
                pair_edge[j] = low
                s = n_stored
                n_stored += 1
                for w in range((low >> 6) + 1):
                    col_store[s, w] = work[w]
                stored_of_low[low] = s
                break
            s = stored_of_low[low]
            loww = low >> 6
            if s == -1:
                for k in range(3):
                    r = tri_rows[p, k]
                    work[r >> 6] ^= one << np.uint64(r & 63)
            else:
                for w in range(loww + 1):
                    work[w] ^= col_store[s, w]
            low = _scan_down(work, loww)
    return pair_edge


def _h1_at_cap(dm: np.ndarray, cap: float):
    """Finite H1 bars plus the births still unbounded at the cap."""
    n = dm.shape[0]
    iu, ju, w = _sorted_edges(dm, cap)
    m1 = len(w)
    uf = _UnionFind(n)
    positive = np.zeros(m1, dtype=bool)
    for e in range(m1):
        positive[e] = not uf.union(int(iu[e]), int(ju[e]))
    edge_order = np.full((n, n), -1, dtype=np.int64)
    edge_order[iu, ju] = np.arange(m1)
    edge_order[ju, iu] = np.arange(m1)
    tri, wt = _enum_triangles(dm, cap)
    if len(wt):
        order = np.lexsort((tri[:, 2], tri[:, 1], tri[:, 0], wt))
        tri, wt = tri[order], wt[order]
        tri_rows = np.sort(
            np.stack(
                [
                    edge_order[tri[:, 0], tri[:, 1]],
                    edge_order[tri[:, 0], tri[:, 2]],
                    edge_order[tri[:, 1], tri[:, 2]],
                ],
                axis=1,
            ),
            axis=1,
        )
        pair_edge = _reduce_triangle_columns(tri_rows, m1)
    else:
        pair_edge = np.empty(0, dtype=np.int64)
    paired = pair_edge[pair_edge >= 0]
    finite = [
        (float(w[e]), float(wt[j]))
        for j, e in enumerate(pair_edge)
        if e >= 0 and w[e] < wt[j]
    ]
    is_paired = np.zeros(m1, dtype=bool)
    is_paired[paired] = True
    unbounded = [float(w[e]) for e in range(m1) if positive[e] and not is_paired[e]]
    return finite, unbounded


def vr_h1(dm, max_filtration: float) -> Barcode:
    """Degree-1 barcode of the filtration capped at ``max_filtration``.

    Features that are still alive at the cap come out as (birth, inf) and
    are flagged in the log; at a cap of at least the diameter none exist.
    """
    dm = validate_distance_matrix(dm)
    if max_filtration <= 0:
        raise ValueError("max_filtration must be positive")
    finite, unbounded = _h1_at_cap(dm, float(max_filtration))
    if unbounded:
        log.warning(
            "%d degree-1 feature(s) unbounded at max_filtration=%g",
            len(unbounded),
            max_filtration,
        )
    bars = [Bar(b, d) for b, d in finite]
    bars.extend(Bar(b, INF) for b in unbounded)
    return Barcode(1, bars)


def _vr_h1_full(dm: np.ndarray) -> Barcode:
    """H1 of the uncapped filtration, growing the cap only as needed.

    Identical to capping at the diameter: the filtration below any cap is
    the same, and a feature dying above the cap shows up as unbounded and
    triggers a retry. At the diameter the complex is a cone, so nothing
    survives.
    """
    n = dm.shape[0]
    if n < 3:
        return Barcode(1, [])
    diameter = float(np.max(dm))
    if diameter == 0.0:
        return Barcode(1, [])
    # connectivity scale: the largest single-linkage merge distance
    iu, ju, w = _sorted_edges(dm, diameter)
    uf = _UnionFind(n)
    max_merge = 0.0
    for e in range(len(w)):
        if uf.union(int(iu[e]), int(ju[e])):
            max_merge = float(w[e])
    cap = min(diameter, max(2.0 * max_merge, 1e-9))
    while True:
        finite, unbounded = _h1_at_cap(dm, cap)
        if not unbounded or cap >= diameter:
            break
        cap = min(1.5 * cap, diameter)
    if unbounded:  # cannot happen at the diameter; guard anyway
        raise AssertionError("unbounded degree-1 feature at full diameter")
    return Barcode(1, [Bar(b, d) for b, d in finite])


def vr_persistence(points, degrees=(0, 1), max_filtration: float | None = None):
    """Barcodes of a point cloud per homology degree.

    ``max_filtration=None`` means the full filtration (every simplex up to
    the diameter); degree 0 always uses the full edge set.
    """
    degrees = set(degrees)
    if not degrees <= {0, 1}:
        raise ValueError("only degrees 0 and 1 are supported")
    pts = np.asarray(points, dtype=np.float64)
    dm = pairwise_distances(pts)
    out = {}
    if 0 in degrees:
        out[0] = vr_h0(dm)
    if 1 in degrees:
        if max_filtration is None:
            out[1] = _vr_h1_full(dm)
        else:
            out[1] = vr_h1(dm, max_filtration)
    return out
