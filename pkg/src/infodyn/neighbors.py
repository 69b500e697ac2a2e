"""Max-norm nearest-neighbor queries: exhaustive scan and k-d tree back ends.

Both back ends return identical results on identical inputs: all point-to-point
distances are single-rounding Chebyshev computations, strict counts use the
predecessor-radius identity (d < r <=> d <= pred(r) in float64), and the K
nearest neighbors are selected by (distance, index) order so ties resolve the
same way everywhere.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree

# Below this many points the exhaustive scan is the default engine.
NAIVE_THRESHOLD = 2000
_CHUNK = 256


def chebyshev_to_all(points: np.ndarray, row: int) -> np.ndarray:
    """Max-norm distances from points[row] to every point (self included)."""
    return np.max(np.abs(points - points[row]), axis=1) if points.shape[1] > 1 \
        else np.abs(points[:, 0] - points[row, 0])


def _chunk_distances(points: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """(hi-lo, N) max-norm distance block, accumulated dimension by dimension."""
    block = np.abs(points[lo:hi, 0:1] - points[None, :, 0])
    for dim in range(1, points.shape[1]):
        np.maximum(block, np.abs(points[lo:hi, dim:dim + 1] - points[None, :, dim]), out=block)
    return block


class ExhaustiveIndex:
    """Chunked brute-force scan; the permanent testing oracle."""

    def __init__(self, points: np.ndarray):
        self.points = np.ascontiguousarray(points, dtype=float)
        self.n = self.points.shape[0]

    def kth_distances(self, k: int) -> np.ndarray:
        """Distance to the k-th nearest neighbor (self excluded) per point."""
        out = np.empty(self.n)
        for lo in range(0, self.n, _CHUNK):
            hi = min(lo + _CHUNK, self.n)
            block = _chunk_distances(self.points, lo, hi)
            block[np.arange(lo, hi) - lo, np.arange(lo, hi)] = np.inf
            out[lo:hi] = np.partition(block, k - 1, axis=1)[:, k - 1]
        return out

    def knn_indices(self, k: int) -> np.ndarray:
        """Indices of the k nearest neighbors per point, ranked by (distance, index)."""
        out = np.empty((self.n, k), dtype=np.int64)
        for lo in range(0, self.n, _CHUNK):
            hi = min(lo + _CHUNK, self.n)
            block = _chunk_distances(self.points, lo, hi)
            rows = np.arange(lo, hi) - lo
            block[rows, np.arange(lo, hi)] = np.inf
            kth = np.partition(block, k - 1, axis=1)[:, k - 1]
            for r in range(hi - lo):
                cand = np.nonzero(block[r] <= kth[r])[0]
                order = np.lexsort((cand, block[r][cand]))
                out[lo + r] = cand[order[:k]]
        return out

    def range_counts(self, radii: np.ndarray, strict: bool) -> np.ndarray:
        """Neighbors (self excluded) within radius per point; strict means d < r."""
        radii = np.asarray(radii, dtype=float)
        out = np.empty(self.n, dtype=np.int64)
        for lo in range(0, self.n, _CHUNK):
            hi = min(lo + _CHUNK, self.n)
            block = _chunk_distances(self.points, lo, hi)
            r = radii[lo:hi, None]
            inside = (block < r) if strict else (block <= r)
            counts = inside.sum(axis=1)
            self_in = (0.0 < radii[lo:hi]) if strict else np.ones(hi - lo, dtype=bool)
            out[lo:hi] = counts - self_in
        return out


class KdTreeIndex:
    """k-d tree back end (used above NAIVE_THRESHOLD points by default)."""

    def __init__(self, points: np.ndarray):
        self.points = np.ascontiguousarray(points, dtype=float)
        self.n = self.points.shape[0]
        self._tree = cKDTree(self.points)

    def kth_distances(self, k: int) -> np.ndarray:
        dist, idx = self._tree.query(self.points, k=k + 1, p=np.inf)
        # Drop the self entry from each row; if exact-duplicate ties crowded it
        # out of the k+1 returned, drop the last entry instead (same distance).
        drop = idx == np.arange(self.n)[:, None]
        drop[~drop.any(axis=1), -1] = True
        kept = dist[~drop].reshape(self.n, k)
        return kept[:, k - 1]

    def knn_indices(self, k: int) -> np.ndarray:
        kth = self.kth_distances(k)
        out = np.empty((self.n, k), dtype=np.int64)
        neighborhoods = self._tree.query_ball_point(self.points, kth, p=np.inf)
        for i, cand in enumerate(neighborhoods):
            cand = np.asarray([c for c in cand if c != i], dtype=np.int64)
            dists = np.max(np.abs(self.points[cand] - self.points[i]), axis=1) \
                if self.points.shape[1] > 1 else np.abs(self.points[cand, 0] - self.points[i, 0])
            order = np.lexsort((cand, dists))
            out[i] = cand[order[:k]]
        return out

    def range_counts(self, radii: np.ndarray, strict: bool) -> np.ndarray:
        radii = np.asarray(radii, dtype=float)
        if strict:
            query_r = np.nextafter(radii, -np.inf)
            self_in = 0.0 < radii
        else:
            query_r = radii
            self_in = np.ones(self.n, dtype=bool)
        counts = self._tree.query_ball_point(self.points, np.maximum(query_r, 0.0),
                                             p=np.inf, return_length=True)
        counts = np.asarray(counts, dtype=np.int64)
        # A negative strict radius admits nothing, including the self point.
        counts[query_r < 0.0] = 0
        return counts - self_in


def rectangle_counts(groups: list[np.ndarray], radii: list[np.ndarray],
                     engine: str = "auto") -> np.ndarray:
    """Neighbors (self excluded) inside a per-query box: max-norm distance in
    group g within radii[g] for every g simultaneously, inclusive comparison.

    Queries are the points themselves.  The tree back end generates candidates
    from a ball of the largest per-query radius in the stacked space (which
    contains the box) and then filters exactly, so both engines agree.
    """
    n = groups[0].shape[0]
    radii = [np.asarray(r, dtype=float) for r in radii]
    if engine == "auto":
        engine = "naive" if n <= NAIVE_THRESHOLD else "tree"
    if engine == "naive":
        out = np.empty(n, dtype=np.int64)
        for lo in range(0, n, _CHUNK):
            hi = min(lo + _CHUNK, n)
            inside = np.ones((hi - lo, n), dtype=bool)
            for g, r in zip(groups, radii):
                g = np.ascontiguousarray(g, dtype=float)
                block = np.abs(g[lo:hi, 0:1] - g[None, :, 0])
                for dim in range(1, g.shape[1]):
                    np.maximum(block, np.abs(g[lo:hi, dim:dim + 1] - g[None, :, dim]), out=block)
                inside &= block <= r[lo:hi, None]
            out[lo:hi] = inside.sum(axis=1) - 1
        return out
    if engine == "tree":
        stacked = np.column_stack(groups)
        tree = cKDTree(stacked)
        ball_r = np.max(np.column_stack(radii), axis=1)
        neighborhoods = tree.query_ball_point(stacked, ball_r, p=np.inf)
        out = np.empty(n, dtype=np.int64)
        for i, cand in enumerate(neighborhoods):
            cand = np.asarray(cand, dtype=np.int64)
            ok = np.ones(cand.shape[0], dtype=bool)
            for g, r in zip(groups, radii):
                d = np.max(np.abs(g[cand] - g[i]), axis=1) if g.shape[1] > 1 \
                    else np.abs(g[cand, 0] - g[i, 0])
                ok &= d <= r[i]
            out[i] = int(ok.sum()) - 1
        return out
    raise ValueError(f"unknown neighbor engine {engine!r}")


def make_index(points: np.ndarray, engine: str = "auto"):
    points = np.ascontiguousarray(points, dtype=float)
    if engine == "naive":
        return ExhaustiveIndex(points)
    if engine == "tree":
        return KdTreeIndex(points)
    if engine == "auto":
        if points.shape[0] <= NAIVE_THRESHOLD:
            return ExhaustiveIndex(points)
        return KdTreeIndex(points)
    raise ValueError(f"unknown neighbor engine {engine!r}")
