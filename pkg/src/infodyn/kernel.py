"""Box-kernel (step kernel, max-norm) plug-in estimators, in bits.

Probabilities are the fraction of samples within kernel width r of each
observation under the max norm, with inclusive comparison (<= r) and the
sample itself included, so every estimate is finite.  With `normalise` set
(the default) each coordinate is standardised first and r is read in units
of standard deviations (default r = 0.5).
"""

from __future__ import annotations

import numpy as np

from .base import Calculator
from .embedding import EmbeddingSpec, history_tuple_arrays, te_tuple_arrays
from .exceptions import DataError
from .mathutils import normalise
from .validation import as_multiseries, check_equal_length

_CHUNK = 256
_GRID_THRESHOLD = 512


def box_counts_pairwise(data: np.ndarray, r: float) -> np.ndarray:
    """Inclusive max-norm neighbor counts (self included) by exhaustive scan."""
    n = data.shape[0]
    out = np.empty(n, dtype=np.int64)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        block = np.abs(data[lo:hi, 0:1] - data[None, :, 0])
        for dim in range(1, data.shape[1]):
            np.maximum(block, np.abs(data[lo:hi, dim:dim + 1] - data[None, :, dim]), out=block)
        out[lo:hi] = (block <= r).sum(axis=1)
    return out


def box_counts_grid(data: np.ndarray, r: float) -> np.ndarray:
    """Box-assisted counts: bucket on up to two coordinates, then compare exactly.

    Cell width is padded by a relative 1e-9 so that true neighbors always sit
    in adjacent cells despite rounding; final comparisons are the same exact
    elementwise tests as the pairwise scan, so counts agree bit for bit.
    """
    n, d = data.shape
    spreads = data.max(axis=0) - data.min(axis=0)
    grid_dims = list(np.argsort(spreads)[::-1][:min(2, d)])
    width = r * (1.0 + 1e-9)
    if width <= 0.0:
        raise DataError(f"kernel width must be positive, got {r}")
    cells = np.floor((data[:, grid_dims] - data[:, grid_dims].min(axis=0)) / width).astype(np.int64)
    buckets: dict[tuple, np.ndarray] = {}
    order = np.lexsort(cells.T[::-1])
    sorted_cells = cells[order]
    change = np.nonzero(np.any(np.diff(sorted_cells, axis=0) != 0, axis=1))[0] + 1
    starts = np.concatenate([[0], change, [n]])
    for a, b in zip(starts[:-1], starts[1:]):
        buckets[tuple(sorted_cells[a])] = order[a:b]
    out = np.empty(n, dtype=np.int64)
    offsets = [np.array(off) for off in np.ndindex(*([3] * len(grid_dims)))]
    for key, members in buckets.items():
        cand_list = []
        for off in offsets:
            neighbor_key = tuple(np.array(key) + off - 1)
            if neighbor_key in buckets:
                cand_list.append(buckets[neighbor_key])
        cand = np.concatenate(cand_list)
        for lo in range(0, members.size, _CHUNK):
            part = members[lo:lo + _CHUNK]
            block = np.abs(data[part, 0:1] - data[cand, 0][None, :])
            for dim in range(1, d):
                np.maximum(block, np.abs(data[part, dim:dim + 1] - data[cand, dim][None, :]),
                           out=block)
            out[part] = (block <= r).sum(axis=1)
    return out


def box_counts(data: np.ndarray, r: float, counter: str = "auto") -> np.ndarray:
    if counter == "pairwise":
        return box_counts_pairwise(data, r)
    if counter == "grid":
        return box_counts_grid(data, r)
    if counter == "auto":
        if data.shape[0] > _GRID_THRESHOLD:
            return box_counts_grid(data, r)
        return box_counts_pairwise(data, r)
    raise DataError(f"unknown kernel counter {counter!r}")


def kernel_density_at(point, samples, r: float) -> float:
    """Box-kernel probability estimate at an arbitrary point (self-exclusive
    only if the point is not among the samples)."""
    data = as_multiseries(samples, name="samples")
    q = np.asarray(point, dtype=float).reshape(1, -1)
    if q.shape[1] != data.shape[1]:
        raise DataError(f"point has {q.shape[1]} dims but samples have {data.shape[1]}")
    dist = np.max(np.abs(data - q), axis=1) if data.shape[1] > 1 else np.abs(data[:, 0] - q[0, 0])
    return float((dist <= r).sum()) / data.shape[0]


def suggest_min_width(n: int, d: int, k_min: int = 10) -> float:
    """Smallest width avoiding undersampling: K_min <= N/(6/2r)^d, i.e.
    r = 3 (K_min/N)^(1/d)."""
    if n < 1 or d < 1 or k_min < 1:
        raise DataError("suggest_min_width needs positive N, d and K_min")
    return 3.0 * (k_min / n) ** (1.0 / d)


class _KernelCalculator(Calculator):
    units = "bits"

    def _post_finalise(self) -> None:
        if not self.normalise:
            return
        for name in self._variables:
            block = self._store[name]
            if block.shape[1] == 0:
                continue
            self._store.replace(
                name, np.column_stack([normalise(block[:, j]) for j in range(block.shape[1])]))

    def _counts(self, blocks):
        filled = [b for b in blocks if b.shape[1] > 0]
        data = np.column_stack(filled)
        return box_counts(data, float(self.r), self.counter)


class KernelEntropy(_KernelCalculator):
    measure = "entropy"
    _variables = ("x",)

    def __init__(self, r=0.5, normalise=True, counter="auto"):
        self.r = r
        self.normalise = normalise
        self.counter = counter

    def _ingest(self, x):
        data = as_multiseries(x, name="x")
        return {"x": data}, data.shape[0], 0, 0

    def _evaluate(self, arrays):
        counts = self._counts([arrays["x"]])
        local = np.log2(arrays["x"].shape[0] / counts)
        return local.mean(), local


class KernelMutualInfo(_KernelCalculator):
    measure = "mi"
    _variables = ("x", "y")
    _shuffle_var = "y"

    def __init__(self, r=0.5, normalise=True, counter="auto"):
        self.r = r
        self.normalise = normalise
        self.counter = counter

    def _ingest(self, x, y):
        dx = as_multiseries(x, name="x")
        dy = as_multiseries(y, name="y")
        check_equal_length(dx, dy, names=("x", "y"))
        return {"x": dx, "y": dy}, dx.shape[0], 0, 0

    def _evaluate(self, arrays):
        n = arrays["x"].shape[0]
        # single-ratio form: with y identical to x the argument reduces to
        # exactly n/count, so kernel MI(X, X) matches kernel entropy bitwise
        c_xy = self._counts([arrays["x"], arrays["y"]])
        c_x = self._counts([arrays["x"]])
        c_y = self._counts([arrays["y"]])
        local = np.log2((c_xy * n) / (c_x * c_y))
        return local.mean(), local


class KernelMultiInfo(_KernelCalculator):
    measure = "multi"
    _variables = ("x",)

    def __init__(self, r=0.5, normalise=True, counter="auto"):
        self.r = r
        self.normalise = normalise
        self.counter = counter

    def _ingest(self, rows):
        data = as_multiseries(rows, name="x", min_cols=2)
        return {"x": data}, data.shape[0], 0, 0

    def _evaluate(self, arrays):
        data = arrays["x"]
        n = data.shape[0]
        local = np.log2(self._counts([data])) - np.log2(n)
        for j in range(data.shape[1]):
            local += np.log2(n) - np.log2(self._counts([data[:, j:j + 1]]))
        return local.mean(), local


class KernelTransferEntropy(_KernelCalculator):
    """TE from four joint-space box counts (next+past+source, past+source,
    next+past, past).

    `bias_correction` switches every probability to the self-excluded
    (count-1)/(N-1) form; tuples where any corrected count hits zero are
    dropped from the average (their local value is undefined).
    """

    measure = "te"
    _variables = ("source", "next", "past")
    _shuffle_var = "source"

    def __init__(self, k=1, tau_k=1, l=1, tau_l=1, u=1, r=0.5, normalise=True,
                 counter="auto", bias_correction=False):
        self.k = k
        self.tau_k = tau_k
        self.l = l
        self.tau_l = tau_l
        self.u = u
        self.r = r
        self.normalise = normalise
        self.counter = counter
        self.bias_correction = bias_correction

    def _spec(self):
        return EmbeddingSpec(k=self.k, tau_k=self.tau_k, l=self.l, tau_l=self.tau_l, u=self.u)

    def _ingest(self, source, dest):
        dst = as_multiseries(dest, name="dest")
        s, nxt, past, _, offset = te_tuple_arrays(source, dst, self._spec())
        return {"source": s, "next": nxt, "past": past}, dst.shape[0], offset, 0

    def _evaluate(self, arrays):
        c_xps = self._counts([arrays["next"], arrays["past"], arrays["source"]])
        c_ps = self._counts([arrays["past"], arrays["source"]])
        c_xp = self._counts([arrays["next"], arrays["past"]])
        c_p = self._counts([arrays["past"]])
        if self.bias_correction:
            with np.errstate(divide="ignore", invalid="ignore"):
                local = np.log2(((c_xps - 1.0) * (c_p - 1.0))
                                / ((c_ps - 1.0) * (c_xp - 1.0)))
            valid = np.isfinite(local)
            avg = local[valid].mean() if valid.any() else 0.0
            local = np.where(valid, local, 0.0)
            return avg, local
        local = np.log2((c_xps * c_p) / (c_ps * c_xp))
        return local.mean(), local


class KernelActiveInfoStorage(_KernelCalculator):
    measure = "ais"
    _variables = ("past", "next")
    _shuffle_var = "past"

    def __init__(self, k=1, tau_k=1, r=0.5, normalise=True, counter="auto"):
        self.k = k
        self.tau_k = tau_k
        self.r = r
        self.normalise = normalise
        self.counter = counter

    def _ingest(self, x):
        data = as_multiseries(x, name="x")
        past, nxt, offset = history_tuple_arrays(data, self.k, self.tau_k)
        return {"past": past, "next": nxt}, data.shape[0], offset, 0

    def _evaluate(self, arrays):
        n = arrays["past"].shape[0]
        c_joint = self._counts([arrays["past"], arrays["next"]])
        local = np.log2((c_joint * n)
                        / (self._counts([arrays["past"]]) * self._counts([arrays["next"]])))
        return local.mean(), local
