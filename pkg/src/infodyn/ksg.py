"""Kraskov-Stogbauer-Grassberger estimators (algorithms 1 and 2) plus the
Kozachenko-Leonenko entropy, in nats.

Algorithm 1 takes the shared max-norm radius to the K-th neighbor in the full
joint space and counts marginal neighbors strictly within it; algorithm 2
takes per-marginal radii from the K-th joint neighbor and counts within or on
them.  Local values unroll the expectations per sample.  Exact duplicates are
broken by a tiny seeded uniform jitter added once at finalisation.
"""

from __future__ import annotations

import numpy as np

from .base import Calculator
from .embedding import (EmbeddingSpec, history_tuple_arrays, predictive_tuple_arrays,
                        te_tuple_arrays)
from .exceptions import DataError
from .mathutils import digamma, digamma_vec
from .neighbors import make_index, rectangle_counts
from .validation import as_multiseries, check_equal_length


def _subspace_distances(block: np.ndarray, neighbor_idx: np.ndarray) -> np.ndarray:
    """Max-norm distance from each point to each of its listed neighbors,
    within the coordinates of `block`.  Returns (N, K)."""
    if block.shape[1] == 0:
        return np.zeros(neighbor_idx.shape)
    diffs = np.abs(block[neighbor_idx] - block[:, None, :])
    return diffs.max(axis=2)


class _KsgCalculator(Calculator):
    units = "nats"

    def _check_k(self, n: int) -> int:
        k = int(self.K)
        if k < 1 or k >= n:
            raise DataError(f"KSG needs 1 <= K < N, got K={k} with N={n}")
        return k

    def _post_finalise(self) -> None:
        if self.noise_scale <= 0.0:
            return
        rng = np.random.default_rng(np.random.SeedSequence(entropy=int(self.seed)))
        for name in self._variables:
            block = self._store[name].astype(float, copy=True)
            for col in range(block.shape[1]):
                sd = block[:, col].std(ddof=1) if block.shape[0] > 1 else 0.0
                amp = self.noise_scale * (sd if sd > 0.0 else 1.0)
                block[:, col] = block[:, col] + rng.uniform(0.0, amp, size=block.shape[0])
            self._store.replace(name, block)

    # ------------------------------------------------------------- estimators
    def _joint_index(self, blocks):
        filled = [b for b in blocks if b.shape[1] > 0]
        joint = np.column_stack(filled)
        return make_index(joint, self.neighbor_engine)

    def _strict_counts(self, blocks, radii):
        """Neighbor counts strictly inside per-point radii in a subspace."""
        filled = [b for b in blocks if b.shape[1] > 0]
        if not filled:
            return np.full(radii.shape[0], radii.shape[0] - 1, dtype=np.int64)
        return make_index(np.column_stack(filled), self.neighbor_engine).range_counts(
            radii, strict=True)

    def _inclusive_counts(self, blocks, radii):
        filled = [b for b in blocks if b.shape[1] > 0]
        if not filled:
            return np.full(radii.shape[0], radii.shape[0] - 1, dtype=np.int64)
        return make_index(np.column_stack(filled), self.neighbor_engine).range_counts(
            radii, strict=False)

    def _multi_mi(self, blocks) -> tuple[float, np.ndarray]:
        """Generalised KSG mutual information between the given blocks
        (G = 2 is plain MI; larger G is the multi-information form)."""
        n = blocks[0].shape[0]
        k = self._check_k(n)
        g = len(blocks)
        joint = self._joint_index(blocks)
        if int(self.algorithm) == 1:
            eps = joint.kth_distances(k)
            local = np.full(n, digamma(k) + (g - 1) * digamma(n))
            for block in blocks:
                local -= digamma_vec(self._strict_counts([block], eps) + 1)
        elif int(self.algorithm) == 2:
            # Per-marginal radii span the smallest rectangle holding all K
            # joint neighbors; the -1/K correction assumes this construction.
            nbrs = joint.knn_indices(k)
            local = np.full(n, digamma(k) - (g - 1) / k + (g - 1) * digamma(n))
            for block in blocks:
                radii = _subspace_distances(block, nbrs).max(axis=1)
                local -= digamma_vec(self._inclusive_counts([block], radii))
        else:
            raise DataError(f"KSG algorithm must be 1 or 2, got {self.algorithm}")
        return local.mean(), local

    def _cmi(self, y, x, z) -> tuple[float, np.ndarray]:
        """KSG conditional mutual information I(X;Y|Z) with Z possibly empty."""
        n = x.shape[0]
        k = self._check_k(n)
        joint = self._joint_index([x, y, z])
        if int(self.algorithm) == 1:
            eps = joint.kth_distances(k)
            n_z = self._strict_counts([z], eps)
            n_xz = self._strict_counts([x, z], eps)
            n_yz = self._strict_counts([y, z], eps)
            local = (digamma(k) + digamma_vec(n_z + 1)
                     - digamma_vec(n_xz + 1) - digamma_vec(n_yz + 1))
        elif int(self.algorithm) == 2:
            # Per-variable radii span the smallest box holding all K joint
            # neighbors; joint-subspace counts use the box, not a shared ball.
            nbrs = joint.knn_indices(k)
            r_x = _subspace_distances(x, nbrs).max(axis=1)
            r_y = _subspace_distances(y, nbrs).max(axis=1)
            r_z = _subspace_distances(z, nbrs).max(axis=1) if z.shape[1] else None

            def box_counts(blocks, radii_list):
                pairs = [(b, r) for b, r in zip(blocks, radii_list) if b.shape[1] > 0]
                if not pairs:
                    return np.full(n, n - 1, dtype=np.int64)
                return rectangle_counts([b for b, _ in pairs], [r for _, r in pairs],
                                        self.neighbor_engine)

            n_z = box_counts([z], [r_z])
            n_xz = box_counts([x, z], [r_x, r_z])
            n_yz = box_counts([y, z], [r_y, r_z])
            local = (digamma(k) - 2.0 / k + digamma_vec(n_z)
                     - digamma_vec(n_xz) + 1.0 / n_xz
                     - digamma_vec(n_yz) + 1.0 / n_yz)
        else:
            raise DataError(f"KSG algorithm must be 1 or 2, got {self.algorithm}")
        return local.mean(), local


class KozachenkoEntropy(_KsgCalculator):
    """Kozachenko-Leonenko differential entropy from K-th neighbor distances."""

    measure = "entropy"
    _variables = ("x",)

    def __init__(self, K=4, noise_scale=1e-8, seed=0, neighbor_engine="auto"):
        self.K = K
        self.noise_scale = noise_scale
        self.seed = seed
        self.neighbor_engine = neighbor_engine

    def _ingest(self, x):
        data = as_multiseries(x, name="x")
        return {"x": data}, data.shape[0], 0, 0

    def _evaluate(self, arrays):
        data = arrays["x"]
        n, d = data.shape
        k = self._check_k(n)
        eps = make_index(data, self.neighbor_engine).kth_distances(k)
        if np.any(eps <= 0.0):
            raise DataError(
                "zero K-th neighbor radius (exact duplicates); enable noise_scale jitter")
        local = -digamma(k) + digamma(n) + d * np.log(2.0 * eps)
        return local.mean(), local


class KsgMutualInfo(_KsgCalculator):
    measure = "mi"
    _variables = ("x", "y")
    _shuffle_var = "y"

    def __init__(self, K=4, algorithm=1, noise_scale=1e-8, seed=0, neighbor_engine="auto"):
        self.K = K
        self.algorithm = algorithm
        self.noise_scale = noise_scale
        self.seed = seed
        self.neighbor_engine = neighbor_engine

    def _ingest(self, x, y):
        dx = as_multiseries(x, name="x")
        dy = as_multiseries(y, name="y")
        check_equal_length(dx, dy, names=("x", "y"))
        return {"x": dx, "y": dy}, dx.shape[0], 0, 0

    def _evaluate(self, arrays):
        return self._multi_mi([arrays["x"], arrays["y"]])


class KsgMultiInfo(_KsgCalculator):
    """Multi-information via the G-marginal generalisation of the MI form."""

    measure = "multi"
    _variables = ("x",)

    def __init__(self, K=4, algorithm=1, noise_scale=1e-8, seed=0, neighbor_engine="auto"):
        self.K = K
        self.algorithm = algorithm
        self.noise_scale = noise_scale
        self.seed = seed
        self.neighbor_engine = neighbor_engine

    def _ingest(self, rows):
        data = as_multiseries(rows, name="x", min_cols=2)
        return {"x": data}, data.shape[0], 0, 0

    def _evaluate(self, arrays):
        data = arrays["x"]
        return self._multi_mi([data[:, j:j + 1] for j in range(data.shape[1])])


class KsgConditionalMutualInfo(_KsgCalculator):
    measure = "cmi"
    _variables = ("x", "y", "z")
    _shuffle_var = "y"

    def __init__(self, K=4, algorithm=1, noise_scale=1e-8, seed=0, neighbor_engine="auto"):
        self.K = K
        self.algorithm = algorithm
        self.noise_scale = noise_scale
        self.seed = seed
        self.neighbor_engine = neighbor_engine

    def _ingest(self, x, y, z=None):
        dx = as_multiseries(x, name="x")
        dy = as_multiseries(y, name="y")
        dz = as_multiseries(z, name="z") if z is not None else np.empty((dx.shape[0], 0))
        check_equal_length(dx, dy, dz, names=("x", "y", "z"))
        return {"x": dx, "y": dy, "z": dz}, dx.shape[0], 0, 0

    def _evaluate(self, arrays):
        return self._cmi(arrays["y"], arrays["x"], arrays["z"])


class KsgTransferEntropy(_KsgCalculator):
    """TE as KSG conditional MI of the embedded source against dest-next given dest-past."""

    measure = "te"
    _variables = ("source", "next", "past")
    _shuffle_var = "source"

    def __init__(self, k=1, tau_k=1, l=1, tau_l=1, u=1, K=4, algorithm=1,
                 noise_scale=1e-8, seed=0, neighbor_engine="auto"):
        self.k = k
        self.tau_k = tau_k
        self.l = l
        self.tau_l = tau_l
        self.u = u
        self.K = K
        self.algorithm = algorithm
        self.noise_scale = noise_scale
        self.seed = seed
        self.neighbor_engine = neighbor_engine

    def _spec(self):
        return EmbeddingSpec(k=self.k, tau_k=self.tau_k, l=self.l, tau_l=self.tau_l, u=self.u)

    def _ingest(self, source, dest):
        dst = as_multiseries(dest, name="dest")
        s, nxt, past, _, offset = te_tuple_arrays(source, dst, self._spec())
        return {"source": s, "next": nxt, "past": past}, dst.shape[0], offset, 0

    def _evaluate(self, arrays):
        return self._cmi(arrays["source"], arrays["next"], arrays["past"])


class KsgConditionalTransferEntropy(KsgTransferEntropy):
    measure = "cte"
    _variables = ("source", "next", "past", "cond")
    _shuffle_var = "source"

    def _ingest(self, source, dest, cond):
        dst = as_multiseries(dest, name="dest")
        s, nxt, past, cond_state, offset = te_tuple_arrays(source, dst, self._spec(), cond=cond)
        return ({"source": s, "next": nxt, "past": past, "cond": cond_state},
                dst.shape[0], offset, 0)

    def _evaluate(self, arrays):
        conditioning = np.column_stack([arrays["past"], arrays["cond"]])
        return self._cmi(arrays["source"], arrays["next"], conditioning)


class KsgActiveInfoStorage(_KsgCalculator):
    measure = "ais"
    _variables = ("past", "next")
    _shuffle_var = "past"

    def __init__(self, k=1, tau_k=1, K=4, algorithm=1, noise_scale=1e-8, seed=0,
                 neighbor_engine="auto"):
        self.k = k
        self.tau_k = tau_k
        self.K = K
        self.algorithm = algorithm
        self.noise_scale = noise_scale
        self.seed = seed
        self.neighbor_engine = neighbor_engine

    def _ingest(self, x):
        data = as_multiseries(x, name="x")
        past, nxt, offset = history_tuple_arrays(data, self.k, self.tau_k)
        return {"past": past, "next": nxt}, data.shape[0], offset, 0

    def _evaluate(self, arrays):
        return self._multi_mi([arrays["past"], arrays["next"]])


class KsgPredictiveInfo(KsgActiveInfoStorage):
    measure = "pi"
    _variables = ("past", "future")
    _shuffle_var = "past"

    def _ingest(self, x):
        data = as_multiseries(x, name="x")
        past, future, offset = predictive_tuple_arrays(data, self.k, self.tau_k)
        tail = data.shape[0] - offset - past.shape[0]
        return {"past": past, "future": future}, data.shape[0], offset, tail

    def _evaluate(self, arrays):
        return self._multi_mi([arrays["past"], arrays["future"]])
