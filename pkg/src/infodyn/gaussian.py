"""Linear-Gaussian model estimators via covariance determinants, in nats.

Averages come from the closed-form entropy of a multivariate normal,
0.5*ln((2*pi*e)^d |Omega|), combined by sums and differences.  Local values
plug each observation into the fitted normal density, so their mean matches
the determinant-form average only asymptotically (the determinant forms are
what the averages report).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import solve_triangular

from .base import Calculator
from .embedding import EmbeddingSpec, history_tuple_arrays, te_tuple_arrays
from .exceptions import DataError, DegenerateCovarianceError
from .validation import as_multiseries, check_equal_length

LN_2PI = math.log(2.0 * math.pi)


def checked_cholesky(cov: np.ndarray, labels: list[str]) -> np.ndarray:
    """Lower Cholesky factor with a scale-aware pivot check.

    A pivot below 1e-12 times the largest diagonal entry flags a degenerate
    covariance, reporting the dimensions involved up to the failure.
    """
    d = cov.shape[0]
    if d == 0:
        return np.zeros((0, 0))
    max_diag = float(np.max(np.diag(cov)))
    if max_diag <= 0.0:
        raise DegenerateCovarianceError(
            f"degenerate covariance: no variance in dimensions {labels}"
        )
    tol = 1e-12 * max_diag
    L = np.zeros((d, d))
    for j in range(d):
        pivot = cov[j, j] - L[j, :j] @ L[j, :j]
        if pivot < tol:
            raise DegenerateCovarianceError(
                f"degenerate covariance: dimension set {labels[:j + 1]} is "
                f"linearly dependent (pivot {pivot:.3e} < {tol:.3e})"
            )
        L[j, j] = math.sqrt(pivot)
        if j + 1 < d:
            L[j + 1:, j] = (cov[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    return L


class GaussianModel:
    """Sample mean/covariance (N-1 divisor) with log-density evaluation."""

    def __init__(self, data: np.ndarray, labels: list[str] | None = None):
        n, d = data.shape
        if d > 0 and n <= d:
            raise DataError(f"need more samples ({n}) than dimensions ({d}) for a covariance")
        self.d = d
        self.labels = labels or [f"dim{j}" for j in range(d)]
        self.mu = data.mean(axis=0) if d else np.zeros(0)
        if d:
            centred = data - self.mu
            self.cov = centred.T @ centred / (n - 1)
            self.L = checked_cholesky(self.cov, self.labels)
            self.log_det = 2.0 * float(np.sum(np.log(np.diag(self.L))))
        else:
            self.cov = np.zeros((0, 0))
            self.L = np.zeros((0, 0))
            self.log_det = 0.0

    def entropy(self) -> float:
        return 0.5 * (self.d * (LN_2PI + 1.0) + self.log_det)

    def local_entropies(self, data: np.ndarray) -> np.ndarray:
        """-ln p(x_n) under the fitted density."""
        if self.d == 0:
            return np.zeros(data.shape[0])
        centred = data - self.mu
        w = solve_triangular(self.L, centred.T, lower=True)
        mahal = np.sum(w * w, axis=0)
        return 0.5 * (self.d * LN_2PI + self.log_det + mahal)


def _labelled(name: str, block: np.ndarray) -> list[str]:
    return [f"{name}[{j}]" for j in range(block.shape[1])]


class _GaussianCalculator(Calculator):
    units = "nats"

    def _entropy_terms(self, arrays, groups):
        """(plus_entropies, minus_entropies, plus_locals, minus_locals) helper.

        `groups` is (plus, minus) where each entry is a tuple of variable
        names whose columns are joined into one joint-normal block.
        """
        plus, minus = groups
        avg = 0.0
        local = None
        for sign, group_list in ((1.0, plus), (-1.0, minus)):
            for group in group_list:
                blocks = [arrays[name] for name in group if arrays[name].shape[1] > 0]
                if not blocks:
                    continue
                data = np.column_stack(blocks)
                labels = sum((_labelled(name, arrays[name]) for name in group
                              if arrays[name].shape[1] > 0), [])
                model = GaussianModel(data, labels)
                avg += sign * model.entropy()
                loc = sign * model.local_entropies(data)
                local = loc if local is None else local + loc
        if local is None:
            local = np.zeros(next(iter(arrays.values())).shape[0])
        return avg, local


class GaussianEntropy(_GaussianCalculator):
    measure = "entropy"
    _variables = ("x",)

    def __init__(self):
        pass

    def _ingest(self, x):
        data = as_multiseries(x, name="x")
        return {"x": data}, data.shape[0], 0, 0

    def _evaluate(self, arrays):
        return self._entropy_terms(arrays, ((("x",),), ()))


class GaussianMutualInfo(_GaussianCalculator):
    measure = "mi"
    _variables = ("x", "y")
    _shuffle_var = "y"

    def __init__(self):
        pass

    def _ingest(self, x, y):
        dx = as_multiseries(x, name="x")
        dy = as_multiseries(y, name="y")
        check_equal_length(dx, dy, names=("x", "y"))
        return {"x": dx, "y": dy}, dx.shape[0], 0, 0

    def _evaluate(self, arrays):
        return self._entropy_terms(arrays, ((("x",), ("y",)), (("x", "y"),)))

    def _analytic_null_params(self):
        dof = self._store["x"].shape[1] * self._store["y"].shape[1]
        return dof, 1.0 / (2.0 * self._store.n_tuples)


class GaussianConditionalMutualInfo(_GaussianCalculator):
    measure = "cmi"
    _variables = ("x", "y", "z")
    _shuffle_var = "y"

    def __init__(self):
        pass

    def _ingest(self, x, y, z=None):
        dx = as_multiseries(x, name="x")
        dy = as_multiseries(y, name="y")
        dz = (as_multiseries(z, name="z") if z is not None
              else np.empty((dx.shape[0], 0)))
        check_equal_length(dx, dy, dz, names=("x", "y", "z"))
        return {"x": dx, "y": dy, "z": dz}, dx.shape[0], 0, 0

    def _evaluate(self, arrays):
        return self._entropy_terms(
            arrays, ((("x", "z"), ("y", "z")), (("z",), ("x", "y", "z"))))

    def _analytic_null_params(self):
        dof = self._store["x"].shape[1] * self._store["y"].shape[1]
        return dof, 1.0 / (2.0 * self._store.n_tuples)


class GaussianTransferEntropy(_GaussianCalculator):
    """TE in nats as a Gaussian conditional MI over embedded states.

    Equals half the Granger-causality log variance ratio for k=l=1 (or any
    embedding, against the matching regression).
    """

    measure = "te"
    _variables = ("source", "next", "past")
    _shuffle_var = "source"

    def __init__(self, k=1, tau_k=1, l=1, tau_l=1, u=1):
        self.k = k
        self.tau_k = tau_k
        self.l = l
        self.tau_l = tau_l
        self.u = u

    def _spec(self):
        return EmbeddingSpec(k=self.k, tau_k=self.tau_k, l=self.l, tau_l=self.tau_l, u=self.u)

    def _ingest(self, source, dest):
        dst = as_multiseries(dest, name="dest")
        s, nxt, past, _, offset = te_tuple_arrays(source, dst, self._spec())
        return {"source": s, "next": nxt, "past": past}, dst.shape[0], offset, 0

    def _evaluate(self, arrays):
        return self._entropy_terms(
            arrays,
            ((("source", "past"), ("next", "past")), (("past",), ("source", "next", "past"))))

    def _analytic_null_params(self):
        dof = self._store["source"].shape[1] * self._store["next"].shape[1]
        return dof, 1.0 / (2.0 * self._store.n_tuples)


class GaussianConditionalTransferEntropy(GaussianTransferEntropy):
    measure = "cte"
    _variables = ("source", "next", "past", "cond")
    _shuffle_var = "source"

    def _ingest(self, source, dest, cond):
        dst = as_multiseries(dest, name="dest")
        s, nxt, past, cond_state, offset = te_tuple_arrays(source, dst, self._spec(), cond=cond)
        return ({"source": s, "next": nxt, "past": past, "cond": cond_state},
                dst.shape[0], offset, 0)

    def _evaluate(self, arrays):
        return self._entropy_terms(
            arrays,
            ((("source", "past", "cond"), ("next", "past", "cond")),
             (("past", "cond"), ("source", "next", "past", "cond"))))


class GaussianActiveInfoStorage(_GaussianCalculator):
    measure = "ais"
    _variables = ("past", "next")
    _shuffle_var = "past"

    def __init__(self, k=1, tau_k=1):
        self.k = k
        self.tau_k = tau_k

    def _ingest(self, x):
        data = as_multiseries(x, name="x")
        past, nxt, offset = history_tuple_arrays(data, self.k, self.tau_k)
        return {"past": past, "next": nxt}, data.shape[0], offset, 0

    def _evaluate(self, arrays):
        return self._entropy_terms(
            arrays, ((("past",), ("next",)), (("past", "next"),)))

    def _analytic_null_params(self):
        dof = self._store["past"].shape[1] * self._store["next"].shape[1]
        return dof, 1.0 / (2.0 * self._store.n_tuples)
