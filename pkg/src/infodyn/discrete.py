"""Plug-in estimators over symbol counts for all measures, in bits.

Probabilities are raw plug-in count ratios over the valid observation window
(no bias correction).  Every average is computed as the mean of the local
series, which makes the local-average identity exact by construction; the
grouped count formulas agree with this to floating-point rounding.
"""

from __future__ import annotations

import math

import numpy as np

from .base import Calculator
from .embedding import EmbeddingSpec, history_tuple_arrays, predictive_tuple_arrays, te_tuple_arrays
from .exceptions import AlphabetError, DataError
from .validation import as_symbol_table, check_equal_length

LN2 = math.log(2.0)


def joint_codes(*blocks: np.ndarray) -> np.ndarray:
    """Encode rows across the given integer blocks into one int64 code per row.

    Uses mixed-radix packing when the capacity fits in int64, otherwise falls
    back to lexicographic row grouping.
    """
    cols = [b if b.ndim == 2 else b[:, None] for b in blocks]
    mat = np.column_stack(cols).astype(np.int64)
    radices = [int(r) for r in mat.max(axis=0) + 1]
    capacity = 1
    for r in radices:
        capacity *= max(r, 1)
    if capacity <= 2 ** 62:
        weights = np.empty(len(radices), dtype=np.int64)
        acc = 1
        for j in range(len(radices) - 1, -1, -1):
            weights[j] = acc
            acc *= radices[j]
        return mat @ weights
    _, inverse = np.unique(mat, axis=0, return_inverse=True)
    return inverse.astype(np.int64)


def counts_of(codes: np.ndarray) -> np.ndarray:
    """Per-row occurrence count of each row's code."""
    _, inverse, counts = np.unique(codes, return_inverse=True, return_counts=True)
    return counts[inverse]


class CountTable:
    """Joint counts over one or more symbol blocks, with marginal lookups."""

    def __init__(self, *blocks: np.ndarray):
        self.blocks = [b if b.ndim == 2 else b[:, None] for b in blocks]
        self.n = self.blocks[0].shape[0]

    def counts(self, *which: int) -> np.ndarray:
        """Per-row counts of the joint configuration of the selected blocks."""
        return counts_of(joint_codes(*[self.blocks[i] for i in which]))


class _DiscreteCalculator(Calculator):
    units = "bits"

    def _symbols(self, data, alphabet, name):
        table = as_symbol_table(data, alphabet_size=alphabet, name=name)
        observed = int(table.max()) + 1
        key = f"_observed_{name}"
        setattr(self, key, max(getattr(self, key, 2), observed, 2))
        return table

    def _alphabet_of(self, declared, name):
        if declared is not None:
            return int(declared)
        return getattr(self, f"_observed_{name}", 2)


class DiscreteEntropy(_DiscreteCalculator):
    """Plug-in Shannon entropy; multivariate input is treated as one joint variable."""

    measure = "entropy"
    _variables = ("x",)

    def __init__(self, alphabet=None):
        self.alphabet = alphabet

    def _ingest(self, x):
        table = self._symbols(x, self.alphabet, "x")
        return {"x": table}, table.shape[0], 0, 0

    def _evaluate(self, arrays):
        c = counts_of(joint_codes(arrays["x"]))
        local = np.log2(len(c)) - np.log2(c)
        return local.mean(), local


class DiscreteMutualInfo(_DiscreteCalculator):
    measure = "mi"
    _variables = ("x", "y")
    _shuffle_var = "y"

    def __init__(self, alphabet=None, alphabet_y=None):
        self.alphabet = alphabet
        self.alphabet_y = alphabet_y

    def _ingest(self, x, y):
        tx = self._symbols(x, self.alphabet, "x")
        ty = self._symbols(y, self.alphabet_y if self.alphabet_y is not None else self.alphabet, "y")
        check_equal_length(tx, ty, names=("x", "y"))
        return {"x": tx, "y": ty}, tx.shape[0], 0, 0

    def _evaluate(self, arrays):
        t = CountTable(arrays["x"], arrays["y"])
        local = np.log2(t.counts(0, 1)) + np.log2(t.n) - np.log2(t.counts(0)) - np.log2(t.counts(1))
        return local.mean(), local

    def _analytic_null_params(self):
        ax = self._alphabet_of(self.alphabet, "x") ** self._store["x"].shape[1]
        ay = (self._alphabet_of(self.alphabet_y if self.alphabet_y is not None else self.alphabet, "y")
              ** self._store["y"].shape[1])
        dof = (ax - 1) * (ay - 1)
        return dof, 1.0 / (2.0 * self._store.n_tuples * LN2)


class DiscreteConditionalMutualInfo(_DiscreteCalculator):
    measure = "cmi"
    _variables = ("x", "y", "z")
    _shuffle_var = "y"

    def __init__(self, alphabet=None, alphabet_y=None, alphabet_z=None):
        self.alphabet = alphabet
        self.alphabet_y = alphabet_y
        self.alphabet_z = alphabet_z

    def _ingest(self, x, y, z):
        tx = self._symbols(x, self.alphabet, "x")
        ty = self._symbols(y, self.alphabet_y if self.alphabet_y is not None else self.alphabet, "y")
        tz = self._symbols(z, self.alphabet_z if self.alphabet_z is not None else self.alphabet, "z")
        check_equal_length(tx, ty, tz, names=("x", "y", "z"))
        return {"x": tx, "y": ty, "z": tz}, tx.shape[0], 0, 0

    def _evaluate(self, arrays):
        t = CountTable(arrays["x"], arrays["y"], arrays["z"])
        local = (np.log2(t.counts(0, 1, 2)) + np.log2(t.counts(2))
                 - np.log2(t.counts(0, 2)) - np.log2(t.counts(1, 2)))
        return local.mean(), local

    def _analytic_null_params(self):
        ax = self._alphabet_of(self.alphabet, "x") ** self._store["x"].shape[1]
        ay = (self._alphabet_of(self.alphabet_y if self.alphabet_y is not None else self.alphabet, "y")
              ** self._store["y"].shape[1])
        az = (self._alphabet_of(self.alphabet_z if self.alphabet_z is not None else self.alphabet, "z")
              ** self._store["z"].shape[1])
        dof = (ax - 1) * (ay - 1) * az
        return dof, 1.0 / (2.0 * self._store.n_tuples * LN2)


class DiscreteMultiInfo(_DiscreteCalculator):
    """Multi-information (integration) across the columns of one table."""

    measure = "multi"
    _variables = ("x",)

    def __init__(self, alphabet=None):
        self.alphabet = alphabet

    def _ingest(self, rows):
        table = self._symbols(rows, self.alphabet, "x")
        if table.shape[1] < 2:
            raise DataError("multi-information needs at least two columns")
        return {"x": table}, table.shape[0], 0, 0

    def _evaluate(self, arrays):
        table = arrays["x"]
        n = table.shape[0]
        local = np.log2(counts_of(joint_codes(table))) - np.log2(n)
        for j in range(table.shape[1]):
            local += np.log2(n) - np.log2(counts_of(table[:, j]))
        return local.mean(), local


class DiscreteEntropyRate(_DiscreteCalculator):
    """Finite-k conditional entropy rate H(X_{n+1} | X_n^(k))."""

    measure = "rate"
    _variables = ("next", "past")

    def __init__(self, alphabet=None, k=1, tau_k=1):
        self.alphabet = alphabet
        self.k = k
        self.tau_k = tau_k

    def _ingest(self, x):
        table = self._symbols(x, self.alphabet, "x")
        past, nxt, offset = history_tuple_arrays(table, self.k, self.tau_k)
        return ({"next": nxt.astype(np.int64), "past": past.astype(np.int64)},
                table.shape[0], offset, 0)

    def _evaluate(self, arrays):
        t = CountTable(arrays["next"], arrays["past"])
        local = np.log2(t.counts(1)) - np.log2(t.counts(0, 1))
        return local.mean(), local


class DiscreteActiveInfoStorage(_DiscreteCalculator):
    """AIS: mutual information between the embedded past and the next value."""

    measure = "ais"
    _variables = ("past", "next")
    _shuffle_var = "past"

    def __init__(self, alphabet=None, k=1, tau_k=1):
        self.alphabet = alphabet
        self.k = k
        self.tau_k = tau_k

    def _ingest(self, x):
        table = self._symbols(x, self.alphabet, "x")
        past, nxt, offset = history_tuple_arrays(table, self.k, self.tau_k)
        return ({"past": past.astype(np.int64), "next": nxt.astype(np.int64)},
                table.shape[0], offset, 0)

    def _evaluate(self, arrays):
        t = CountTable(arrays["past"], arrays["next"])
        local = np.log2(t.counts(0, 1)) + np.log2(t.n) - np.log2(t.counts(0)) - np.log2(t.counts(1))
        return local.mean(), local

    def _analytic_null_params(self):
        m = self._alphabet_of(self.alphabet, "x") ** self._store["next"].shape[1]
        m_past = m ** self.k
        dof = (m_past - 1) * (m - 1)
        return dof, 1.0 / (2.0 * self._store.n_tuples * LN2)


class DiscretePredictiveInfo(_DiscreteCalculator):
    """Finite-k predictive information between past and future blocks of length k."""

    measure = "pi"
    _variables = ("past", "future")
    _shuffle_var = "past"

    def __init__(self, alphabet=None, k=1, tau_k=1):
        self.alphabet = alphabet
        self.k = k
        self.tau_k = tau_k

    def _ingest(self, x):
        table = self._symbols(x, self.alphabet, "x")
        past, future, offset = predictive_tuple_arrays(table, self.k, self.tau_k)
        tail = table.shape[0] - offset - past.shape[0]
        return ({"past": past.astype(np.int64), "future": future.astype(np.int64)},
                table.shape[0], offset, tail)

    def _evaluate(self, arrays):
        t = CountTable(arrays["past"], arrays["future"])
        local = np.log2(t.counts(0, 1)) + np.log2(t.n) - np.log2(t.counts(0)) - np.log2(t.counts(1))
        return local.mean(), local


class DiscreteTransferEntropy(_DiscreteCalculator):
    """Apparent/collective TE: I(source state ; dest next | dest past).

    A multivariate source is embedded per column and treated as one joint
    state, which is the collective transfer entropy.
    """

    measure = "te"
    _variables = ("source", "next", "past")
    _shuffle_var = "source"

    def __init__(self, alphabet=None, alphabet_source=None, k=1, tau_k=1, l=1, tau_l=1, u=1):
        self.alphabet = alphabet
        self.alphabet_source = alphabet_source
        self.k = k
        self.tau_k = tau_k
        self.l = l
        self.tau_l = tau_l
        self.u = u

    def _spec(self) -> EmbeddingSpec:
        return EmbeddingSpec(k=self.k, tau_k=self.tau_k, l=self.l, tau_l=self.tau_l, u=self.u)

    def _ingest(self, source, dest):
        m_src = self.alphabet_source if self.alphabet_source is not None else self.alphabet
        src = self._symbols(source, m_src, "source")
        dst = self._symbols(dest, self.alphabet, "x")
        check_equal_length(src, dst, names=("source", "dest"))
        s, nxt, past, _, offset = te_tuple_arrays(src, dst, self._spec())
        return ({"source": s.astype(np.int64), "next": nxt.astype(np.int64),
                 "past": past.astype(np.int64)}, dst.shape[0], offset, 0)

    def _evaluate(self, arrays):
        t = CountTable(arrays["source"], arrays["next"], arrays["past"])
        local = (np.log2(t.counts(0, 1, 2)) + np.log2(t.counts(2))
                 - np.log2(t.counts(0, 2)) - np.log2(t.counts(1, 2)))
        return local.mean(), local

    def _analytic_null_params(self):
        m = self._alphabet_of(self.alphabet, "x") ** self._store["next"].shape[1]
        m_src_base = self._alphabet_of(
            self.alphabet_source if self.alphabet_source is not None else self.alphabet, "source")
        a_source = m_src_base ** self._store["source"].shape[1]
        dof = (m - 1) * (a_source - 1) * (m ** self.k)
        return dof, 1.0 / (2.0 * self._store.n_tuples * LN2)


class DiscreteConditionalTransferEntropy(DiscreteTransferEntropy):
    """TE conditioned on further (possibly multivariate) processes at time n."""

    measure = "cte"
    _variables = ("source", "next", "past", "cond")
    _shuffle_var = "source"

    def __init__(self, alphabet=None, alphabet_source=None, alphabet_cond=None,
                 k=1, tau_k=1, l=1, tau_l=1, u=1):
        super().__init__(alphabet, alphabet_source, k, tau_k, l, tau_l, u)
        self.alphabet_cond = alphabet_cond

    def _ingest(self, source, dest, cond):
        m_src = self.alphabet_source if self.alphabet_source is not None else self.alphabet
        m_cond = self.alphabet_cond if self.alphabet_cond is not None else self.alphabet
        src = self._symbols(source, m_src, "source")
        dst = self._symbols(dest, self.alphabet, "x")
        cnd = self._symbols(cond, m_cond, "cond")
        check_equal_length(src, dst, cnd, names=("source", "dest", "cond"))
        s, nxt, past, cond_state, offset = te_tuple_arrays(src, dst, self._spec(), cond=cnd)
        return ({"source": s.astype(np.int64), "next": nxt.astype(np.int64),
                 "past": past.astype(np.int64), "cond": cond_state.astype(np.int64)},
                dst.shape[0], offset, 0)

    def _evaluate(self, arrays):
        t = CountTable(arrays["source"], arrays["next"], arrays["past"], arrays["cond"])
        local = (np.log2(t.counts(0, 1, 2, 3)) + np.log2(t.counts(2, 3))
                 - np.log2(t.counts(0, 2, 3)) - np.log2(t.counts(1, 2, 3)))
        return local.mean(), local

    def _analytic_null_params(self):
        dof, scale = super()._analytic_null_params()
        m_cond_base = self._alphabet_of(
            self.alphabet_cond if self.alphabet_cond is not None else self.alphabet, "cond")
        return dof * (m_cond_base ** self._store["cond"].shape[1]), scale


class DiscreteSeparableInfo(_DiscreteCalculator):
    """Separable information: AIS plus the apparent TE from each source column.

    All components share the common valid observation window so that the
    summed local series averages exactly to the reported value.
    """

    measure = "separable"
    _variables = ("next", "past", "sources")

    def __init__(self, alphabet=None, alphabet_source=None, k=1, tau_k=1, l=1, tau_l=1, u=1):
        self.alphabet = alphabet
        self.alphabet_source = alphabet_source
        self.k = k
        self.tau_k = tau_k
        self.l = l
        self.tau_l = tau_l
        self.u = u

    def _ingest(self, dest, sources=None):
        dst = self._symbols(dest, self.alphabet, "x")
        spec = EmbeddingSpec(k=self.k, tau_k=self.tau_k, l=self.l, tau_l=self.tau_l, u=self.u)
        if sources is None:
            past, nxt, offset = history_tuple_arrays(dst, self.k, self.tau_k)
            empty = np.empty((nxt.shape[0], 0), dtype=np.int64)
            return ({"next": nxt.astype(np.int64), "past": past.astype(np.int64),
                     "sources": empty}, dst.shape[0], offset, 0)
        m_src = self.alphabet_source if self.alphabet_source is not None else self.alphabet
        src = self._symbols(sources, m_src, "source")
        check_equal_length(src, dst, names=("sources", "dest"))
        blocks = []
        for j in range(src.shape[1]):
            s, nxt, past, _, offset = te_tuple_arrays(src[:, j], dst, spec)
            blocks.append(s.astype(np.int64))
        self._n_sources = src.shape[1]
        return ({"next": nxt.astype(np.int64), "past": past.astype(np.int64),
                 "sources": np.column_stack(blocks)}, dst.shape[0], offset, 0)

    def _evaluate(self, arrays):
        nxt, past, sources = arrays["next"], arrays["past"], arrays["sources"]
        t = CountTable(nxt, past)
        n = t.n
        local = np.log2(t.counts(0, 1)) + np.log2(n) - np.log2(t.counts(0)) - np.log2(t.counts(1))
        l_cols = self.l
        for j in range(sources.shape[1] // l_cols):
            s = sources[:, j * l_cols:(j + 1) * l_cols]
            tt = CountTable(s, nxt, past)
            local += (np.log2(tt.counts(0, 1, 2)) + np.log2(tt.counts(2))
                      - np.log2(tt.counts(0, 2)) - np.log2(tt.counts(1, 2)))
        return local.mean(), local
