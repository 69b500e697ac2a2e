"""Ordinal-pattern estimators: permutation entropy and symbolic transfer
entropy, in bits.

A window of d reals is replaced by its rank vector (0 for the largest
component, d-1 for the smallest; on ties the later index counts as larger),
encoded to an integer in [0, d!) via the Lehmer code, and the discrete
counting machinery does the rest.  d is capped at 8 to keep the pattern
alphabet (8! = 40320) tractable.
"""

from __future__ import annotations

import math

import numpy as np

from .base import Calculator
from .discrete import CountTable, counts_of
from .embedding import EmbeddingSpec, embed
from .exceptions import DataError, InsufficientSamplesError
from .validation import as_series, check_equal_length

MAX_ORDER = 8


def ordinal_ranks(windows) -> np.ndarray:
    """Rank vectors for each row: 0 marks the largest entry, d-1 the smallest.

    Ties give the later occurrence the lower rank value (treated as larger).
    """
    w = np.asarray(windows, dtype=float)
    single = w.ndim == 1
    if single:
        w = w[None, :]
    d = w.shape[1]
    if d < 2 or d > MAX_ORDER:
        raise DataError(f"ordinal dimension must be in [2, {MAX_ORDER}], got {d}")
    # Stable ascending sort puts earlier indices first among ties; reversing
    # yields descending order with later indices first, i.e. the tie rule.
    desc = np.argsort(w, axis=1, kind="stable")[:, ::-1]
    ranks = np.empty_like(desc)
    rows = np.arange(w.shape[0])[:, None]
    ranks[rows, desc] = np.arange(d)[None, :]
    return ranks[0] if single else ranks


def encode_pattern(ranks) -> np.ndarray:
    """Lehmer-code each rank vector to a dense id in [0, d!)."""
    r = np.asarray(ranks, dtype=np.int64)
    single = r.ndim == 1
    if single:
        r = r[None, :]
    d = r.shape[1]
    codes = np.zeros(r.shape[0], dtype=np.int64)
    for i in range(d - 1):
        smaller_later = (r[:, i + 1:] < r[:, i:i + 1]).sum(axis=1)
        codes += smaller_later * math.factorial(d - 1 - i)
    return codes[0] if single else codes


def decode_pattern(code: int, d: int) -> np.ndarray:
    """Inverse of encode_pattern for a single id."""
    if not 0 <= code < math.factorial(d):
        raise DataError(f"pattern id {code} out of range for d={d}")
    digits = []
    rest = int(code)
    for i in range(d - 1, 0, -1):
        f = math.factorial(i)
        digits.append(rest // f)
        rest %= f
    digits.append(0)
    pool = list(range(d))
    return np.array([pool.pop(dig) for dig in digits], dtype=np.int64)


def ordinalize(vector, d: int | None = None):
    """(ranks, id) of a single window."""
    v = as_series(vector, name="vector")
    if d is not None and v.size != d:
        raise DataError(f"vector has length {v.size}, expected d={d}")
    ranks = ordinal_ranks(v)
    return ranks, int(encode_pattern(ranks))


def pattern_series(series: np.ndarray, d: int, tau: int) -> np.ndarray:
    """Pattern ids of the d-windows ending at n = (d-1)*tau, ..., N-1."""
    windows = embed(series, k=d, tau=tau)
    return encode_pattern(ordinal_ranks(windows))


class SymbolicEntropy(Calculator):
    """Permutation entropy: plug-in entropy over ordinal-pattern ids."""

    measure = "entropy"
    units = "bits"
    _variables = ("pattern",)

    def __init__(self, d=3, tau_k=1):
        self.d = d
        self.tau_k = tau_k

    def _ingest(self, x):
        data = as_series(x, name="x")
        ids = pattern_series(data, self.d, self.tau_k)
        offset = (self.d - 1) * self.tau_k
        return {"pattern": ids.astype(np.int64)}, data.size, offset, 0

    def _evaluate(self, arrays):
        c = counts_of(arrays["pattern"][:, 0])
        local = np.log2(len(c)) - np.log2(c)
        return local.mean(), local


class SymbolicTransferEntropy(Calculator):
    """Symbolic TE over ordinal patterns of source, dest-past and dest-next windows.

    The predicted value is the full next window's pattern (the window ending
    at n+1), conditioned on the pattern ending at n, with the source pattern
    ending at n+1-u.  tau_k/tau_l act as within-window delays; the pattern
    dimension d plays the embedding role, so k and l are fixed at 1 pattern.
    """

    measure = "te"
    units = "bits"
    _variables = ("source", "next", "past")
    _shuffle_var = "source"

    def __init__(self, d=3, tau_k=1, tau_l=1, u=1):
        self.d = d
        self.tau_k = tau_k
        self.tau_l = tau_l
        self.u = u

    def _ingest(self, source, dest):
        src = as_series(source, name="source")
        dst = as_series(dest, name="dest")
        check_equal_length(src, dst, names=("source", "dest"))
        EmbeddingSpec(k=1, tau_k=self.tau_k, l=1, tau_l=self.tau_l, u=self.u)
        d = int(self.d)
        span_k = (d - 1) * self.tau_k
        span_l = (d - 1) * self.tau_l
        offset = max(span_k + 1, span_l + self.u)
        n = dst.size
        if n <= offset:
            raise InsufficientSamplesError(
                f"insufficient samples: symbolic TE with d={d} needs at least "
                f"{offset + 1} samples, got {n}")
        dest_pat = pattern_series(dst, d, self.tau_k)     # id at n = span_k + t
        src_pat = pattern_series(src, d, self.tau_l)
        m = np.arange(offset, n)
        nxt = dest_pat[m - span_k]
        past = dest_pat[m - 1 - span_k]
        s = src_pat[m - self.u - span_l]
        return ({"source": s.astype(np.int64), "next": nxt.astype(np.int64),
                 "past": past.astype(np.int64)}, n, offset, 0)

    def _evaluate(self, arrays):
        t = CountTable(arrays["source"], arrays["next"], arrays["past"])
        local = (np.log2(t.counts(0, 1, 2)) + np.log2(t.counts(2))
                 - np.log2(t.counts(0, 2)) - np.log2(t.counts(1, 2)))
        return local.mean(), local
