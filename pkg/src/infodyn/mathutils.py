"""Shared numeric utilities: digamma, normalisation, binning, symbol combining."""

from __future__ import annotations

import math

import numpy as np

from .exceptions import AlphabetError, DataError
from .validation import as_series, as_symbol_table, check_alphabet

# Asymptotic correction terms of psi(x) ~ ln x - 1/(2x) - sum B_2n / (2n x^2n).
_DIGAMMA_COEFFS = (
    -1.0 / 12.0,
    1.0 / 120.0,
    -1.0 / 252.0,
    1.0 / 240.0,
    -1.0 / 132.0,
)


def digamma(x: float) -> float:
    """Digamma function psi(x) for x > 0, accurate to ~1e-10 absolute.

    Uses upward recurrence psi(x+1) = psi(x) + 1/x to push the argument to
    x >= 6, then the 6-term asymptotic expansion.
    """
    x = float(x)
    if x <= 0.0 or math.isnan(x):
        raise DataError(f"digamma requires x > 0, got {x}")
    terms = []
    while x < 6.0:
        terms.append(-1.0 / x)
        x += 1.0
    inv2 = 1.0 / (x * x)
    terms.append(math.log(x))
    terms.append(-0.5 / x)
    p = inv2
    for c in _DIGAMMA_COEFFS:
        terms.append(c * p)
        p *= inv2
    return math.fsum(terms)


def digamma_vec(values) -> np.ndarray:
    """Vectorised digamma over an integer or float array (values > 0)."""
    arr = np.asarray(values, dtype=float)
    flat = arr.ravel()
    uniq, inverse = np.unique(flat, return_inverse=True)
    psi_uniq = np.array([digamma(u) for u in uniq])
    return psi_uniq[inverse].reshape(arr.shape)


def normalise(series) -> np.ndarray:
    """Shift/scale to sample mean 0 and sample std 1 (N-1 convention).

    A constant series maps to all zeros.
    """
    arr = as_series(series)
    if arr.size < 2:
        return np.zeros_like(arr)
    mu = arr.mean()
    sd = arr.std(ddof=1)
    if sd == 0.0:
        return np.zeros_like(arr)
    return (arr - mu) / sd


def normalise_columns(data: np.ndarray) -> np.ndarray:
    """Column-wise `normalise` for an (N, d) array."""
    return np.column_stack([normalise(data[:, j]) for j in range(data.shape[1])])


def combine_values(rows, alphabet_size: int) -> np.ndarray:
    """Collapse each row of symbols into one v-digit base-M value.

    The leftmost column is the most significant digit, so a row
    [v_0, ..., v_{d-1}] maps to sum_i v_i * M^(d-1-i).
    """
    m = check_alphabet(alphabet_size)
    table = as_symbol_table(rows, alphabet_size=m)
    d = table.shape[1]
    if m ** d > 2 ** 62:
        raise AlphabetError(f"combined alphabet {m}^{d} exceeds the supported range")
    weights = m ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return table @ weights


def decode_values(combined, alphabet_size: int, n_columns: int) -> np.ndarray:
    """Inverse of `combine_values`: recover the (N, d) symbol rows."""
    m = check_alphabet(alphabet_size)
    arr = np.asarray(combined, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= m ** n_columns:
        raise AlphabetError("combined value out of range for the declared alphabet")
    cols = []
    rest = arr.copy()
    for i in range(n_columns - 1, -1, -1):
        weight = m ** i
        cols.append(rest // weight)
        rest = rest % weight
    return np.column_stack(cols)


def discretise(series, bins: int, mode: str = "even") -> np.ndarray:
    """Bin a real-valued series into `bins` symbols.

    even: equal-width bins over [min, max]; a value exactly on an interior
    edge goes to the higher bin, the maximum goes to the top bin, and a
    constant series maps to all zeros.
    max_entropy: edges at empirical quantiles so bin counts differ by at
    most 1; rank ties broken by original index order.
    """
    arr = as_series(series)
    bins = int(bins)
    if bins < 2:
        raise DataError(f"bins must be >= 2, got {bins}")
    n = arr.size
    if mode == "even":
        lo, hi = arr.min(), arr.max()
        if hi == lo:
            return np.zeros(n, dtype=np.int64)
        idx = np.floor((arr - lo) / (hi - lo) * bins).astype(np.int64)
        return np.clip(idx, 0, bins - 1)
    if mode == "max_entropy":
        if bins > n:
            raise DataError(f"max_entropy binning needs bins <= N ({bins} > {n})")
        order = np.argsort(arr, kind="stable")
        ranks = np.empty(n, dtype=np.int64)
        ranks[order] = np.arange(n)
        return (ranks * bins) // n
    raise DataError(f"unknown binning mode {mode!r}")
