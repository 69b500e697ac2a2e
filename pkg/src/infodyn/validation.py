"""Input validation helpers.

Every public entry point funnels data through these functions so that the
estimators themselves can assume clean, rectangular, finite float64/int64
arrays with time along axis 0.
"""

from __future__ import annotations

import numpy as np

from .exceptions import AlphabetError, DataError


def as_series(values, name: str = "series") -> np.ndarray:
    """Coerce to a 1-D float64 array of finite values, length >= 1."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise DataError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < 1:
        raise DataError(f"{name} must contain at least one sample")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{name} contains non-finite values (NaN/Inf)")
    return arr


def as_multiseries(values, name: str = "data", min_cols: int = 1) -> np.ndarray:
    """Coerce to a rectangular (N, d) float64 array of finite values.

    1-D input becomes a single column. Ragged nested sequences are rejected.
    """
    try:
        arr = np.asarray(values, dtype=float)
    except ValueError as exc:
        raise DataError(f"{name} is ragged or non-numeric: {exc}") from None
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.dtype == object:
        raise DataError(f"{name} must be a rectangular 2-D array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < min_cols:
        raise DataError(
            f"{name} must have at least 1 row and {min_cols} column(s), got {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{name} contains non-finite values (NaN/Inf)")
    return arr


def as_symbols(values, alphabet_size: int | None = None, name: str = "series") -> np.ndarray:
    """Coerce to a 1-D int64 symbol array, checking 0 <= v < M when M is given."""
    arr = np.asarray(values)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise DataError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size < 1:
        raise DataError(f"{name} must contain at least one sample")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)):
            raise DataError(f"{name} contains non-finite values (NaN/Inf)")
        rounded = np.rint(arr)
        if not np.all(rounded == arr):
            raise AlphabetError(f"{name} holds non-integer values; symbolic data required")
        arr = rounded
    out = arr.astype(np.int64)
    if out.min() < 0:
        raise AlphabetError(f"{name} holds negative symbols")
    if alphabet_size is not None and out.max() >= alphabet_size:
        raise AlphabetError(
            f"symbol out of alphabet: {name} holds {int(out.max())} "
            f"but alphabet size is {alphabet_size}"
        )
    return out


def as_symbol_table(values, alphabet_size: int | None = None, name: str = "data") -> np.ndarray:
    """Coerce to a rectangular (N, d) int64 symbol array."""
    arr = as_multiseries(values, name=name)
    cols = [as_symbols(arr[:, j], alphabet_size, name=f"{name}[:, {j}]") for j in range(arr.shape[1])]
    return np.column_stack(cols)


def check_alphabet(size: int) -> int:
    size = int(size)
    if size < 2:
        raise AlphabetError(f"alphabet size must be >= 2, got {size}")
    return size


def check_equal_length(*arrays, names=None) -> int:
    lengths = [len(a) for a in arrays]
    if len(set(lengths)) > 1:
        labels = names or [f"arg{i}" for i in range(len(arrays))]
        detail = ", ".join(f"{n}={l}" for n, l in zip(labels, lengths))
        raise DataError(f"length mismatch: {detail}")
    return lengths[0]
