"""Takens embedding of time series and the embedding geometry for TE-style measures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InsufficientSamplesError
from .validation import as_multiseries


@dataclass(frozen=True)
class EmbeddingSpec:
    """Embedding dimensions/delays for destination (k, tau_k) and source (l, tau_l),
    plus the source-destination lag u.

    The first predictable sample sits at index max(k*tau_k, (l-1)*tau_l + u);
    embeddings at time n only ever reference indices <= n.
    """

    k: int = 1
    tau_k: int = 1
    l: int = 1
    tau_l: int = 1
    u: int = 1

    def __post_init__(self):
        for name in ("k", "tau_k", "l", "tau_l", "u"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"EmbeddingSpec.{name} must be an integer >= 1, got {value}")

    @property
    def dest_offset(self) -> int:
        return self.k * self.tau_k

    @property
    def source_offset(self) -> int:
        return (self.l - 1) * self.tau_l + self.u

    @property
    def offset(self) -> int:
        return max(self.dest_offset, self.source_offset)


def embed(series, k: int, tau: int = 1) -> np.ndarray:
    """Sliding-window state vectors [x_{n-(k-1)tau}, ..., x_{n-tau}, x_n].

    For an (N, d) input the columns of each window are stacked left-to-right
    from the oldest time step, giving rows of length k*d.
    Output row t corresponds to n = t + (k-1)*tau.
    """
    data = as_multiseries(series, name="series")
    n, d = data.shape
    span = (k - 1) * tau
    if n <= span:
        raise InsufficientSamplesError(
            f"insufficient samples: embedding k={k}, tau={tau} needs at least "
            f"{span + 1} samples, got {n}"
        )
    out = np.empty((n - span, k * d), dtype=float)
    for j in range(k):
        shift = (k - 1 - j) * tau
        out[:, j * d:(j + 1) * d] = data[span - shift:n - shift]
    return out


def te_tuple_arrays(source, dest, spec: EmbeddingSpec, cond=None):
    """Embedded observation tuples for transfer-entropy style measures.

    Returns (source_state, dest_next, dest_past, cond_state, offset) where row
    t corresponds to the predicted sample at index m = offset + t:
      dest_next[t]    = dest[m]
      dest_past[t]    = [dest[m-1-(k-1)tau_k], ..., dest[m-1]]
      source_state[t] = [src[m-u-(l-1)tau_l], ..., src[m-u]]   (per column)
      cond_state[t]   = cond[m-1] rows (when cond is given)
    """
    src = as_multiseries(source, name="source")
    dst = as_multiseries(dest, name="dest")
    if src.shape[0] != dst.shape[0]:
        raise InsufficientSamplesError(
            f"length mismatch: source has {src.shape[0]} samples, dest has {dst.shape[0]}"
        )
    n = dst.shape[0]
    offset = spec.offset
    if n <= offset:
        raise InsufficientSamplesError(
            f"insufficient samples: embedding offset {offset} needs at least "
            f"{offset + 1} samples, got {n}"
        )
    m = np.arange(offset, n)
    dest_next = dst[m]
    dest_past = _history(dst, m - 1, spec.k, spec.tau_k)
    source_state = _history(src, m - spec.u, spec.l, spec.tau_l)
    cond_state = None
    if cond is not None:
        cnd = as_multiseries(cond, name="cond")
        if cnd.shape[0] != n:
            raise InsufficientSamplesError(
                f"length mismatch: cond has {cnd.shape[0]} samples, dest has {n}"
            )
        cond_state = cnd[m - 1]
    return source_state, dest_next, dest_past, cond_state, offset


def history_tuple_arrays(series, k: int, tau: int = 1):
    """(past_state, next_value, offset) pairs for AIS / entropy-rate measures.

    Row t predicts index m = k*tau + t from the k-window ending at m-1.
    """
    data = as_multiseries(series, name="series")
    n = data.shape[0]
    offset = k * tau
    if n <= offset:
        raise InsufficientSamplesError(
            f"insufficient samples: history k={k}, tau={tau} needs at least "
            f"{offset + 1} samples, got {n}"
        )
    m = np.arange(offset, n)
    past = _history(data, m - 1, k, tau)
    nxt = data[m]
    return past, nxt, offset


def predictive_tuple_arrays(series, k: int, tau: int = 1):
    """(past_block, future_block, offset) for predictive information.

    The future block mirrors the past: [x_m, x_{m+tau}, ..., x_{m+(k-1)tau}].
    """
    data = as_multiseries(series, name="series")
    n = data.shape[0]
    offset = k * tau
    tail = (k - 1) * tau
    if n <= offset + tail:
        raise InsufficientSamplesError(
            f"insufficient samples: predictive blocks k={k}, tau={tau} need at least "
            f"{offset + tail + 1} samples, got {n}"
        )
    m = np.arange(offset, n - tail)
    past = _history(data, m - 1, k, tau)
    d = data.shape[1]
    future = np.empty((m.size, k * d), dtype=float)
    for j in range(k):
        future[:, j * d:(j + 1) * d] = data[m + j * tau]
    return past, future, offset


def _history(data: np.ndarray, end_indices: np.ndarray, k: int, tau: int) -> np.ndarray:
    """Windows [x_{e-(k-1)tau}, ..., x_e] for each end index e (columns stacked)."""
    d = data.shape[1]
    out = np.empty((end_indices.size, k * d), dtype=float)
    for j in range(k):
        idx = end_indices - (k - 1 - j) * tau
        out[:, j * d:(j + 1) * d] = data[idx]
    return out
