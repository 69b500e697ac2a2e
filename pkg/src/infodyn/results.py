"""Result containers: averaged measures with local series, and null distributions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class MeasureResult:
    """An averaged information measure plus its pointwise (local) series.

    `local` is aligned to the concatenated input time indices: within each
    trial the first `offset` entries (and, for block measures, any trailing
    entries without a full future window) are zero padding.  `segments`
    records the (start, length) of the valid local values per trial, so
    `valid_local` recovers exactly the n_observations contributing values.
    """

    average: float
    units: str
    n_observations: int
    local: np.ndarray | None = None
    segments: list[tuple[int, int]] = field(default_factory=list)

    @property
    def valid_local(self) -> np.ndarray:
        if self.local is None:
            return np.empty(0)
        if not self.segments:
            return self.local
        return np.concatenate([self.local[s:s + n] for s, n in self.segments])


@dataclass
class NullDistribution:
    """Distribution of a measure under the no-relationship null hypothesis.

    For empirical methods, `p_value` is #{surrogates >= actual}/n_surrogates
    (no continuity correction; the raw count is exposed as `count_ge`).
    Analytic nulls carry an empty surrogate array plus the chi-square
    parameters (`dof`, `scale`) used to evaluate the tail.
    """

    surrogates: np.ndarray
    actual: float
    p_value: float
    mean: float
    std: float
    t_score: float
    method: str
    n_surrogates: int
    seed: int | None = None
    count_ge: int | None = None
    dof: int | None = None
    scale: float | None = None
