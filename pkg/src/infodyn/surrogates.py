"""Permutation/rotation surrogate testing and analytic chi-square nulls."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from .exceptions import AnalyticNullUnavailableError, SurrogateError
from .results import NullDistribution

LN2 = math.log(2.0)


def _surrogate_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream per surrogate so any evaluation schedule agrees."""
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=(index,)))


def compute_significance(calc, n_surrogates: int, method: str = "permutation",
                         seed: int = 0) -> NullDistribution:
    """Null distribution by resampling the calculator's source-state tuples.

    Permutation shuffles whole source-state vectors among the stored tuples
    (never raw samples), preserving their multiset; rotation cyclically
    shifts the source tuple sequence by distinct offsets.
    """
    if n_surrogates < 1:
        raise SurrogateError(f"need at least one surrogate, got {n_surrogates}")
    if calc._shuffle_var is None:
        raise SurrogateError(f"significance testing unavailable for measure {calc.measure!r}")
    arrays = calc._tuple_arrays()
    actual = calc.compute_average()
    var = calc._shuffle_var
    n = arrays[var].shape[0]
    values = np.empty(n_surrogates)
    if method == "permutation":
        for s in range(n_surrogates):
            perm = _surrogate_rng(seed, s).permutation(n)
            shuffled = {**arrays, var: arrays[var][perm]}
            values[s] = calc._evaluate(shuffled)[0]
    elif method == "rotation":
        if n_surrogates > n - 1:
            raise SurrogateError(
                f"duplicate rotations: {n_surrogates} surrogates requested but only "
                f"{n - 1} distinct non-zero rotations of {n} tuples exist")
        shifts = _surrogate_rng(seed, 0).permutation(np.arange(1, n))[:n_surrogates]
        for s, shift in enumerate(shifts):
            shuffled = {**arrays, var: np.roll(arrays[var], int(shift), axis=0)}
            values[s] = calc._evaluate(shuffled)[0]
    else:
        raise SurrogateError(f"unknown surrogate method {method!r}")
    count_ge = int((values >= actual).sum())
    mean = float(values.mean())
    std = float(values.std(ddof=1)) if n_surrogates > 1 else 0.0
    if std > 0.0:
        t_score = (actual - mean) / std
    else:
        t_score = 0.0 if actual == mean else math.copysign(math.inf, actual - mean)
    return NullDistribution(
        surrogates=values,
        actual=actual,
        p_value=count_ge / n_surrogates,
        mean=mean,
        std=std,
        t_score=t_score,
        method=method,
        n_surrogates=n_surrogates,
        seed=seed,
        count_ge=count_ge,
    )


def analytic_significance(calc) -> NullDistribution:
    """Chi-square analytic null for discrete/Gaussian MI-style calculators."""
    dof, scale = calc._analytic_null_params()
    actual = calc.compute_average()
    null = AnalyticNull(dof=dof, scale=scale)
    std = null.std
    return NullDistribution(
        surrogates=np.empty(0),
        actual=actual,
        p_value=null.p_value(actual),
        mean=null.mean,
        std=std,
        t_score=(actual - null.mean) / std,
        method="analytic",
        n_surrogates=0,
        dof=dof,
        scale=scale,
    )


@dataclass(frozen=True)
class AnalyticNull:
    """A chi-square null: measure/scale ~ chi2(dof)."""

    dof: int
    scale: float

    @property
    def mean(self) -> float:
        return self.dof * self.scale

    @property
    def std(self) -> float:
        return math.sqrt(2.0 * self.dof) * self.scale

    def p_value(self, value: float) -> float:
        return float(chi2.sf(value / self.scale, self.dof))

    def quantile(self, q: float) -> float:
        return float(chi2.ppf(q, self.dof)) * self.scale


def discrete_analytic_null(measure: str, n_observations: int, alphabet_x: int = 2,
                           alphabet_y: int = 2, alphabet_cond: int = 1,
                           k: int = 1, l: int = 1) -> AnalyticNull:
    """Analytic null (in bits) for the discrete MI family.

    mi: dof = (Mx-1)(My-1); cmi: (Mx-1)(My-1)Mz;
    te: (Mx-1)(My^l-1)Mx^k, with x the destination and y the source.
    """
    scale = 1.0 / (2.0 * n_observations * LN2)
    if measure == "mi":
        dof = (alphabet_x - 1) * (alphabet_y - 1)
    elif measure == "cmi":
        dof = (alphabet_x - 1) * (alphabet_y - 1) * alphabet_cond
    elif measure == "te":
        dof = (alphabet_x - 1) * (alphabet_y ** l - 1) * alphabet_x ** k
    else:
        raise AnalyticNullUnavailableError(f"analytic null unavailable for measure {measure!r}")
    return AnalyticNull(dof=dof, scale=scale)


def gaussian_analytic_null(measure: str, n_observations: int, dim_x: int = 1,
                           dim_y: int = 1, l: int = 1) -> AnalyticNull:
    """Analytic null (in nats) for the Gaussian family: chi2_{|X||Y|}/2N,
    with l|X||Y| degrees of freedom for TE."""
    scale = 1.0 / (2.0 * n_observations)
    if measure in ("mi", "cmi"):
        dof = dim_x * dim_y
    elif measure == "te":
        dof = l * dim_x * dim_y
    else:
        raise AnalyticNullUnavailableError(f"analytic null unavailable for measure {measure!r}")
    return AnalyticNull(dof=dof, scale=scale)
