"""Factory mapping (measure, estimator) names to calculator classes."""

from __future__ import annotations

from . import discrete, gaussian, kernel, ksg, symbolic
from .exceptions import PropertyError

MEASURES = ("entropy", "mi", "cmi", "multi", "rate", "ais", "pi", "te", "cte",
            "collective-te", "separable")
ESTIMATORS = ("discrete", "gaussian", "kernel", "ksg", "symbolic")

_TABLE: dict[tuple[str, str], type] = {
    ("discrete", "entropy"): discrete.DiscreteEntropy,
    ("discrete", "mi"): discrete.DiscreteMutualInfo,
    ("discrete", "cmi"): discrete.DiscreteConditionalMutualInfo,
    ("discrete", "multi"): discrete.DiscreteMultiInfo,
    ("discrete", "rate"): discrete.DiscreteEntropyRate,
    ("discrete", "ais"): discrete.DiscreteActiveInfoStorage,
    ("discrete", "pi"): discrete.DiscretePredictiveInfo,
    ("discrete", "te"): discrete.DiscreteTransferEntropy,
    ("discrete", "cte"): discrete.DiscreteConditionalTransferEntropy,
    ("discrete", "collective-te"): discrete.DiscreteTransferEntropy,
    ("discrete", "separable"): discrete.DiscreteSeparableInfo,
    ("gaussian", "entropy"): gaussian.GaussianEntropy,
    ("gaussian", "mi"): gaussian.GaussianMutualInfo,
    ("gaussian", "cmi"): gaussian.GaussianConditionalMutualInfo,
    ("gaussian", "te"): gaussian.GaussianTransferEntropy,
    ("gaussian", "cte"): gaussian.GaussianConditionalTransferEntropy,
    ("gaussian", "collective-te"): gaussian.GaussianTransferEntropy,
    ("gaussian", "ais"): gaussian.GaussianActiveInfoStorage,
    ("kernel", "entropy"): kernel.KernelEntropy,
    ("kernel", "mi"): kernel.KernelMutualInfo,
    ("kernel", "multi"): kernel.KernelMultiInfo,
    ("kernel", "te"): kernel.KernelTransferEntropy,
    ("kernel", "collective-te"): kernel.KernelTransferEntropy,
    ("kernel", "ais"): kernel.KernelActiveInfoStorage,
    ("ksg", "entropy"): ksg.KozachenkoEntropy,
    ("ksg", "mi"): ksg.KsgMutualInfo,
    ("ksg", "cmi"): ksg.KsgConditionalMutualInfo,
    ("ksg", "multi"): ksg.KsgMultiInfo,
    ("ksg", "te"): ksg.KsgTransferEntropy,
    ("ksg", "cte"): ksg.KsgConditionalTransferEntropy,
    ("ksg", "collective-te"): ksg.KsgTransferEntropy,
    ("ksg", "ais"): ksg.KsgActiveInfoStorage,
    ("ksg", "pi"): ksg.KsgPredictiveInfo,
    ("symbolic", "entropy"): symbolic.SymbolicEntropy,
    ("symbolic", "te"): symbolic.SymbolicTransferEntropy,
}


def supported_measures(estimator: str) -> list[str]:
    return sorted(m for (e, m) in _TABLE if e == estimator)


def make_calculator(measure: str, estimator: str, **params):
    if estimator not in ESTIMATORS:
        raise PropertyError(f"unknown estimator {estimator!r}; choose from {ESTIMATORS}")
    if measure not in MEASURES:
        raise PropertyError(f"unknown measure {measure!r}; choose from {MEASURES}")
    cls = _TABLE.get((estimator, measure))
    if cls is None:
        raise PropertyError(
            f"measure {measure!r} is not implemented for the {estimator!r} estimator; "
            f"supported measures: {supported_measures(estimator)}")
    calc = cls()
    if params:
        calc.set_params(**params)
    return calc
