"""Exception hierarchy shared by all estimator families."""


class InfodynError(Exception):
    """Base class for all library errors."""


class DataError(InfodynError):
    """Invalid input data (non-finite values, symbols out of range, ragged rows, ...)."""


class InsufficientSamplesError(DataError):
    """Series too short for the requested embedding or estimator."""


class AlphabetError(DataError):
    """Symbol outside the declared alphabet, or invalid alphabet size."""


class PropertyError(InfodynError):
    """Unknown property key or unparseable property value."""


class LifecycleError(InfodynError):
    """Calculator lifecycle methods called out of order."""


class DegenerateCovarianceError(InfodynError):
    """Sample covariance is singular for a Gaussian-model estimator."""


class AnalyticNullUnavailableError(InfodynError):
    """No analytic null distribution exists for this measure/estimator pair."""


class SurrogateError(InfodynError):
    """Invalid surrogate test request (e.g. more rotations than tuples)."""
