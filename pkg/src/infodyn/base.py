"""Calculator base class: sklearn-style parameter handling plus the
initialise / add_observations / finalise / compute lifecycle shared by every
estimator family.
"""

from __future__ import annotations

import inspect

import numpy as np

from .exceptions import AnalyticNullUnavailableError, LifecycleError, PropertyError
from .observations import ObservationStore
from .results import MeasureResult, NullDistribution


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


# Property keys accepted via set_property / the CLI -p flag, with their parsers.
PROPERTY_PARSERS = {
    "k": int,
    "tau_k": int,
    "l": int,
    "tau_l": int,
    "u": int,
    "K": int,
    "algorithm": int,
    "r": float,
    "normalise": _parse_bool,
    "d": int,
    "noise_scale": float,
    "bins": int,
    "bin_mode": str,
    "seed": int,
    "alphabet": int,
    "bias_correction": _parse_bool,
}


class Calculator:
    """Base class for all measure calculators.

    Subclasses declare the measure name, units, the tuple variables they
    store, and implement `_ingest` (embed one trial into tuple arrays) and
    `_evaluate` (pure function from tuple arrays to (average, locals)).
    """

    measure: str = ""
    units: str = ""
    _variables: tuple[str, ...] = ()
    _shuffle_var: str | None = None

    # ------------------------------------------------------------------ params
    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        return [p for p in sig.parameters if p != "self"]

    def get_params(self) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params) -> "Calculator":
        valid = self._param_names()
        for key, value in params.items():
            if key not in valid:
                raise PropertyError(
                    f"unknown parameter {key!r} for {type(self).__name__}; "
                    f"valid parameters: {sorted(valid)}"
                )
            setattr(self, key, value)
        return self

    def set_property(self, key: str, value: str) -> "Calculator":
        """String-typed property setting (the `-p key=value` surface)."""
        if key not in PROPERTY_PARSERS or key not in self._param_names():
            raise PropertyError(
                f"unknown property {key!r} for {type(self).__name__}; "
                f"valid properties: {sorted(set(PROPERTY_PARSERS) & set(self._param_names()))}"
            )
        try:
            parsed = PROPERTY_PARSERS[key](value)
        except ValueError as exc:
            raise PropertyError(f"property {key!r} rejected value {value!r}: {exc}") from None
        return self.set_params(**{key: parsed})

    def set_properties(self, mapping: dict[str, str]) -> "Calculator":
        for key, value in mapping.items():
            self.set_property(key, value)
        return self

    # --------------------------------------------------------------- lifecycle
    def initialise(self) -> "Calculator":
        self._store = ObservationStore(self._variables)
        self._average = None
        self._locals = None
        return self

    def add_observations(self, *arrays) -> "Calculator":
        if not hasattr(self, "_store") or self._store is None:
            raise LifecycleError("call initialise() before add_observations()")
        tuple_arrays, raw_length, offset, tail = self._ingest(*arrays)
        self._store.add_trial(tuple_arrays, raw_length, offset, tail)
        return self

    def finalise(self) -> "Calculator":
        if not hasattr(self, "_store") or self._store is None:
            raise LifecycleError("call initialise() before finalise()")
        self._store.finalise()
        self._post_finalise()
        return self

    def set_observations(self, *arrays) -> "Calculator":
        self.initialise()
        self.add_observations(*arrays)
        return self.finalise()

    def fit(self, *arrays) -> "Calculator":
        """One-shot convenience: ingest the given realisation(s) and compute.

        Sets `average_`, `local_` and `n_observations_`.
        """
        self.set_observations(*arrays)
        self.average_ = self.compute_average()
        self.local_ = self.compute_local()
        self.n_observations_ = self._store.n_tuples
        return self

    def _post_finalise(self) -> None:
        """Hook run once after observations are frozen (e.g. KSG jitter)."""

    # ----------------------------------------------------------------- compute
    def _require_finalised(self) -> ObservationStore:
        store = getattr(self, "_store", None)
        if store is None or not store.finalised:
            raise LifecycleError(
                "no finalised observations; call fit() or the "
                "initialise/add_observations/finalise sequence first"
            )
        return store

    def _tuple_arrays(self) -> dict[str, np.ndarray]:
        store = self._require_finalised()
        return {name: store[name] for name in self._variables}

    def _compute(self) -> None:
        if self._average is None:
            avg, loc = self._evaluate(self._tuple_arrays())
            self._average = float(avg)
            self._locals = np.asarray(loc, dtype=float)

    def compute_average(self) -> float:
        self._require_finalised()
        self._compute()
        return self._average

    def compute_local(self) -> np.ndarray:
        """Local series aligned to the concatenated raw inputs (zero padded)."""
        store = self._require_finalised()
        self._compute()
        total, segments = store.local_layout()
        out = np.zeros(total)
        pos = 0
        for start, count in segments:
            out[start:start + count] = self._locals[pos:pos + count]
            pos += count
        return out

    def result(self) -> MeasureResult:
        store = self._require_finalised()
        local = self.compute_local()
        _, segments = store.local_layout()
        return MeasureResult(
            average=self.compute_average(),
            units=self.units,
            n_observations=store.n_tuples,
            local=local,
            segments=segments,
        )

    # ------------------------------------------------------------ significance
    def compute_significance(self, n_surrogates: int, method: str = "permutation",
                             seed: int = 0) -> NullDistribution:
        from .surrogates import compute_significance
        return compute_significance(self, n_surrogates, method=method, seed=seed)

    def compute_analytic_significance(self) -> NullDistribution:
        from .surrogates import analytic_significance
        return analytic_significance(self)

    # ------------------------------------------------- family/measure internals
    def _ingest(self, *arrays):
        raise NotImplementedError

    def _evaluate(self, arrays: dict[str, np.ndarray]):
        raise NotImplementedError

    def _analytic_null_params(self):
        """(dof, scale) of the chi-square analytic null, if one exists."""
        raise AnalyticNullUnavailableError(
            f"analytic null unavailable for {self.measure} with {type(self).__name__}"
        )
