"""Accumulation of embedded observation tuples across one or more trials."""

from __future__ import annotations

import numpy as np

from .exceptions import LifecycleError


class ObservationStore:
    """Holds named, aligned tuple arrays accumulated over trials.

    Each trial contributes a block of rows to every variable; rows never span
    trial boundaries because trials are embedded independently before being
    added.  Single writer until `finalise()`, read-only afterwards.
    """

    def __init__(self, variable_names: tuple[str, ...]):
        self.variable_names = variable_names
        self._blocks: dict[str, list[np.ndarray]] = {name: [] for name in variable_names}
        self._trials: list[dict] = []
        self._arrays: dict[str, np.ndarray] | None = None
        self.finalised = False

    def add_trial(self, arrays: dict[str, np.ndarray], raw_length: int, offset: int,
                  tail: int = 0) -> None:
        if self.finalised:
            raise LifecycleError("observations already finalised; initialise() to reuse")
        counts = set()
        for name in self.variable_names:
            block = np.asarray(arrays[name])
            if block.ndim == 1:
                block = block[:, None]
            self._blocks[name].append(block)
            counts.add(block.shape[0])
        if len(counts) != 1:
            raise LifecycleError(f"misaligned tuple arrays in trial: row counts {counts}")
        self._trials.append({
            "n_tuples": counts.pop(),
            "raw_length": raw_length,
            "offset": offset,
            "tail": tail,
        })

    def finalise(self) -> None:
        if self.finalised:
            return
        if not self._trials:
            raise LifecycleError("no observations were added")
        self._arrays = {
            name: np.concatenate(self._blocks[name], axis=0)
            for name in self.variable_names
        }
        self._blocks = {}
        self.finalised = True

    def __getitem__(self, name: str) -> np.ndarray:
        if not self.finalised:
            raise LifecycleError("observations not finalised yet")
        return self._arrays[name]

    def replace(self, name: str, array: np.ndarray) -> None:
        """Swap one finalised variable in place (used for jitter at finalisation)."""
        if not self.finalised:
            raise LifecycleError("observations not finalised yet")
        self._arrays[name] = array

    @property
    def n_tuples(self) -> int:
        if not self.finalised:
            raise LifecycleError("observations not finalised yet")
        return sum(t["n_tuples"] for t in self._trials)

    @property
    def trials(self) -> list[dict]:
        return list(self._trials)

    def local_layout(self):
        """(total_raw_length, [(local_start, n_tuples, trial_offset), ...]).

        local_start is the index in the concatenated raw timeline where a
        trial's first valid local value lands.
        """
        segments = []
        base = 0
        for t in self._trials:
            segments.append((base + t["offset"], t["n_tuples"]))
            base += t["raw_length"]
        return base, segments
