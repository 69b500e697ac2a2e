"""Elementary cellular automata and pooled local-information profiles.

Profiles treat every cell as one realisation of the same process (spatial
homogeneity), pooling counts across cells so a single run yields the
space-time grids of local storage/transfer values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .discrete import (DiscreteActiveInfoStorage, DiscreteEntropy, DiscreteSeparableInfo,
                       DiscreteTransferEntropy)
from .exceptions import DataError


@dataclass
class EcaConfig:
    rule: int
    width: int
    steps: int
    seed: int | None = 0
    init: np.ndarray | None = None

    def __post_init__(self):
        if not 0 <= self.rule < 256:
            raise DataError(f"ECA rule must be in [0, 256), got {self.rule}")
        if self.width < 3:
            raise DataError(f"ECA width must be >= 3, got {self.width}")
        if self.steps < 1:
            raise DataError(f"ECA steps must be >= 1, got {self.steps}")


def eca_step(state, rule: int) -> np.ndarray:
    """One synchronous update with periodic boundary.

    Each cell reads bit ((left<<2)|(center<<1)|right) of the 8-bit rule.
    """
    s = np.asarray(state, dtype=np.int64)
    left = np.roll(s, 1)
    right = np.roll(s, -1)
    idx = (left << 2) | (s << 1) | right
    table = (rule >> np.arange(8)) & 1
    return table[idx]


def eca_run(cfg: EcaConfig) -> np.ndarray:
    """(steps, width) space-time grid; row 0 is the initial state."""
    if cfg.init is not None:
        row = np.asarray(cfg.init, dtype=np.int64)
        if row.size != cfg.width or not np.all((row == 0) | (row == 1)):
            raise DataError("explicit init must be a 0/1 row of length width")
    else:
        rng = np.random.default_rng(np.random.SeedSequence(entropy=int(cfg.seed or 0)))
        row = rng.integers(0, 2, size=cfg.width)
    grid = np.empty((cfg.steps, cfg.width), dtype=np.int64)
    grid[0] = row
    for t in range(1, cfg.steps):
        grid[t] = eca_step(grid[t - 1], cfg.rule)
    return grid


_PROFILE_MEASURES = ("ais", "te_left", "te_right", "separable", "entropy")


def ca_profile_ensemble(grids: list[np.ndarray], measure: str, k: int = 16):
    """Local-information grids with counts pooled over cells and runs.

    Every cell of every run is one realisation of the same process (spatial
    homogeneity + stationarity), so all contribute to one PDF.  Returns
    (list of (steps, width) local grids, pooled average, calculator).
    TE directions take the neighboring cell at offset -1 (te_right:
    information moving rightward) or +1 (te_left) as the source with u=1.
    """
    if measure not in _PROFILE_MEASURES:
        raise DataError(f"unknown CA profile measure {measure!r}; choose from {_PROFILE_MEASURES}")
    if measure == "entropy":
        calc = DiscreteEntropy(alphabet=2)
    elif measure == "ais":
        calc = DiscreteActiveInfoStorage(alphabet=2, k=k)
    elif measure == "separable":
        calc = DiscreteSeparableInfo(alphabet=2, k=k, l=1, u=1)
    else:
        calc = DiscreteTransferEntropy(alphabet=2, k=k, l=1, u=1)
    calc.initialise()
    for grid in grids:
        width = grid.shape[1]
        for j in range(width):
            dest = grid[:, j]
            if measure in ("ais", "entropy"):
                calc.add_observations(dest)
            elif measure == "te_right":
                calc.add_observations(grid[:, (j - 1) % width], dest)
            elif measure == "te_left":
                calc.add_observations(grid[:, (j + 1) % width], dest)
            else:
                sources = np.column_stack([grid[:, (j - 1) % width],
                                           grid[:, (j + 1) % width]])
                calc.add_observations(dest, sources)
    calc.finalise()
    local = calc.compute_local()
    out = []
    pos = 0
    for grid in grids:
        steps, width = grid.shape
        out.append(local[pos:pos + steps * width].reshape(width, steps).T)
        pos += steps * width
    return out, calc.compute_average(), calc


def ca_profile(cfg: EcaConfig, measure: str, k: int = 16, grid: np.ndarray | None = None):
    """Single-run pooled local-information grid; see ca_profile_ensemble."""
    if grid is None:
        grid = eca_run(cfg)
    locals_, average, calc = ca_profile_ensemble([grid], measure, k=k)
    return locals_[0], average, calc


# --------------------------------------------------------------------------
# Domain filtering: locate the periodic background (ether) of a rule and mark
# cells that break it, then classify the moving defect structures (gliders)
# by their drift direction.

def find_backgrounds(rule: int, spatial_max: int = 6, temporal_max: int = 16):
    """Spatially and temporally periodic backgrounds of a rule.

    Each background is returned as an orbit: a (q, p) array of rows such that
    evolving row i yields row (i+1) mod q when tiled periodically.
    """
    orbits = []
    seen = set()
    for p in range(1, spatial_max + 1):
        for bits in product((0, 1), repeat=p):
            row = np.array(bits, dtype=np.int64)
            orbit = [row]
            ok = False
            for _ in range(temporal_max):
                nxt = eca_step(orbit[-1], rule) if p >= 3 else _step_small(orbit[-1], rule)
                if np.array_equal(nxt, orbit[0]):
                    ok = True
                    break
                orbit.append(nxt)
            if not ok:
                continue
            key = min(tuple(np.roll(orbit[i], s).tobytes() for i in range(len(orbit)))
                      for s in range(p))
            if key in seen:
                continue
            seen.add(key)
            orbits.append(np.array(orbit))
    return orbits


def _step_small(row: np.ndarray, rule: int) -> np.ndarray:
    """ECA step for spatial period < 3 by tiling to length 3*p first."""
    p = row.size
    tiled = np.tile(row, max(3, (3 + p - 1) // p))
    return eca_step(tiled, rule)[:p]


def domain_mask(grid: np.ndarray, orbit: np.ndarray) -> np.ndarray:
    """True where a cell belongs to some q x p block that perfectly matches
    the orbit tiling in some phase (space wraps; time does not)."""
    steps, width = grid.shape
    q, p = orbit.shape
    mask = np.zeros((steps, width), dtype=bool)
    t_idx = np.arange(steps)[:, None]
    x_idx = np.arange(width)[None, :]
    for dt in range(q):
        for dx in range(p):
            tiled = orbit[(t_idx + dt) % q, (x_idx + dx) % p]
            agree = grid == tiled
            anchored = np.ones_like(agree)
            for tt in range(q):
                rolled_t = np.roll(agree, -tt, axis=0)
                for xx in range(p):
                    anchored &= np.roll(rolled_t, -xx, axis=1)
            anchored[steps - q + 1:] = False  # no anchors that wrap in time
            # a matching block certifies all q x p cells it covers
            for tt in range(q):
                rolled_t = np.roll(anchored, tt, axis=0)
                for xx in range(p):
                    mask |= np.roll(rolled_t, xx, axis=1)
    return mask


def glider_masks(grid: np.ndarray, rule: int, transient: int = 0):
    """Masks of right-moving / left-moving defect (glider) cells.

    The dominant periodic background is chosen by coverage on this grid;
    defect runs per row are tracked greedily between consecutive rows and a
    track's cells are classified by its mean drift velocity.
    """
    steps, width = grid.shape
    work = grid[transient:]
    best_cov, best_orbit = -1.0, None
    for orbit in find_backgrounds(rule):
        cov = domain_mask(work, orbit).mean()
        if cov > best_cov:
            best_cov, best_orbit = cov, orbit
    domain = domain_mask(work, best_orbit)
    defect = ~domain

    runs_per_row = []
    for t in range(defect.shape[0]):
        row = defect[t]
        runs = []
        if row.all():
            runs.append(np.arange(width))
        elif row.any():
            # split the periodic row into circular runs of consecutive defects
            padded = np.concatenate([[False], row, [False]])
            diff = np.diff(padded.astype(int))
            starts = np.nonzero(diff == 1)[0]
            ends = np.nonzero(diff == -1)[0]
            segs = [np.arange(a, b) for a, b in zip(starts, ends)]
            if row[0] and row[-1] and len(segs) > 1:
                segs[0] = np.concatenate([segs[-1], segs[0] + width]) % width
                segs = segs[:-1]
            runs = segs
        runs_per_row.append(runs)

    def circ_centroid(cells):
        ang = cells * (2.0 * np.pi / width)
        return (np.arctan2(np.sin(ang).mean(), np.cos(ang).mean()) % (2.0 * np.pi)) \
            / (2.0 * np.pi / width)

    right = np.zeros_like(defect)
    left = np.zeros_like(defect)
    open_tracks = []  # each: dict(centroid, drift_sum, n_steps, cells=[(t, run)])
    for t, runs in enumerate(runs_per_row):
        centroids = [circ_centroid(r) for r in runs]
        matched = [False] * len(runs)
        next_tracks = []
        for track in open_tracks:
            best, best_d = None, 3.5
            for i, c in enumerate(centroids):
                if matched[i]:
                    continue
                d = c - track["centroid"]
                d = (d + width / 2) % width - width / 2
                if abs(d) < best_d:
                    best, best_d = i, abs(d)
            if best is None:
                _classify(track, right, left)
                continue
            matched[best] = True
            d = centroids[best] - track["centroid"]
            d = (d + width / 2) % width - width / 2
            track["drift"] += d
            track["n"] += 1
            track["centroid"] = centroids[best]
            track["cells"].append((t, runs[best]))
            next_tracks.append(track)
        for i, r in enumerate(runs):
            if not matched[i]:
                next_tracks.append({"centroid": centroids[i], "drift": 0.0, "n": 0,
                                    "cells": [(t, r)]})
        open_tracks = next_tracks
    for track in open_tracks:
        _classify(track, right, left)

    pad = np.zeros((transient, width), dtype=bool)
    return {
        "domain": np.vstack([pad, domain]),
        "defect": np.vstack([pad, defect]),
        "right": np.vstack([pad, right]),
        "left": np.vstack([pad, left]),
        "background": best_orbit,
        "coverage": best_cov,
    }


# Structures drifting slower than this many cells/step count as blinkers or
# domain walls, not travelling gliders.
_GLIDER_MIN_SPEED = 0.35


def _classify(track, right, left):
    if track["n"] < 6:
        return
    velocity = track["drift"] / track["n"]
    if velocity > _GLIDER_MIN_SPEED:
        target = right
    elif velocity < -_GLIDER_MIN_SPEED:
        target = left
    else:
        return
    for t, cells in track["cells"]:
        target[t, cells % right.shape[1]] = True
