"""Parameter sweeps: dressed-energy curves, transition branches, temperature
series, and the 2-d intensity map over (exciton splitting, detuning).

Every row of a sweep is an independent pure-function evaluation, so sweeps
may fan out over a thread pool; assembly preserves the input ordering and
single-threaded runs produce bit-identical results.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from .core import DressedTriplet, DriveParams, EmitterParams, delta_from_field, diagonalize, reduced_hamiltonian
from .spectrum import BroadeningModel, GridSpec, SpectrumGrid, linewidth, synthesize, transitions

__all__ = [
    "AXES",
    "BRANCH_LABELS",
    "SweepRange",
    "EnergyCurves",
    "TransitionBranches",
    "IntensityMap",
    "dressed_energy_curves",
    "transition_branches",
    "temperature_series",
    "intensity_map",
    "delta_values_from_field",
]

AXES = ("delta", "temperature", "field")

BRANCH_LABELS: tuple[tuple[int, int], ...] = tuple((i, j) for i in (1, 2, 3) for j in (1, 2, 3))
"""Fixed (upper, lower) labeling of the nine branches, row-major."""

_T = TypeVar("_T")


@dataclass(frozen=True)
class SweepRange:
    """Uniform sweep over one axis: steps values from lo to hi inclusive."""

    lo: float
    hi: float
    steps: int
    axis: str = "delta"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("sweep bounds must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if not isinstance(self.steps, int) or isinstance(self.steps, bool):
            raise ValueError(f"steps must be an integer, got {self.steps!r}")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class EnergyCurves:
    """Dressed-state energies along a splitting sweep; energies[k] ascends."""

    delta: np.ndarray
    energies: np.ndarray

    def __post_init__(self) -> None:
        d = np.asarray(self.delta, dtype=float)
        e = np.asarray(self.energies, dtype=float)
        if d.ndim != 1 or e.shape != (d.size, 3):
            raise ValueError("energies must have shape (len(delta), 3)")
        d.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "energies", e)


@dataclass(frozen=True)
class TransitionBranches:
    """Transition detunings along a splitting sweep, columns in BRANCH_LABELS order."""

    delta: np.ndarray
    a: np.ndarray

    def __post_init__(self) -> None:
        d = np.asarray(self.delta, dtype=float)
        a = np.asarray(self.a, dtype=float)
        if d.ndim != 1 or a.shape != (d.size, 9):
            raise ValueError("a must have shape (len(delta), 9)")
        d.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "a", a)

    labels = BRANCH_LABELS


@dataclass(frozen=True)
class IntensityMap:
    """Spectrum intensity sampled over (splitting, detuning)."""

    delta_axis: np.ndarray
    dp_axis: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        d = np.asarray(self.delta_axis, dtype=float)
        x = np.asarray(self.dp_axis, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if d.ndim != 1 or x.ndim != 1 or v.shape != (d.size, x.size):
            raise ValueError("values must have shape (len(delta_axis), len(dp_axis))")
        if not np.isfinite(v).all() or (v < 0.0).any():
            raise ValueError("intensities must be finite and non-negative")
        for arr in (d, x, v):
            arr.setflags(write=False)
        object.__setattr__(self, "delta_axis", d)
        object.__setattr__(self, "dp_axis", x)
        object.__setattr__(self, "values", v)


def _map_ordered(fn: Callable[[_T], object], items: Sequence[_T], workers: int) -> list:
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _require_delta_axis(rng: SweepRange) -> None:
    if rng.axis != "delta":
        raise ValueError(f"sweep axis must be 'delta', got {rng.axis!r}")


def _dressed_at(emitter: EmitterParams, drive: DriveParams, delta: float) -> DressedTriplet:
    return diagonalize(reduced_hamiltonian(replace(emitter, delta=delta), drive))


def dressed_energy_curves(rng: SweepRange, emitter: EmitterParams, drive: DriveParams) -> EnergyCurves:
    """Dressed energies E1 <= E2 <= E3 at each splitting value."""
    _require_delta_axis(rng)
    deltas = rng.values()
    energies = np.stack([_dressed_at(emitter, drive, float(d)).energies for d in deltas])
    return EnergyCurves(delta=deltas, energies=energies)


def transition_branches(rng: SweepRange, emitter: EmitterParams, drive: DriveParams) -> TransitionBranches:
    """Transition detunings a_ij at each splitting value.

    Branches are labeled by fixed (i, j) after ascending-energy sorting, so
    at an exact level crossing a pair of labels can swap between rows.
    """
    _require_delta_axis(rng)
    deltas = rng.values()
    rows = []
    for d in deltas:
        e = _dressed_at(emitter, drive, float(d)).energies
        rows.append([e[i - 1] - e[j - 1] for i, j in BRANCH_LABELS])
    return TransitionBranches(delta=deltas, a=np.array(rows))


def temperature_series(
    temps: Iterable[float],
    emitter: EmitterParams,
    drive: DriveParams,
    model: BroadeningModel,
    grid: GridSpec,
    workers: int = 1,
) -> list[SpectrumGrid]:
    """One spectrum per temperature on a shared grid, same transitions throughout."""
    temp_list = [float(t) for t in temps]
    if not temp_list:
        raise ValueError("temps must not be empty")
    trans = transitions(_dressed_at(emitter, drive, emitter.delta), emitter.mu)

    def one(temp_k: float) -> SpectrumGrid:
        gamma = linewidth(model, temp_k)
        meta = {"temp_k": temp_k, "delta_ev": emitter.delta}
        return synthesize(trans, gamma, model.gamma_rad, grid, meta=meta)

    return _map_ordered(one, temp_list, workers)


def intensity_map(
    delta_range: SweepRange,
    grid: GridSpec,
    emitter: EmitterParams,
    drive: DriveParams,
    model: BroadeningModel,
    temp_k: float = 0.0,
    workers: int = 1,
) -> IntensityMap:
    """Spectrum rows over a splitting sweep at fixed temperature.

    Row r equals a standalone spectrum computed at delta_axis[r]; rows are
    independent and the assembly order is the sweep order.
    """
    _require_delta_axis(delta_range)
    deltas = delta_range.values()
    gamma = linewidth(model, temp_k)

    def one(delta: float) -> np.ndarray:
        trans = transitions(_dressed_at(emitter, drive, delta), emitter.mu)
        return synthesize(trans, gamma, model.gamma_rad, grid).intensity

    rows = _map_ordered(one, [float(d) for d in deltas], workers)
    meta = {
        "temp_k": temp_k,
        "gamma_pop_ev": gamma,
        "gamma_rad_ev": model.gamma_rad,
        "t_ev": emitter.t,
        "g_sqrt_n_ev": drive.g_sqrt_n,
        "mu": emitter.mu,
    }
    return IntensityMap(delta_axis=deltas, dp_axis=grid.values(), values=np.stack(rows), meta=meta)


def delta_values_from_field(
    rng: SweepRange,
    delta_zero_field: float,
    d_nm: float,
) -> np.ndarray:
    """Map a field-axis sweep (kV/cm) to the splitting values it produces.

    Field sweeps carry no physics of their own; this pre-map feeds the
    resulting splittings into the delta-axis machinery.
    """
    if rng.axis != "field":
        raise ValueError(f"sweep axis must be 'field', got {rng.axis!r}")
    return np.array([delta_from_field(delta_zero_field, d_nm, float(f)) for f in rng.values()])
