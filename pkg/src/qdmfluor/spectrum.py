"""Dressed-state transitions and Lorentzian emission-spectrum synthesis.

A dressed triplet emits into the triplet one photon rung below.  In the
intense-drive limit both rungs share the same coefficients, so the nine
allowed transitions (i upper, j lower) sit at detunings

    a_ij = E_i - E_j        (eV, relative to the laser energy)

and carry luminosities

    L_ij = mu^2 * (C_g^j)^2 * (C_XD^i)^2

where the lower state contributes its ground-configuration weight and the
upper state its direct-exciton weight (the emission matrix element is
<j| d |i> with d destroying the direct exciton).  Summed over all nine
transitions the luminosities always add up to mu^2.

Each transition contributes an unnormalized Lorentzian

    S(dp) = I_ij * f^2 / ((dp - a_ij)^2 + f^2),   I_ij = L_ij / f

with half width f = Gamma/2 for the central peaks (i == j) and
f = (Gamma + gamma)/2 for the side peaks, Gamma being the temperature
dependent population linewidth and gamma the pure radiative rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DressedTriplet

__all__ = [
    "CENTRAL",
    "SIDE",
    "K_B",
    "Transition",
    "BroadeningModel",
    "GridSpec",
    "SpectrumGrid",
    "transitions",
    "linewidth",
    "hwhm",
    "synthesize",
    "count_peaks",
    "resolvable_maxima",
]

CENTRAL = "central"
SIDE = "side"

K_B = 8.617333262e-5
"""Boltzmann constant in eV/K."""


@dataclass(frozen=True)
class Transition:
    """One dressed-state transition between adjacent triplets.

    i, j are 1-based dressed-state indices (upper, lower), a the detuning
    energy E_i - E_j in eV (the absolute photon energy is a + hw_l), lum
    the luminosity in units of mu^2, kind "central" for i == j else "side".
    """

    i: int
    j: int
    a: float
    lum: float
    kind: str

    def __post_init__(self) -> None:
        if self.i not in (1, 2, 3) or self.j not in (1, 2, 3):
            raise ValueError(f"indices must be in 1..3, got ({self.i}, {self.j})")
        expected = CENTRAL if self.i == self.j else SIDE
        if self.kind != expected:
            raise ValueError(f"kind {self.kind!r} inconsistent with indices ({self.i}, {self.j})")
        if self.kind == CENTRAL and self.a != 0.0:
            raise ValueError("central transitions must have a == 0 exactly")
        if not (math.isfinite(self.a) and math.isfinite(self.lum)):
            raise ValueError("a and lum must be finite")
        if self.lum < 0.0:
            raise ValueError(f"luminosity must be non-negative, got {self.lum}")


@dataclass(frozen=True)
class BroadeningModel:
    """Temperature-dependent linewidth model.

    Gamma(T) = gamma0 + a_coef * T + b_coef * exp(-delta_e / (k_B * T))

    gamma0 is the zero-temperature population linewidth, the linear term the
    acoustic-phonon contribution, the exponential term the optical-phonon
    contribution (disabled at b_coef = 0, the low-temperature default).
    gamma_rad is the pure radiative rate entering the side-peak width.
    All rates in eV, a_coef in eV/K, delta_e in eV.
    """

    gamma0: float
    a_coef: float
    gamma_rad: float
    b_coef: float = 0.0
    delta_e: float = 36e-3

    def __post_init__(self) -> None:
        for name in ("gamma0", "a_coef", "gamma_rad", "b_coef", "delta_e"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.gamma0 <= 0.0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")
        if self.a_coef < 0.0:
            raise ValueError(f"a_coef must be non-negative, got {self.a_coef}")
        if self.b_coef < 0.0:
            raise ValueError(f"b_coef must be non-negative, got {self.b_coef}")
        if self.gamma_rad <= 0.0:
            raise ValueError(f"gamma_rad must be positive, got {self.gamma_rad}")
        if self.b_coef > 0.0 and self.delta_e <= 0.0:
            raise ValueError("delta_e must be positive when the optical-phonon term is active")


@dataclass(frozen=True)
class GridSpec:
    """Uniform detuning grid: npoints samples over [dp_min, dp_max] (eV)."""

    dp_min: float
    dp_max: float
    npoints: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dp_min) and math.isfinite(self.dp_max)):
            raise ValueError("grid bounds must be finite")
        if not self.dp_min < self.dp_max:
            raise ValueError(f"need dp_min < dp_max, got [{self.dp_min}, {self.dp_max}]")
        if not isinstance(self.npoints, int) or isinstance(self.npoints, bool):
            raise ValueError(f"npoints must be an integer, got {self.npoints!r}")
        if self.npoints < 2:
            raise ValueError(f"npoints must be >= 2, got {self.npoints}")

    def values(self) -> np.ndarray:
        return np.linspace(self.dp_min, self.dp_max, self.npoints)

    @property
    def step(self) -> float:
        return (self.dp_max - self.dp_min) / (self.npoints - 1)


@dataclass(frozen=True)
class SpectrumGrid:
    """Sampled emission spectrum S(delta_prime) plus run metadata."""

    delta_prime: np.ndarray
    intensity: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        x = np.asarray(self.delta_prime, dtype=float)
        y = np.asarray(self.intensity, dtype=float)
        if x.ndim != 1 or x.shape != y.shape or x.size < 2:
            raise ValueError("delta_prime and intensity must be equal-length 1-d arrays, >= 2 points")
        if not (np.diff(x) > 0.0).all():
            raise ValueError("delta_prime must be strictly increasing")
        if not np.isfinite(y).all() or (y < 0.0).any():
            raise ValueError("intensities must be finite and non-negative")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "delta_prime", x)
        object.__setattr__(self, "intensity", y)

    @property
    def dp_min(self) -> float:
        return float(self.delta_prime[0])

    @property
    def dp_max(self) -> float:
        return float(self.delta_prime[-1])

    @property
    def npoints(self) -> int:
        return int(self.delta_prime.size)

    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.delta_prime.tolist(), self.intensity.tolist()))


def transitions(dressed: DressedTriplet, mu: float) -> list[Transition]:
    """Enumerate the nine transitions of a dressed triplet, (i, j) ordered.

    The lower state j supplies the C_g factor and the upper state i the
    C_XD factor; see the module docstring for the convention.
    """
    if not math.isfinite(mu) or mu < 0.0:
        raise ValueError(f"dipole scale mu must be finite and non-negative, got {mu!r}")
    energies = dressed.energies
    coeffs = dressed.coeffs
    mu2 = mu * mu
    out: list[Transition] = []
    for i in range(3):
        for j in range(3):
            a = 0.0 if i == j else float(energies[i] - energies[j])
            lum = mu2 * float(coeffs[j, 0]) ** 2 * float(coeffs[i, 1]) ** 2
            kind = CENTRAL if i == j else SIDE
            out.append(Transition(i=i + 1, j=j + 1, a=a, lum=lum, kind=kind))
    return out


def linewidth(model: BroadeningModel, temp_k: float) -> float:
    """Population linewidth Gamma(T) in eV; rejects negative temperature."""
    if not math.isfinite(temp_k) or temp_k < 0.0:
        raise ValueError(f"temperature must be >= 0 K, got {temp_k!r}")
    optical = 0.0
    if model.b_coef > 0.0 and temp_k > 0.0:
        optical = model.b_coef * math.exp(-model.delta_e / (K_B * temp_k))
    return model.gamma0 + model.a_coef * temp_k + optical


def hwhm(kind: str, gamma_pop: float, gamma_rad: float) -> float:
    """Half width at half maximum of one peak (eV).

    Central peaks broaden as Gamma/2, side peaks as the average of the
    population and radiative rates, (Gamma + gamma)/2.
    """
    if not (math.isfinite(gamma_pop) and gamma_pop > 0.0):
        raise ValueError(f"gamma_pop must be positive, got {gamma_pop!r}")
    if not (math.isfinite(gamma_rad) and gamma_rad > 0.0):
        raise ValueError(f"gamma_rad must be positive, got {gamma_rad!r}")
    if kind == CENTRAL:
        return gamma_pop / 2.0
    if kind == SIDE:
        return (gamma_pop + gamma_rad) / 2.0
    raise ValueError(f"unknown peak kind {kind!r}")


def synthesize(
    trans: list[Transition],
    gamma_pop: float,
    gamma_rad: float,
    grid: GridSpec,
    meta: dict | None = None,
) -> SpectrumGrid:
    """Sum the transition Lorentzians on a uniform detuning grid.

    Each transition with nonzero luminosity contributes
    I * f^2 / ((dp - a)^2 + f^2) with I = lum / f.  Transitions sharing a
    position (the three central ones) simply add.
    """
    if not trans:
        raise ValueError("transition list must not be empty")
    # Width validation up front, independent of luminosities.
    hwhm(CENTRAL, gamma_pop, gamma_rad)
    x = grid.values()
    y = np.zeros_like(x)
    for tr in trans:
        if tr.lum == 0.0:
            continue
        f = hwhm(tr.kind, gamma_pop, gamma_rad)
        y += (tr.lum / f) * f * f / ((x - tr.a) ** 2 + f * f)
    full_meta = dict(meta) if meta else {}
    full_meta.setdefault("gamma_pop_ev", gamma_pop)
    full_meta.setdefault("gamma_rad_ev", gamma_rad)
    return SpectrumGrid(delta_prime=x, intensity=y, meta=full_meta)


def count_peaks(
    trans: list[Transition],
    energy_tol: float = 1e-6,
    intensity_floor: float = 1e-3,
) -> tuple[int, list[float]]:
    """Count distinct emission lines after a relative luminosity floor.

    Transitions with lum < intensity_floor * max(lum) are discarded, the
    remaining positions are clustered with gap tolerance energy_tol, and the
    luminosity-weighted cluster centers are returned ascending.  Returns
    (0, []) when every transition falls below the floor, which signals a
    vanishing dipole scale or pathological input.
    """
    if not (math.isfinite(energy_tol) and energy_tol > 0.0):
        raise ValueError(f"energy_tol must be positive, got {energy_tol!r}")
    if not (0.0 <= intensity_floor < 1.0):
        raise ValueError(f"intensity_floor must be in [0, 1), got {intensity_floor!r}")
    if not trans:
        raise ValueError("transition list must not be empty")

    max_lum = max(tr.lum for tr in trans)
    if max_lum <= 0.0:
        return 0, []
    threshold = intensity_floor * max_lum
    kept = [tr for tr in trans if tr.lum >= threshold] if intensity_floor > 0.0 else list(trans)
    if not kept:
        return 0, []

    kept.sort(key=lambda tr: tr.a)
    clusters: list[list[Transition]] = [[kept[0]]]
    for tr in kept[1:]:
        if tr.a - clusters[-1][-1].a <= energy_tol:
            clusters[-1].append(tr)
        else:
            clusters.append([tr])

    centers = []
    for members in clusters:
        weight = sum(tr.lum for tr in members)
        if weight > 0.0:
            centers.append(sum(tr.a * tr.lum for tr in members) / weight)
        else:
            centers.append(sum(tr.a for tr in members) / len(members))
    return len(clusters), centers


def resolvable_maxima(intensity: np.ndarray, rel_floor: float = 1e-4) -> np.ndarray:
    """Indices of strict local maxima at least rel_floor of the strongest sample.

    The floor keeps numerical ripple in flat tails from counting as
    structure; endpoints never qualify.
    """
    y = np.asarray(intensity, dtype=float)
    if y.ndim != 1 or y.size < 3:
        return np.empty(0, dtype=int)
    if not (0.0 <= rel_floor < 1.0):
        raise ValueError(f"rel_floor must be in [0, 1), got {rel_floor!r}")
    inner = (y[1:-1] > y[:-2]) & (y[1:-1] > y[2:])
    top = y.max()
    if top > 0.0:
        inner &= y[1:-1] >= rel_floor * top
    return np.flatnonzero(inner) + 1
