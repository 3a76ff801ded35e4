"""Dressed-state model of a laser-driven double-quantum-dot molecule.

All energies are in eV.  The three-state basis is ordered

    (|n, g>, |n-1, XD>, |n-1, XI>)

i.e. the ground configuration with n laser photons, the optically active
direct exciton, and the tunnel-coupled, optically dark indirect exciton.
Every photon-number triplet maps onto the same 3x3 eigenproblem once the
reference energy e_ref = E_XD + (n - 1) * hw_l is subtracted from the
diagonal, which keeps the numerics well conditioned (absolute rung
energies are of order n * hw_l).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EmitterParams",
    "DriveParams",
    "TripletHamiltonian",
    "DressedTriplet",
    "reduced_hamiltonian",
    "diagonalize",
    "delta_from_field",
]

# Relative slack when deciding which eigenvector components are tied for
# the largest magnitude; exact analytic ties come back from the eigensolver
# a few ulp apart.
_TIE_RTOL = 1e-12

_ORTHO_TOL = 1e-12


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class EmitterParams:
    """Physical parameters of the quantum-dot molecule.

    e_xd:  direct-exciton energy (eV)
    delta: exciton splitting E_XI - E_XD (eV); any finite value, either sign
    t:     tunneling rate between the exciton states (eV, >= 0)
    mu:    dipole scale of the direct exciton (arbitrary luminosity units, > 0)
    d:     interdot distance (nm, > 0); only electric-field tuning uses it
    e0:    ground-configuration energy (eV); 0 puts the energy zero there
    """

    e_xd: float
    delta: float
    t: float
    mu: float = 1.0
    d: float = 10.0
    e0: float = 0.0

    def __post_init__(self) -> None:
        for name in ("e_xd", "delta", "t", "mu", "d", "e0"):
            _require_finite(name, getattr(self, name))
        if self.t < 0.0:
            raise ValueError(f"tunneling rate t must be non-negative, got {self.t}")
        if self.mu <= 0.0:
            raise ValueError(f"dipole scale mu must be positive, got {self.mu}")
        if self.d <= 0.0:
            raise ValueError(f"interdot distance d must be positive, got {self.d}")


@dataclass(frozen=True)
class DriveParams:
    """Monochromatic drive field.

    n:    photon number (integer >= 1); the intense-drive regime has n >> 1
    g:    radiation-matter coupling (eV, >= 0)
    hw_l: laser photon energy (eV, > 0)

    Only the product g * sqrt(n) enters the Hamiltonian, so a measured
    effective coupling can be supplied directly via
    :meth:`from_effective_coupling`.
    """

    n: int
    g: float
    hw_l: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"photon number n must be an integer, got {self.n!r}")
        if self.n < 1:
            raise ValueError(f"photon number n must be >= 1, got {self.n}")
        _require_finite("g", self.g)
        _require_finite("hw_l", self.hw_l)
        if self.g < 0.0:
            raise ValueError(f"coupling g must be non-negative, got {self.g}")
        if self.hw_l <= 0.0:
            raise ValueError(f"laser photon energy hw_l must be positive, got {self.hw_l}")

    @property
    def g_sqrt_n(self) -> float:
        """Effective Rabi coupling g * sqrt(n) (eV)."""
        return self.g * math.sqrt(self.n)

    @classmethod
    def from_effective_coupling(cls, g_sqrt_n: float, hw_l: float) -> "DriveParams":
        """Build drive parameters from a precomputed g * sqrt(n) value."""
        return cls(n=1, g=g_sqrt_n, hw_l=hw_l)


@dataclass(frozen=True)
class TripletHamiltonian:
    """Rotating-frame Hamiltonian of one photon triplet.

    m is a real symmetric 3x3 matrix in the basis described in the module
    docstring, with the reference energy e_ref already subtracted from the
    diagonal.  The (g, XI) corner is exactly zero: the indirect exciton is
    optically dark, so the only couplings are the drive (g-XD) and the
    tunneling (XD-XI).
    """

    m: np.ndarray
    e_ref: float

    def __post_init__(self) -> None:
        m = np.asarray(self.m, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"m must be 3x3, got shape {m.shape}")
        if not np.isfinite(m).all():
            raise ValueError("m must be finite")
        if not np.array_equal(m, m.T):
            raise ValueError("m must be exactly symmetric")
        if m[0, 2] != 0.0 or m[2, 0] != 0.0:
            raise ValueError("no direct g-XI coupling allowed: m[0][2] must be 0")
        _require_finite("e_ref", self.e_ref)
        m.setflags(write=False)
        object.__setattr__(self, "m", m)


@dataclass(frozen=True)
class DressedTriplet:
    """Eigensystem of a triplet Hamiltonian.

    energies: the three eigenvalues, ascending, relative to e_ref (eV)
    coeffs:   3x3 orthonormal matrix; row i holds (C_g, C_XD, C_XI) of
              dressed state i.  Sign convention: in each row the component
              of largest magnitude is positive, ties resolved in favor of
              the first such component.
    """

    energies: np.ndarray
    coeffs: np.ndarray
    e_ref: float

    def __post_init__(self) -> None:
        energies = np.asarray(self.energies, dtype=float)
        coeffs = np.asarray(self.coeffs, dtype=float)
        if energies.shape != (3,):
            raise ValueError(f"energies must have shape (3,), got {energies.shape}")
        if coeffs.shape != (3, 3):
            raise ValueError(f"coeffs must be 3x3, got shape {coeffs.shape}")
        if not (np.isfinite(energies).all() and np.isfinite(coeffs).all()):
            raise ValueError("energies and coeffs must be finite")
        if not (energies[0] <= energies[1] <= energies[2]):
            raise ValueError(f"energies must be ascending, got {energies}")
        gram = coeffs @ coeffs.T
        if np.abs(gram - np.eye(3)).max() > _ORTHO_TOL:
            raise ValueError("coeff rows must be orthonormal within 1e-12")
        for row in coeffs:
            lead = _leading_component(row)
            if row[lead] < 0.0:
                raise ValueError("sign convention violated: leading component negative")
        _require_finite("e_ref", self.e_ref)
        energies.setflags(write=False)
        coeffs.setflags(write=False)
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "coeffs", coeffs)


def _leading_component(row: np.ndarray) -> int:
    mag = np.abs(row)
    # First component whose magnitude is within _TIE_RTOL of the maximum.
    return int(np.argmax(mag >= mag.max() * (1.0 - _TIE_RTOL)))


def reduced_hamiltonian(emitter: EmitterParams, drive: DriveParams) -> TripletHamiltonian:
    """Build the rotating-frame triplet Hamiltonian.

    With the laser detuning delta_l = hw_l + e0 - e_xd the reduced matrix is

        [[delta_l, g*sqrt(n), 0    ],
         [g*sqrt(n), 0,       t    ],
         [0,         t,       delta]]

    and e_ref = e_xd + (n - 1) * hw_l.  At exact resonance (hw_l = e_xd - e0)
    the top-left entry vanishes.
    """
    delta_l = drive.hw_l + emitter.e0 - emitter.e_xd
    gsn = drive.g_sqrt_n
    t = emitter.t
    m = np.array(
        [
            [delta_l, gsn, 0.0],
            [gsn, 0.0, t],
            [0.0, t, emitter.delta],
        ]
    )
    e_ref = emitter.e_xd + (drive.n - 1) * drive.hw_l
    return TripletHamiltonian(m=m, e_ref=e_ref)


def diagonalize(h: TripletHamiltonian) -> DressedTriplet:
    """Diagonalize a triplet Hamiltonian into its dressed states.

    Eigenvalues come back ascending; eigenvector rows follow the sign
    convention of :class:`DressedTriplet`.  A fully decoupled (diagonal)
    Hamiltonian is handled exactly so the bare energies are reproduced
    bit for bit.
    """
    m = h.m
    if m[0, 1] == 0.0 and m[1, 2] == 0.0:
        order = np.argsort(np.diag(m), kind="stable")
        energies = np.diag(m)[order].copy()
        coeffs = np.eye(3)[order]
        return DressedTriplet(energies=energies, coeffs=coeffs, e_ref=h.e_ref)

    evals, evecs = np.linalg.eigh(m)
    coeffs = evecs.T.copy()
    for k in range(3):
        if coeffs[k, _leading_component(coeffs[k])] < 0.0:
            coeffs[k] = -coeffs[k]
    return DressedTriplet(energies=evals, coeffs=coeffs, e_ref=h.e_ref)


def delta_from_field(delta_zero_field: float, d_nm: float, field_kv_per_cm: float) -> float:
    """Exciton splitting under a bias field along the growth axis.

    The field shifts only the indirect exciton, by e * d * F; with d in nm
    and F in kV/cm that is d * F * 1e-4 eV.  A positive field lowers the
    indirect-exciton energy, so the splitting decreases linearly and
    crosses zero at F = delta_zero_field / (d * 1e-4).
    """
    _require_finite("delta_zero_field", delta_zero_field)
    _require_finite("field_kv_per_cm", field_kv_per_cm)
    if not math.isfinite(d_nm) or d_nm <= 0.0:
        raise ValueError(f"interdot distance d must be positive, got {d_nm}")
    return delta_zero_field - d_nm * field_kv_per_cm * 1e-4
