"""Shared domain types: units, complex energies, potentials, scaling angles.

Everything is in atomic units (hbar = m = q = 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidAngleError, PotentialNotEvaluableError

C_LIGHT_AU = 137.035999


@dataclass(frozen=True)
class UnitSystem:
    hbar: float = 1.0
    mass: float = 1.0
    charge: float = 1.0
    c_light: float = C_LIGHT_AU

    def __post_init__(self):
        if (self.hbar, self.mass, self.charge) != (1.0, 1.0, 1.0):
            raise ValueError("only atomic units are supported")
        if not self.c_light > 0:
            raise ValueError("c_light must be positive")

    @property
    def compton_cutoff_sq(self) -> float:
        """Squared Compton frequency (m c^2 / hbar) in a.u., i.e. c^2."""
        return self.c_light**2


@dataclass(frozen=True)
class ComplexEnergy:
    """E = hbar*omega - i*Gamma/2."""

    re: float
    im: float

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexEnergy":
        return cls(float(z.real), float(z.imag))

    @classmethod
    def from_omega_gamma(cls, omega: float, gamma: float) -> "ComplexEnergy":
        return cls(float(omega), -0.5 * float(gamma))

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def omega(self) -> float:
        return self.re

    @property
    def gamma(self) -> float:
        return -2.0 * self.im


def complex_frequency(e_n, e_m) -> complex:
    """f_nm = (E_n - E_m)/hbar = omega_nm - i(Gamma_n - Gamma_m)/2."""
    if isinstance(e_n, ComplexEnergy):
        e_n = e_n.value
    if isinstance(e_m, ComplexEnergy):
        e_m = e_m.value
    return complex(e_n) - complex(e_m)


def check_theta(theta: float) -> float:
    theta = float(theta)
    if not (0.0 <= theta < math.pi / 4):
        raise InvalidAngleError(f"theta={theta} outside [0, pi/4)")
    return theta


@dataclass(frozen=True)
class PotentialSpec:
    """Analytic 1D potential.

    kind ``gaussian-well``: V(x) = (a x^2 + b) exp(-w x^2)
    kind ``harmonic``:      V(x) = omega0^2 x^2 / 2
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == "gaussian-well":
            missing = {"a", "b", "w"} - set(self.params)
            if missing:
                raise ValueError(f"gaussian-well needs parameters {sorted(missing)}")
            if not self.params["w"] > 0:
                raise ValueError("gaussian-well width w must be positive")
        elif self.kind == "harmonic":
            if "omega0" not in self.params:
                raise ValueError("harmonic needs parameter omega0")
            if not self.params["omega0"] > 0:
                raise ValueError("omega0 must be positive")
        else:
            raise ValueError(f"unknown potential kind {self.kind!r}")

    @classmethod
    def gaussian_well(cls, a=0.5, b=-2.1, w=0.1) -> "PotentialSpec":
        return cls("gaussian-well", {"a": float(a), "b": float(b), "w": float(w)})

    @classmethod
    def harmonic(cls, omega0=1.0) -> "PotentialSpec":
        return cls("harmonic", {"omega0": float(omega0)})

    @property
    def threshold(self) -> float:
        """Energy of the continuum edge; states below it with real energy are bound."""
        return 0.0 if self.kind == "gaussian-well" else math.inf

    def __call__(self, z):
        z = np.asarray(z)
        if self.kind == "gaussian-well":
            p = self.params
            z2 = z * z
            return (p["a"] * z2 + p["b"]) * np.exp(-p["w"] * z2)
        w0 = self.params["omega0"]
        return 0.5 * w0 * w0 * z * z

    def on_ray(self, x, theta: float) -> np.ndarray:
        """V(x e^{i theta}) for real x."""
        with np.errstate(over="ignore", invalid="ignore"):
            v = np.asarray(self(np.asarray(x, dtype=float) * np.exp(1j * theta)), dtype=complex)
        if not np.all(np.isfinite(v)):
            raise PotentialNotEvaluableError(
                f"{self.kind} potential not finite on the ray arg(x) = {theta}"
            )
        return v

    def describe(self) -> dict:
        return {"kind": self.kind, **{k: float(v) for k, v in sorted(self.params.items())}}
