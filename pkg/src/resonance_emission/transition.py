"""c-product transition dipoles, complex frequencies and Z = d^2 f."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .discretization import Grid, first_derivative
from .errors import GridMismatchError
from .spectral import EigenState, Spectrum


@dataclass(frozen=True, eq=False)
class TransitionTable:
    """d[n, n'], f[n, n'] and Z[n, n'] over the states of one spectrum (global indices)."""

    d: np.ndarray
    f: np.ndarray
    Z: np.ndarray
    theta: float


def _check(a: EigenState, b: EigenState, grid: Grid):
    if len(a.wavefunction) != grid.n_points or len(b.wavefunction) != grid.n_points:
        raise GridMismatchError(
            f"wavefunctions of length {len(a.wavefunction)}/{len(b.wavefunction)} "
            f"on a {grid.n_points}-point grid"
        )


def dipole_element(a: EigenState, b: EigenState, grid: Grid, theta: float,
                   charge: float = 1.0) -> complex:
    """q e^{i theta} sum_i u_a(x_i) x_i u_b(x_i) dx.

    This is the contour integral of psi_a xi psi_b along the rotated axis
    xi = x e^{i theta}, written on the real grid.
    """
    _check(a, b, grid)
    s = np.sum(a.wavefunction * grid.x * b.wavefunction) * grid.dx
    return complex(charge * np.exp(1j * theta) * s)


def momentum_element(a: EigenState, b: EigenState, grid: Grid, theta: float,
                     hbar: float = 1.0) -> complex:
    """(u_b | p e^{-i theta} | u_a) with the sinc-DVR first derivative."""
    _check(a, b, grid)
    dpsi = first_derivative(grid) @ a.wavefunction
    return complex(-1j * hbar * np.exp(-1j * theta) * np.sum(b.wavefunction * dpsi) * grid.dx)


def momentum_consistency(a: EigenState, b: EigenState, grid: Grid, theta: float,
                         mass: float = 1.0, charge: float = 1.0, hbar: float = 1.0) -> float:
    """Relative residual of p_ab = -i m/(q hbar) f_ab d_ab.

    Returns 0 for a == b, where both sides vanish.
    """
    _check(a, b, grid)
    if a.index == b.index and a.wavefunction is b.wavefunction:
        return 0.0
    p = momentum_element(a, b, grid, theta, hbar)
    f = (a.energy.value - b.energy.value) / hbar
    rhs = -1j * mass / (charge * hbar) * f * dipole_element(a, b, grid, theta, charge)
    return float(abs(p - rhs) / max(abs(p), 1e-300))


def build_table(spectrum: Spectrum, charge: float = 1.0, hbar: float = 1.0) -> TransitionTable:
    u = spectrum.vectors
    grid = spectrum.grid
    weighted = u * (grid.x * grid.dx)[:, None]
    d = charge * np.exp(1j * spectrum.theta) * (u.T @ weighted)
    d = 0.5 * (d + d.T)
    e = spectrum.energies
    f = (e[:, None] - e[None, :]) / hbar
    Z = d * d * f
    for arr in (d, f, Z):
        arr.setflags(write=False)
    return TransitionTable(d, f, Z, spectrum.theta)
