"""Uniform grid and the complex-scaled sinc-DVR Hamiltonian."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AsymmetricDomainError, TooFewPointsError
from .model import PotentialSpec, check_theta

MIN_POINTS = 64


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n_points: int

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def describe(self) -> dict:
        return {"x_min": self.x_min, "x_max": self.x_max, "n_points": self.n_points}


def build_grid(x_min: float, x_max: float, n_points: int) -> Grid:
    x_min, x_max, n_points = float(x_min), float(x_max), int(n_points)
    if not (x_min < 0 < x_max) or x_min != -x_max:
        raise AsymmetricDomainError(f"grid must be symmetric about 0, got [{x_min}, {x_max}]")
    if n_points < MIN_POINTS:
        raise TooFewPointsError(f"need at least {MIN_POINTS} points, got {n_points}")
    return Grid(x_min, x_max, n_points)


def _offsets(n: int) -> np.ndarray:
    i = np.arange(n)
    return i[:, None] - i[None, :]


def second_derivative(grid: Grid) -> np.ndarray:
    """Sinc-DVR representation of -d^2/dx^2 (positive definite)."""
    k = _offsets(grid.n_points)
    safe = np.where(k == 0, 1, k)
    sign = 1.0 - 2.0 * (np.abs(k) % 2)
    t = 2.0 * sign / safe.astype(float) ** 2
    np.fill_diagonal(t, math.pi**2 / 3.0)
    return t / grid.dx**2


def first_derivative(grid: Grid) -> np.ndarray:
    """Sinc-DVR representation of d/dx (antisymmetric)."""
    k = _offsets(grid.n_points)
    safe = np.where(k == 0, 1, k)
    sign = 1.0 - 2.0 * (np.abs(k) % 2)
    d = sign / (safe.astype(float) * grid.dx)
    np.fill_diagonal(d, 0.0)
    return d


def kinetic_matrix(grid: Grid, hbar: float = 1.0, mass: float = 1.0) -> np.ndarray:
    """T[i,i] = pi^2/(6 dx^2), T[i,j] = (-1)^(i-j)/(dx^2 (i-j)^2), times hbar^2/m."""
    return (hbar**2 / (2.0 * mass)) * second_derivative(grid)


@dataclass(frozen=True, eq=False)
class ScaledHamiltonian:
    matrix: np.ndarray
    theta: float
    grid: Grid
    potential: PotentialSpec


def assemble(grid: Grid, potential: PotentialSpec, theta: float) -> ScaledHamiltonian:
    """Build T e^{-2i theta} + diag(V(x_i e^{i theta}))."""
    theta = check_theta(theta)
    v = potential.on_ray(grid.x, theta)
    t = kinetic_matrix(grid)
    if theta == 0.0:
        h = t + np.diag(v.real)
    else:
        h = t * np.exp(-2j * theta) + np.diag(v)
    h.setflags(write=False)
    return ScaledHamiltonian(h, theta, grid, potential)
