"""Diagonalization, c-normalization and classification of the scaled spectrum."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .discretization import Grid, ScaledHamiltonian, assemble
from .errors import (
    DegenerateNormalizationError,
    EigensolverFailure,
    StateNotDiscreteError,
    TrajectoryAmbiguityError,
)
from .model import ComplexEnergy, PotentialSpec, check_theta

BOUND, RESONANCE, CONTINUUM = "bound", "resonance", "continuum"
EVEN, ODD, NO_PARITY = "even", "odd", "none"


@dataclass(frozen=True)
class Tolerances:
    tol_bound: float = 1e-7
    tol_ray: float = 0.02
    near_origin: float = 1e-6
    tol_parity: float = 1e-8
    tol_stat: float = 1e-6
    stat_dtheta: float = 0.05
    match_radius: float = 1e-5


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True, eq=False)
class EigenState:
    energy: ComplexEnergy
    wavefunction: np.ndarray
    kind: str
    parity: str
    index: int

    @property
    def is_discrete(self) -> bool:
        return self.kind != CONTINUUM


@dataclass(frozen=True, eq=False)
class Spectrum:
    """All eigenpairs of one scaled Hamiltonian, sorted by ascending Re(E).

    ``vectors[:, k]`` is the c-normalized wavefunction of ``states[k]``.
    """

    states: tuple
    theta: float
    grid: Grid
    potential: PotentialSpec
    energies: np.ndarray
    vectors: np.ndarray

    @property
    def kinds(self) -> list:
        return [s.kind for s in self.states]

    @property
    def n_bound(self) -> int:
        return sum(s.kind == BOUND for s in self.states)

    @property
    def n_resonance(self) -> int:
        return sum(s.kind == RESONANCE for s in self.states)

    @property
    def n_discrete(self) -> int:
        return self.n_bound + self.n_resonance

    @property
    def discrete_indices(self) -> list:
        return [s.index for s in self.states if s.is_discrete]

    def discrete(self, k: int) -> EigenState:
        """The k-th discrete (bound or resonance) state, counted from 0."""
        idx = self.discrete_indices
        if not 0 <= k < len(idx):
            raise StateNotDiscreteError(f"discrete ordinal {k} out of range: {len(idx)} discrete states")
        return self.states[idx[k]]

    def __len__(self):
        return len(self.states)


def classify(energies, theta: float, tol_bound: float = 1e-7, tol_ray: float = 0.02,
             threshold: float = 0.0, near_origin: float = 1e-6) -> list:
    """Label eigenvalues as bound, resonance or continuum from their position alone.

    A resonance must sit strictly between the positive real axis and the
    rotated continuum ray arg(E) = -2 theta, at least ``tol_ray`` away from
    the ray. Ambiguous eigenvalues fall back to continuum.
    """
    labels = []
    for e in np.asarray(energies, dtype=complex):
        if abs(e.imag) < tol_bound and e.real < threshold:
            labels.append(BOUND)
            continue
        if theta > 0 and e.real > threshold and e.imag < -tol_bound and abs(e) > near_origin:
            ang = math.atan2(e.imag, e.real)
            if -2.0 * theta + tol_ray < ang < 0.0:
                labels.append(RESONANCE)
                continue
        labels.append(CONTINUUM)
    return labels


def parity_of(state: EigenState, dx: float = 1.0, tol_parity: float = 1e-8) -> str:
    """Parity of a wavefunction sampled on a grid symmetric about 0.

    The tolerance is applied relative to sum |psi|^2 dx so that resonance
    wavefunctions with large moduli are judged on the same footing.
    """
    psi = state.wavefunction if isinstance(state, EigenState) else np.asarray(state)
    return _parity(psi, dx, tol_parity)


def _parity(psi: np.ndarray, dx: float, tol: float) -> str:
    mirror = psi[::-1]
    scale = np.sum(np.abs(psi) ** 2) * dx
    if scale == 0:
        return NO_PARITY
    if np.sum(np.abs(psi - mirror) ** 2) * dx < tol * scale:
        return EVEN
    if np.sum(np.abs(psi + mirror) ** 2) * dx < tol * scale:
        return ODD
    return NO_PARITY


def _eig(h: ScaledHamiltonian, vectors: bool = True):
    try:
        if h.theta == 0.0:
            if vectors:
                w, v = scipy.linalg.eigh(h.matrix)
                return w.astype(complex), v.astype(complex)
            return scipy.linalg.eigvalsh(h.matrix).astype(complex), None
        if vectors:
            return scipy.linalg.eig(h.matrix, check_finite=False)
        return scipy.linalg.eigvals(h.matrix, check_finite=False), None
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigensolverFailure(str(exc)) from exc


def _sort_order(w: np.ndarray) -> np.ndarray:
    return np.lexsort((w.imag, w.real))


def c_normalize(v: np.ndarray, dx: float) -> np.ndarray:
    """Scale columns so that sum v^2 dx = 1 (no conjugation) and fix the sign.

    The sign makes the largest-magnitude entry have positive real part.
    """
    v = np.array(v, dtype=complex, copy=True)
    s = np.sum(v * v, axis=0) * dx
    ref = np.sum(np.abs(v) ** 2, axis=0) * dx
    bad = np.abs(s) < 1e-12 * ref
    if np.any(bad):
        raise DegenerateNormalizationError(
            f"{int(bad.sum())} self-orthogonal eigenvector(s) under the c-product"
        )
    v /= np.sqrt(s)
    cols = np.arange(v.shape[1])
    peak = v[np.argmax(np.abs(v), axis=0), cols]
    v[:, peak.real < 0] *= -1.0
    return v


def bound_ceiling(grid: Grid, potential: PotentialSpec) -> float:
    """Energy below which real eigenvalues count as bound on this grid.

    This is the potential's continuum threshold, capped at half the lower
    wall value V(x_min), V(x_max). For a confining potential, states nearer
    the wall are box artifacts whose energies depend on the box size.
    """
    wall = float(np.min(np.real(potential(np.array([grid.x_min, grid.x_max])))))
    return min(potential.threshold, 0.5 * wall) if wall > 0 else potential.threshold


def _confirm_angle(theta: float, dtheta: float) -> float:
    up = theta + dtheta
    if up < math.pi / 4:
        return up
    return max(theta - dtheta, 0.0)


def diagonalize(h: ScaledHamiltonian, tolerances: Tolerances = DEFAULT_TOLERANCES,
                confirm: bool = True) -> Spectrum:
    """Full eigendecomposition of ``h`` with classified, c-normalized states.

    With ``confirm`` (the default) every resonance candidate is checked for
    stationarity against a second diagonalization at a shifted angle;
    candidates that move by more than ``tol_stat`` are relabelled continuum.
    This removes finite-box continuum states that sit off the rotated ray.
    """
    w, v = _eig(h)
    order = _sort_order(w)
    w, v = w[order], v[:, order]
    dx = h.grid.dx
    v = c_normalize(v, dx)
    v.setflags(write=False)
    w.setflags(write=False)

    tol = tolerances
    kinds = classify(w, h.theta, tol.tol_bound, tol.tol_ray, bound_ceiling(h.grid, h.potential),
                     tol.near_origin)
    candidates = [k for k, kind in enumerate(kinds) if kind == RESONANCE]
    if confirm and candidates:
        other = _eig(assemble(h.grid, h.potential, _confirm_angle(h.theta, tol.stat_dtheta)),
                     vectors=False)[0]
        for k in candidates:
            if np.min(np.abs(other - w[k])) > tol.tol_stat:
                kinds[k] = CONTINUUM

    states = tuple(
        EigenState(ComplexEnergy.from_complex(w[k]), v[:, k], kinds[k],
                   _parity(v[:, k], dx, tol.tol_parity), k)
        for k in range(len(w))
    )
    return Spectrum(states, h.theta, h.grid, h.potential, w, v)


def solve(grid: Grid, potential: PotentialSpec, theta: float,
          tolerances: Tolerances = DEFAULT_TOLERANCES, confirm: bool = True) -> Spectrum:
    return diagonalize(assemble(grid, potential, theta), tolerances, confirm)


@dataclass
class PoleTrajectory:
    energies: list
    drift: float
    kind: str
    confirmed: bool = field(default=False)


def theta_trajectory(grid: Grid, potential: PotentialSpec, theta_list: Sequence[float],
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> list:
    """Track candidate poles of the first angle through the remaining angles.

    Returns one ``PoleTrajectory`` per bound/resonance candidate at
    ``theta_list[0]``; ``drift`` is the largest step between consecutive
    angles and ``confirmed`` is ``drift < tol_stat``.
    """
    thetas = [check_theta(t) for t in theta_list]
    if len(thetas) < 3:
        raise ValueError("theta_trajectory needs at least 3 angles")
    if any(b <= a for a, b in zip(thetas, thetas[1:])):
        raise ValueError("theta_list must be strictly ascending")

    tol = tolerances
    first = _eig(assemble(grid, potential, thetas[0]), vectors=False)[0]
    first = first[_sort_order(first)]
    kinds = classify(first, thetas[0], tol.tol_bound, tol.tol_ray, bound_ceiling(grid, potential),
                     tol.near_origin)
    tracks = [PoleTrajectory([complex(first[k])], 0.0, kinds[k])
              for k in range(len(first)) if kinds[k] != CONTINUUM]

    for theta in thetas[1:]:
        w = _eig(assemble(grid, potential, theta), vectors=False)[0]
        for tr in tracks:
            prev = tr.energies[-1]
            dist = np.abs(w - prev)
            j = int(np.argmin(dist))
            if dist[j] < tol.match_radius:
                close = np.count_nonzero(dist < tol.match_radius)
                if close > 1:
                    raise TrajectoryAmbiguityError(
                        f"{close} eigenvalues within {tol.match_radius} of {prev:.10g} at theta={theta}"
                    )
            tr.energies.append(complex(w[j]))
            tr.drift = max(tr.drift, float(dist[j]))
    for tr in tracks:
        tr.confirmed = tr.drift < tol.tol_stat
    return tracks
