"""Spontaneous-emission rates and radiative shifts from discrete states.

For an emitter n and every other state n' of the finite basis, with
Z = d^2 f and f = (E_n - E_n')/hbar,

    rate  contribution = -(1/2 pi c) [Im Z log(|f|/s) + Re Z argneg(f)]
    shift contribution =  (1/4 pi c) [Re Z log(|f|/s) - Im Z argneg(f)]

where s is the squared Compton cutoff (c^2 in atomic units) and
argneg(f) = arg(f) - pi. Continuum-labelled states play the role of the
quadrature nodes of the integral along the rotated continuum.

At theta > 0 the argument is taken with its branch cut along the photon ray
arg = -2 theta, i.e. arg(f) in [-2 theta, 2 pi - 2 theta). This is the branch
on which Log(f - zeta) stays continuous while zeta runs out along the ray, and
it agrees with the principal value for every f above the ray. It also keeps
upward bound-to-bound transitions (f real and negative, with round-off in
Im f) on a single side of the cut.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import StateNotBoundError, StateNotDiscreteError, ThetaTooSmallError, ZeroArgumentError
from .model import UnitSystem
from .spectral import BOUND, CONTINUUM, EigenState, Spectrum
from .transition import TransitionTable


def arg_neg(f: complex, theta: Optional[float] = None) -> float:
    """arg(-f) on the branch arg(-f) = arg(f) - pi.

    Without ``theta`` arg is the principal value in (-pi, pi] and the result
    lies in (-2 pi, 0]. With ``theta`` the cut of arg(f) is moved onto the
    ray at angle -2 theta.
    """
    f = complex(f)
    if f == 0:
        raise ZeroArgumentError("arg(-f) undefined for f = 0")
    a = math.atan2(f.imag + 0.0, f.real)
    if theta is not None and a < -2.0 * theta:
        a += 2.0 * math.pi
    return a - math.pi


def _arg_neg_array(f: np.ndarray, theta: Optional[float] = None) -> np.ndarray:
    im = np.where(f.imag == 0, 0.0, f.imag)
    a = np.arctan2(im, f.real)
    if theta is not None:
        a = np.where(a < -2.0 * theta, a + 2.0 * np.pi, a)
    return a - np.pi


def _cutoff(units: UnitSystem, cutoff_sq: Optional[float]) -> float:
    return units.compton_cutoff_sq if cutoff_sq is None else float(cutoff_sq)


def partial_rate(Z: complex, f: complex, c: float, cutoff_sq: Optional[float] = None,
                 theta: Optional[float] = None) -> float:
    """Rate contribution of one channel; ``cutoff_sq`` defaults to c^2."""
    Z, f = complex(Z), complex(f)
    s = c * c if cutoff_sq is None else cutoff_sq
    return -(Z.imag * math.log(abs(f) / s) + Z.real * arg_neg(f, theta)) / (2.0 * math.pi * c)


def partial_shift(Z: complex, f: complex, c: float, cutoff_sq: Optional[float] = None,
                  theta: Optional[float] = None) -> float:
    Z, f = complex(Z), complex(f)
    s = c * c if cutoff_sq is None else cutoff_sq
    return (Z.real * math.log(abs(f) / s) - Z.imag * arg_neg(f, theta)) / (4.0 * math.pi * c)


def _branch(theta: float) -> Optional[float]:
    return theta if theta > 0 else None


def rate_row(Z: np.ndarray, f: np.ndarray, c: float, cutoff_sq: float,
             theta: Optional[float] = None) -> np.ndarray:
    """Vectorized partial rates; entries with f == 0 are set to 0."""
    out = np.zeros(len(f))
    ok = f != 0
    out[ok] = -(Z[ok].imag * np.log(np.abs(f[ok]) / cutoff_sq)
                + Z[ok].real * _arg_neg_array(f[ok], theta)) / (2.0 * math.pi * c)
    return out


def shift_row(Z: np.ndarray, f: np.ndarray, c: float, cutoff_sq: float,
              theta: Optional[float] = None) -> np.ndarray:
    out = np.zeros(len(f))
    ok = f != 0
    out[ok] = (Z[ok].real * np.log(np.abs(f[ok]) / cutoff_sq)
               - Z[ok].imag * _arg_neg_array(f[ok], theta)) / (4.0 * math.pi * c)
    return out


@dataclass
class DecayBreakdown:
    """Partial and total decay rates of one emitter.

    ``partials`` holds (final index, kind, rate) for every other state.
    ``cumulative[k]`` is the running sum over the first k + 1 discrete
    final states in ascending Re(E), the emitter itself excluded.
    """

    initial_index: int
    initial_ordinal: int
    partials: list
    discrete_sum: float
    continuum_sum: float
    total: float
    cumulative: list
    cutoff_sq: float

    @property
    def cumulative_fraction(self) -> list:
        return [s / self.total for s in self.cumulative]


@dataclass
class ShiftBreakdown:
    initial_index: int
    initial_ordinal: int
    partials: list
    total: float
    cutoff_sq: float


def emitter(spectrum: Spectrum, n: int) -> EigenState:
    """The n-th discrete state, after checking it may emit at this angle."""
    disc = spectrum.discrete_indices
    if not 0 <= n < len(disc):
        raise StateNotDiscreteError(
            f"discrete state {n} requested but only {len(disc)} discrete states at theta={spectrum.theta}"
        )
    state = spectrum.states[disc[n]]
    e = state.energy
    if state.kind != BOUND:
        # exposure condition theta > arctan(Gamma / (2 hbar omega)) / 2
        limit = 0.5 * math.atan2(e.gamma, 2.0 * e.omega)
        if not spectrum.theta > limit:
            raise ThetaTooSmallError(f"theta={spectrum.theta} does not exceed {limit}")
    return state


def total_rate(n: int, spectrum: Spectrum, table: TransitionTable,
               units: UnitSystem = UnitSystem(), cutoff_sq: Optional[float] = None) -> DecayBreakdown:
    """Total decay rate of discrete state ``n`` (ordinal among bound + resonance states)."""
    state = emitter(spectrum, n)
    i = state.index
    s = _cutoff(units, cutoff_sq)
    row = rate_row(table.Z[i], table.f[i], units.c_light, s, _branch(spectrum.theta))
    row[i] = 0.0
    kinds = spectrum.kinds
    cont = np.array([k == CONTINUUM for k in kinds])
    partials = [(j, kinds[j], float(row[j])) for j in range(len(row)) if j != i]
    cumulative = np.cumsum([row[j] for j in spectrum.discrete_indices if j != i])
    return DecayBreakdown(
        initial_index=i,
        initial_ordinal=n,
        partials=partials,
        discrete_sum=float(row[~cont].sum()),
        continuum_sum=float(row[cont].sum()),
        total=float(row.sum()),
        cumulative=[float(v) for v in cumulative],
        cutoff_sq=s,
    )


def total_shift(n: int, spectrum: Spectrum, table: TransitionTable,
                units: UnitSystem = UnitSystem(), cutoff_sq: Optional[float] = None) -> ShiftBreakdown:
    state = emitter(spectrum, n)
    i = state.index
    s = _cutoff(units, cutoff_sq)
    row = shift_row(table.Z[i], table.f[i], units.c_light, s, _branch(spectrum.theta))
    row[i] = 0.0
    partials = [(j, float(row[j])) for j in range(len(row)) if j != i]
    return ShiftBreakdown(i, n, partials, float(row.sum()), s)


def hermitian_rate(n: int, spectrum: Spectrum, table: TransitionTable,
                   units: UnitSystem = UnitSystem()) -> float:
    """Golden-rule rate sum_{n' < n} omega |d|^2 / 2c for bound state n at theta = 0."""
    if spectrum.theta != 0.0:
        raise ValueError("hermitian_rate needs a theta = 0 spectrum")
    bound = [s.index for s in spectrum.states if s.kind == BOUND]
    if not 0 <= n < len(bound):
        raise StateNotBoundError(f"bound state {n} requested, {len(bound)} available")
    i = bound[n]
    lower = bound[:n]
    omega = table.f[i, lower].real
    d2 = np.abs(table.d[i, lower]) ** 2
    return float(np.sum(omega * d2) / (2.0 * units.c_light))
