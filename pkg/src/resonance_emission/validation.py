"""Independent cross-checks of the emission pipeline."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .discretization import Grid, kinetic_matrix
from .emission import total_rate, total_shift
from .errors import PoleCountMismatchError, StateNotBoundError, ThetaTooSmallError
from .model import PotentialSpec, UnitSystem
from .spectral import BOUND, DEFAULT_TOLERANCES, RESONANCE, Spectrum, Tolerances, bound_ceiling, solve
from .transition import TransitionTable, build_table

TRK_REFERENCE = -0.5


def trk_sum(n: int, spectrum: Spectrum, table: TransitionTable) -> complex:
    """sum_{n'} f_{nn'} d_{nn'}^2 over every state of the basis; n is a global index.

    Equals -m/2 = -1/2 a.u. when the basis is complete.
    """
    return complex(np.sum(table.f[n] * table.d[n] ** 2))


@dataclass
class SumRuleReport:
    per_initial: list
    reference: float
    max_abs_error: float


def sum_rule_report(spectrum: Spectrum, table: TransitionTable,
                    indices: Optional[Sequence[int]] = None) -> SumRuleReport:
    """Sum rule for the given global indices (all discrete states by default)."""
    if indices is None:
        indices = spectrum.discrete_indices
    vals = [(int(n), trk_sum(n, spectrum, table)) for n in indices]
    err = max((abs(c - TRK_REFERENCE) for _, c in vals), default=0.0)
    return SumRuleReport(vals, TRK_REFERENCE, float(err))


def _rel_spread(values: Sequence[float]) -> float:
    worst = 0.0
    for a, b in itertools.combinations(values, 2):
        scale = min(abs(a), abs(b))
        worst = max(worst, abs(a - b) / scale if scale > 0 else (0.0 if a == b else math.inf))
    return worst


def _locate(spectrum: Spectrum, energy: complex) -> int:
    """Discrete ordinal of the state closest to ``energy``."""
    disc = spectrum.discrete_indices
    dist = [abs(spectrum.energies[j] - energy) for j in disc]
    return int(np.argmin(dist))


def theta_scan(observable: str, n: int, theta_list: Sequence[float], grid: Grid,
               potential: PotentialSpec, units: UnitSystem = UnitSystem(),
               cutoff_sq: Optional[float] = None,
               tolerances: Tolerances = DEFAULT_TOLERANCES):
    """Recompute the observable at every angle; return (max relative deviation, values).

    The emitter is the n-th discrete state at the largest angle, followed to
    the other angles by energy.
    """
    if observable not in ("total_rate", "total_shift"):
        raise ValueError(f"unknown observable {observable!r}")
    thetas = sorted(float(t) for t in theta_list)
    spectra = {thetas[-1]: solve(grid, potential, thetas[-1], tolerances)}
    ref = spectra[thetas[-1]].discrete(n)
    e = ref.energy
    if ref.kind != BOUND:
        limit = 0.5 * math.atan2(e.gamma, 2.0 * e.omega)
        low = [t for t in thetas if not t > limit]
        if low:
            raise ThetaTooSmallError(f"theta={low[0]} does not expose state {n} (needs > {limit})")
    values = []
    for theta in thetas:
        spec = spectra.get(theta) or solve(grid, potential, theta, tolerances)
        table = build_table(spec)
        k = _locate(spec, e.value)
        if observable == "total_rate":
            values.append(total_rate(k, spec, table, units, cutoff_sq).total)
        else:
            values.append(total_shift(k, spec, table, units, cutoff_sq).total)
    return _rel_spread(values), values


def hermitian_oracle(potential: PotentialSpec, grid: Grid, n: int,
                     units: UnitSystem = UnitSystem(), cutoff_sq: Optional[float] = None):
    """Golden-rule rate and Bethe-regularized shift of bound state n, unscaled.

    Uses a real symmetric eigensolver and ordinary L2 normalization; shares
    only the kinetic matrix with the complex-scaled path.
    """
    x = grid.x
    h = kinetic_matrix(grid) + np.diag(np.real(potential(x)))
    w, v = np.linalg.eigh(h)
    v = v / np.sqrt(np.sum(v * v, axis=0) * grid.dx)
    bound = np.flatnonzero(w < bound_ceiling(grid, potential))
    if not 0 <= n < len(bound):
        raise StateNotBoundError(f"bound state {n} requested, {len(bound)} available")
    i = bound[n]
    d = units.charge * (v[:, i] * x * grid.dx) @ v
    omega = (w[i] - w) / units.hbar
    c = units.c_light
    s = units.compton_cutoff_sq if cutoff_sq is None else cutoff_sq
    lower = bound[:n]
    rate = float(np.sum(omega[lower] * d[lower] ** 2) / (2.0 * c))
    others = np.arange(len(w)) != i
    shift = float(np.sum(d[others] ** 2 * omega[others] * np.log(np.abs(omega[others]) / s))
                  / (4.0 * math.pi * c))
    return rate, shift


@dataclass
class PoleDelta:
    kind: str
    energy_a: complex
    energy_b: complex

    @property
    def delta(self) -> float:
        return abs(self.energy_a - self.energy_b)


def cross_discretization_check(potential: PotentialSpec, theta: float, grids: Sequence[Grid],
                               tolerances: Tolerances = DEFAULT_TOLERANCES) -> list:
    """Pair the bound and resonance energies found on two grids.

    Bound states are compared below the lower of the two grids' bound
    ceilings, so confining potentials in boxes of different size agree.
    """
    ga, gb = grids
    sa = solve(ga, potential, theta, tolerances)
    sb = solve(gb, potential, theta, tolerances)
    ceiling = min(bound_ceiling(ga, potential), bound_ceiling(gb, potential))

    def poles(spec, kind):
        return [complex(spec.energies[s.index]) for s in spec.states
                if s.kind == kind and (kind != BOUND or s.energy.re < ceiling)]

    pa = {k: poles(sa, k) for k in (BOUND, RESONANCE)}
    pb = {k: poles(sb, k) for k in (BOUND, RESONANCE)}
    if any(len(pa[k]) != len(pb[k]) for k in pa):
        raise PoleCountMismatchError(
            f"grid A finds {len(pa[BOUND])} bound + {len(pa[RESONANCE])} resonance, "
            f"grid B finds {len(pb[BOUND])} bound + {len(pb[RESONANCE])} resonance"
        )
    return [PoleDelta(k, a, b) for k in (BOUND, RESONANCE) for a, b in zip(pa[k], pb[k])]
