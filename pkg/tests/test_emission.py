import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from resonance_emission import (
    UnitSystem,
    arg_neg,
    hermitian_rate,
    partial_rate,
    partial_shift,
    total_rate,
    total_shift,
)
from resonance_emission.emission import emitter, rate_row
from resonance_emission.errors import StateNotBoundError, StateNotDiscreteError, ThetaTooSmallError, ZeroArgumentError
from resonance_emission.spectral import EVEN, ODD

C = UnitSystem().c_light

# frozen reference values, [-160, 160] / 801, theta = 0.15
GAMMA_3 = 0.004542436354314544
SHIFT_3 = 0.0033059036946375526
GAMMA_1 = 0.0018186382622933147

nonzero = st.complex_numbers(min_magnitude=1e-6, max_magnitude=1e6, allow_nan=False, allow_infinity=False)


def test_arg_neg_exact_values():
    assert arg_neg(1.0) == -math.pi
    assert arg_neg(-1.0) == 0.0
    assert arg_neg(complex(-1.0, -0.0)) == 0.0
    assert arg_neg(1j) == pytest.approx(-math.pi / 2)


def test_arg_neg_zero():
    with pytest.raises(ZeroArgumentError):
        arg_neg(0j)


@given(nonzero)
def test_arg_neg_principal_range(f):
    a = arg_neg(f)
    assert -2 * math.pi <= a <= 0
    assert np.exp(1j * a) == pytest.approx(-f / abs(f), abs=1e-9)


@given(nonzero, st.floats(0.01, 0.75))
def test_arg_neg_rotated_branch(f, theta):
    a = arg_neg(f, theta)
    assert -2 * theta - math.pi <= a < math.pi - 2 * theta
    assert np.exp(1j * a) == pytest.approx(-f / abs(f), abs=1e-9)


def test_rotated_branch_keeps_upward_transitions_at_zero():
    # real negative f with a round-off imaginary part on either side
    for im in (1e-15, -1e-15):
        assert arg_neg(complex(-1.05, im), 0.15) == pytest.approx(0.0, abs=1e-12)


@given(st.floats(1e-3, 10), st.floats(1e-3, 10))
def test_partial_rate_hermitian_limit(z, omega):
    # real Z and f: downward emits omega d^2 / 2c, upward emits nothing
    assert partial_rate(z, omega, C) == pytest.approx(z / (2 * C))
    assert partial_rate(-z, -omega, C) == 0.0


@given(st.floats(1e-3, 10), st.floats(1e-3, 10))
def test_partial_shift_hermitian_limit(z, omega):
    s = C * C
    assert partial_shift(z, omega, C) == pytest.approx(z * math.log(omega / s) / (4 * math.pi * C))


def test_partial_rate_cutoff_dependence():
    z, f = 0.3 - 0.02j, 0.8 - 0.01j
    a = partial_rate(z, f, C, cutoff_sq=C * C)
    b = partial_rate(z, f, C, cutoff_sq=10 * C * C)
    assert b - a == pytest.approx(z.imag * math.log(10) / (2 * math.pi * C))


def test_rate_row_skips_zero_frequency():
    row = rate_row(np.array([0.5, 0.0]), np.array([1.0, 0.0]), C, C * C)
    assert row[1] == 0.0
    assert row[0] == pytest.approx(0.5 / (2 * C))


def test_harmonic_rate_analytic(ho_000, ho_015):
    ref = 1 / (4 * C)
    assert hermitian_rate(1, ho_000.spectrum, ho_000.table) == pytest.approx(ref, rel=1e-9)
    for solved in (ho_000, ho_015):
        got = total_rate(1, solved.spectrum, solved.table).total
        assert got == pytest.approx(ref, rel=1e-6)


def test_hermitian_rate_needs_unscaled(ho_015, ho_000):
    with pytest.raises(ValueError):
        hermitian_rate(1, ho_015.spectrum, ho_015.table)
    with pytest.raises(StateNotBoundError):
        hermitian_rate(10_000, ho_000.spectrum, ho_000.table)


def test_reference_rates(well_015):
    s, t = well_015.spectrum, well_015.table
    assert total_rate(3, s, t).total == pytest.approx(GAMMA_3, rel=1e-8)
    assert total_shift(3, s, t).total == pytest.approx(SHIFT_3, rel=1e-8)
    assert total_rate(1, s, t).total == pytest.approx(GAMMA_1, rel=1e-8)


def test_bound_rate_matches_unscaled(well_000, well_015):
    a = total_rate(1, well_015.spectrum, well_015.table).total
    b = hermitian_rate(1, well_000.spectrum, well_000.table)
    assert a == pytest.approx(b, rel=1e-8)


def test_ground_state_does_not_decay(well_015):
    r = total_rate(0, well_015.spectrum, well_015.table)
    scale = sum(abs(p[-1]) for p in r.partials)
    assert abs(r.total) < 1e-9 * scale


def test_breakdown_bookkeeping(well_015):
    s, t = well_015.spectrum, well_015.table
    r = total_rate(3, s, t)
    assert r.total == pytest.approx(r.discrete_sum + r.continuum_sum, rel=1e-12)
    assert r.cumulative[-1] == pytest.approx(r.discrete_sum, rel=1e-12)
    assert len(r.cumulative) == s.n_discrete - 1
    assert r.cumulative_fraction[-1] == pytest.approx(r.discrete_sum / r.total)
    assert r.initial_index == s.discrete(3).index
    assert len(r.partials) == len(s) - 1


def test_shift_defaults_to_compton_cutoff(well_015):
    sh = total_shift(3, well_015.spectrum, well_015.table)
    assert sh.cutoff_sq == pytest.approx(C * C)


def test_parity_selection(well_015):
    s, t = well_015.spectrum, well_015.table
    r = total_rate(3, s, t)
    me = s.discrete(3).parity
    assert me == ODD
    same = [p for j, _, p in r.partials if s.states[j].parity == me]
    assert same and max(abs(p) for p in same) < 1e-12


def test_emitter_checks(well_015):
    s = well_015.spectrum
    with pytest.raises(StateNotDiscreteError):
        emitter(s, 99)
    # pretend the same spectrum came from a smaller angle than state 4 needs
    assert s.discrete(4).parity == EVEN
    small = dataclasses.replace(s, theta=0.05)
    with pytest.raises(ThetaTooSmallError):
        emitter(small, 4)
    assert emitter(small, 1) is s.discrete(1)
