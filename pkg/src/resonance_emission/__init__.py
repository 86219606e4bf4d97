"""Spontaneous emission from complex-scaled metastable resonance states in 1D."""
from .discretization import Grid, ScaledHamiltonian, assemble, build_grid
from .emission import (
    DecayBreakdown,
    ShiftBreakdown,
    arg_neg,
    hermitian_rate,
    partial_rate,
    partial_shift,
    total_rate,
    total_shift,
)
from .model import ComplexEnergy, PotentialSpec, UnitSystem, complex_frequency
from .spectral import EigenState, Spectrum, Tolerances, classify, diagonalize, parity_of, solve, theta_trajectory
from .transition import TransitionTable, build_table, dipole_element, momentum_consistency
from .validation import cross_discretization_check, hermitian_oracle, theta_scan, trk_sum

__version__ = "0.1.0"

__all__ = [
    "ComplexEnergy", "DecayBreakdown", "EigenState", "Grid", "PotentialSpec", "ScaledHamiltonian",
    "ShiftBreakdown", "Spectrum", "Tolerances", "TransitionTable", "UnitSystem", "arg_neg", "assemble",
    "build_grid", "build_table", "classify", "complex_frequency", "cross_discretization_check",
    "diagonalize", "dipole_element", "hermitian_oracle", "hermitian_rate", "momentum_consistency",
    "parity_of", "partial_rate", "partial_shift", "solve", "theta_scan", "theta_trajectory",
    "total_rate", "total_shift", "trk_sum",
]
