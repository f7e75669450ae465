"""Spreading lengths of Hermite polynomials.

Exact entropic moments, moments and Fisher quantities live in
:mod:`hermspread.entropic` and :mod:`hermspread.hermite`; Shannon lengths
and their bounds in :mod:`hermspread.shannon`; the oscillator scaling in
:mod:`hermspread.oscillator`; regressions in :mod:`hermspread.analysis`.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .exactreal import ExactReal, KindMismatch, normalize, parse, sqrt_rational, to_float
from .hermite import (
    coefficients,
    fisher_information,
    fisher_length,
    moment,
    orthonormal_eval,
    standard_deviation,
)
from .entropic import (
    DomainError,
    EntropicMoment,
    d_functional,
    entropic_moment,
    onicescu_heller_length,
    renyi_length,
    z_functional,
)
from .quadrature import ConvergenceFailure, PrecisionNotMet, QuadratureConfig, hermite_zeros
from .shannon import ShannonResult, kl_upper_bound, optimal_bound, shannon_entropy, shannon_length
from .oscillator import OscillatorParams, ho_lengths, ho_moment
from .analysis import DegenerateInput, FitResult, heller_vs_std_fit, linear_fit, shannon_vs_std_fit

__all__ = [
    "ExactReal",
    "KindMismatch",
    "normalize",
    "parse",
    "sqrt_rational",
    "to_float",
    "coefficients",
    "fisher_information",
    "fisher_length",
    "moment",
    "orthonormal_eval",
    "standard_deviation",
    "DomainError",
    "EntropicMoment",
    "d_functional",
    "entropic_moment",
    "onicescu_heller_length",
    "renyi_length",
    "z_functional",
    "ConvergenceFailure",
    "PrecisionNotMet",
    "QuadratureConfig",
    "hermite_zeros",
    "ShannonResult",
    "kl_upper_bound",
    "optimal_bound",
    "shannon_entropy",
    "shannon_length",
    "OscillatorParams",
    "ho_lengths",
    "ho_moment",
    "DegenerateInput",
    "FitResult",
    "heller_vs_std_fit",
    "linear_fit",
    "shannon_vs_std_fit",
]
