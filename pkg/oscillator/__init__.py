"""
qcinfo - Information Density of the Coherent Quantum Oscillator
"""

__version__ = "1.0.0"

from .config import OscillatorConfig, DimensionlessCoordinate, alpha, dissipation_ratio
from .coherent import (
    coherent_state,
    coherent_log,
    coherent_log_derivatives,
    probability_density,
    classical_trajectory,
    harmonic_potential,
    ho_potential,
    zero_potential,
    phase_gradient_at_peak,
    trajectory_offset,
)
from .grid import Grid1D, SampledComplexField, discrete_norm
from .errors import QCInfoError, InputError, DomainError, ConfigurationError, NumericalError, OutputError

__all__ = [
    'OscillatorConfig',
    'DimensionlessCoordinate',
    'alpha',
    'dissipation_ratio',
    'coherent_state',
    'coherent_log',
    'coherent_log_derivatives',
    'probability_density',
    'classical_trajectory',
    'harmonic_potential',
    'ho_potential',
    'zero_potential',
    'phase_gradient_at_peak',
    'trajectory_offset',
    'Grid1D',
    'SampledComplexField',
    'discrete_norm',
    'QCInfoError',
    'InputError',
    'DomainError',
    'ConfigurationError',
    'NumericalError',
    'OutputError',
]
