"""
Finite-difference verification of the log-transform link between the
dissipative Hamilton-Jacobi and Schrodinger equations, unitary evolution
and the energy-gap checks
"""

from .residuals import (
    ResidualReport,
    ViscosityEstimate,
    SampledAction,
    hj_action_from_wavefunction,
    schrodinger_residual,
    hj_residual,
    transform_identity_residual,
    cancellation_viscosity,
    viscosity_fit,
    nonlinear_term_residual,
    convergence_order,
    convergence_study,
)
from .evolution import Evolution, EvolutionResult, evolve, ehrenfest_residual
from .energy_gap import (
    EnergyGapTerms,
    MasslessDualResiduals,
    delta_epsilon_average,
    on_trajectory_energy_gap,
    massless_dual_residuals,
)
from .suite import Check, VerificationReport, run_verification

__all__ = [
    'ResidualReport',
    'ViscosityEstimate',
    'SampledAction',
    'hj_action_from_wavefunction',
    'schrodinger_residual',
    'hj_residual',
    'transform_identity_residual',
    'cancellation_viscosity',
    'viscosity_fit',
    'nonlinear_term_residual',
    'convergence_order',
    'convergence_study',
    'Evolution',
    'EvolutionResult',
    'evolve',
    'ehrenfest_residual',
    'EnergyGapTerms',
    'MasslessDualResiduals',
    'delta_epsilon_average',
    'on_trajectory_energy_gap',
    'massless_dual_residuals',
    'Check',
    'VerificationReport',
    'run_verification',
]
