"""
Shannon information of the coherent state in the spatial, number-state and
energy representations
"""

from .spatial import (
    Partition1D,
    InfoDensityCurve,
    InformationIntegral,
    partition_probability,
    cell_probabilities,
    discrete_entropy,
    info_density,
    regularized_info_density,
    regularized_cell_sum,
    total_information,
    total_information_report,
    differential_entropy,
    density_curve,
    half_maximum_width,
    peak_density,
    to_bits,
    TOTAL_INFORMATION,
)
from .number import (
    NumberStateInfo,
    poisson_pmf,
    mean_occupation,
    number_information,
    number_info_density,
    number_info_curve,
)
from .energy import (
    EnergyInfoSample,
    EnergySurface,
    classical_energy,
    energy_density,
    energy_per_info,
    energy_info_sample,
    energy_info_surface,
    on_trajectory_energy_per_info,
    large_coordinate_limit,
)

__all__ = [
    'Partition1D',
    'InfoDensityCurve',
    'InformationIntegral',
    'partition_probability',
    'cell_probabilities',
    'discrete_entropy',
    'info_density',
    'regularized_info_density',
    'regularized_cell_sum',
    'total_information',
    'total_information_report',
    'differential_entropy',
    'density_curve',
    'half_maximum_width',
    'peak_density',
    'to_bits',
    'TOTAL_INFORMATION',
    'NumberStateInfo',
    'poisson_pmf',
    'mean_occupation',
    'number_information',
    'number_info_density',
    'number_info_curve',
    'EnergyInfoSample',
    'EnergySurface',
    'classical_energy',
    'energy_density',
    'energy_per_info',
    'energy_info_sample',
    'energy_info_surface',
    'on_trajectory_energy_per_info',
    'large_coordinate_limit',
]
