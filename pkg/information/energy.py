"""
Energy-Information Module
Energy density of the coherent state, its ratio to the spatial information
density, and the classical and far-field limits of that ratio
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd

from oscillator.coherent import (
    coherent_log_derivatives,
    harmonic_potential,
    probability_density,
    trajectory_offset,
)
from oscillator.config import DimensionlessCoordinate, OscillatorConfig
from oscillator.errors import InputError
from oscillator.grid import Grid1D
from .spatial import INFO_CONSTANT

logger = logging.getLogger(__name__)

# min over x/a and t of 2 (x/a) y + 1 = (x/a)^2 + y^2 + sin^2(omega t)
BRACKET_FLOOR = 0.5
FAR_FIELD_LIMIT = 2.0


@dataclass(frozen=True)
class EnergyInfoSample:
    """Energy density (per unit x/a) and dE/dI (units of hbar*omega) at one point"""
    coord: DimensionlessCoordinate
    energy_density: float
    ratio: float


@dataclass
class EnergySurface:
    """dE/dI sampled on an (x/a, t) lattice; values has one row per time"""
    xt: np.ndarray
    t: np.ndarray
    values: np.ndarray
    alpha: float

    def to_frame(self) -> pd.DataFrame:
        """Long format, time-major: columns xt, t, ratio"""
        tt, xx = np.meshgrid(self.t, self.xt, indexing='ij')
        return pd.DataFrame({'xt': xx.ravel(), 't': tt.ravel(), 'ratio': self.values.ravel()})


@dataclass(frozen=True)
class FarFieldLimit:
    """Extrapolated x/a -> infinity limit of dE/dI and the decay rate of the deviation"""
    limit: float
    rate: float              # log-log slope of |ratio - 2| against x/a
    xs: np.ndarray
    ratios: np.ndarray


def classical_energy(config: OscillatorConfig) -> float:
    """E_cl = m omega^2 a^2 / 2, equal to hbar omega alpha^2 / 2"""
    return 0.5 * config.mass * config.angular_frequency ** 2 * config.amplitude ** 2


def energy_bracket(config: OscillatorConfig, xt, t=0.0):
    """2 (x/a) y + 1"""
    y = np.asarray(trajectory_offset(config, xt, t))
    xt = xt.xt if isinstance(xt, DimensionlessCoordinate) else np.asarray(xt, dtype=float)
    value = 2.0 * xt * y + 1.0
    return float(value) if np.ndim(value) == 0 else value


def bracket_lower_bound(config: OscillatorConfig, t: float = 0.0) -> float:
    """
    Minimum over x/a of the energy bracket at time t

    The bracket equals (x/a)^2 + y^2 + sin^2(omega t), minimized at
    x/a = cos(omega t)/2, so the minimum is (1 + sin^2(omega t))/2.
    """
    return 0.5 * (1.0 + math.sin(config.angular_frequency * t) ** 2)


def energy_density(config: OscillatorConfig, xt, t=0.0):
    """(alpha/sqrt(pi)) E_cl exp(-alpha^2 y^2) [2 (x/a) y + 1], energy per unit x/a"""
    value = classical_energy(config) * np.asarray(probability_density(config, xt, t)) \
        * energy_bracket(config, xt, t)
    return float(value) if np.ndim(value) == 0 else value


def lagrangian_energy_density(config: OscillatorConfig, xt, t=0.0):
    """
    -[hbar^2/2m |grad psi|^2 + U |psi|^2] from the closed-form gradient

    Negative of energy_density; the gradient is taken in physical x, so the
    x/a derivative is divided by a.
    """
    density = np.asarray(probability_density(config, xt, t))
    d_x, _, _ = coherent_log_derivatives(config, xt, t)
    grad2 = density * np.abs(np.asarray(d_x)) ** 2 / config.amplitude ** 2
    coordinate = xt.xt if isinstance(xt, DimensionlessCoordinate) else xt
    value = -(config.planck ** 2 / (2.0 * config.mass) * grad2
              + np.asarray(harmonic_potential(config, coordinate)) * density)
    return float(value) if np.ndim(value) == 0 else value


def lagrangian_density(config: OscillatorConfig, xt, t=0.0):
    """(hbar/i) psi* psi_t + hbar^2/2m |grad psi|^2 + U |psi|^2"""
    density = np.asarray(probability_density(config, xt, t))
    d_x, d_t, _ = coherent_log_derivatives(config, xt, t)
    coordinate = xt.xt if isinstance(xt, DimensionlessCoordinate) else xt
    value = (config.planck / 1j * density * np.asarray(d_t)
             + config.planck ** 2 / (2.0 * config.mass) * density * np.abs(np.asarray(d_x)) ** 2
             / config.amplitude ** 2
             + np.asarray(harmonic_potential(config, coordinate)) * density)
    return complex(value) if np.ndim(value) == 0 else value


def energy_per_info(config: OscillatorConfig, xt, t=0.0):
    """
    dE/dI in units of hbar*omega

    [2 (x/a) y + 1] / [(1 + ln sqrt(pi))/alpha^2 + y^2]
    """
    y = np.asarray(trajectory_offset(config, xt, t))
    value = energy_bracket(config, xt, t) / (INFO_CONSTANT / config.alpha ** 2 + y ** 2)
    return float(value) if np.ndim(value) == 0 else value


def energy_info_sample(config: OscillatorConfig, coord: DimensionlessCoordinate) -> EnergyInfoSample:
    return EnergyInfoSample(coord=coord,
                            energy_density=energy_density(config, coord),
                            ratio=energy_per_info(config, coord))


def energy_info_surface(config: OscillatorConfig, grid: Grid1D, times: Sequence[float]) -> EnergySurface:
    """Tabulate energy_per_info over the grid nodes and the given times"""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise InputError("times must be a non-empty 1-D sequence")
    xt = grid.nodes
    values = np.stack([np.asarray(energy_per_info(config, xt, t)) for t in times])
    return EnergySurface(xt=xt, t=times, values=values, alpha=config.alpha)


def on_trajectory_energy_per_info(config: OscillatorConfig) -> float:
    """Ratio on the classical path y = 0: alpha^2 / (1 + ln sqrt(pi))"""
    return config.alpha ** 2 / INFO_CONSTANT


def classical_limit_energy(config: OscillatorConfig) -> float:
    """E_cl / [(1 + ln sqrt(pi))/2], the on-trajectory ratio in energy units"""
    return classical_energy(config) / (INFO_CONSTANT / 2.0)


def large_coordinate_limit(config: OscillatorConfig,
                           t: float = 0.0,
                           xs: Sequence[float] = (1e2, 2e2, 5e2, 1e3, 2e3, 5e3)) -> FarFieldLimit:
    """
    Estimate lim dE/dI as x/a grows

    The ratio behaves as L + C/(x/a); L comes from a linear fit in 1/(x/a)
    and the rate from the log-log slope of |ratio - 2|.
    """
    xs = np.asarray(xs, dtype=float)
    if len(xs) < 2 or np.any(xs <= 0):
        raise InputError("need at least two positive coordinates")
    ratios = np.asarray(energy_per_info(config, xs, t), dtype=float)
    _, limit = np.polyfit(1.0 / xs, ratios, 1)
    rate, _ = np.polyfit(np.log(xs), np.log(np.abs(ratios - FAR_FIELD_LIMIT)), 1)
    logger.debug(f"far-field ratio {ratios[-1]:.6f} at x/a={xs[-1]:g}, extrapolated {limit:.6f}")
    return FarFieldLimit(limit=float(limit), rate=float(rate), xs=xs, ratios=ratios)
