"""
Energy Gap Checks
The quantum average of the Hamilton-Jacobi energy defect, its value on the
classical trajectory, and the massless particle/wave duality residuals
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import integrate

from fields.base import SmoothField
from oscillator.coherent import Potential, coherent_log, coherent_log_derivatives, harmonic_potential
from oscillator.config import OscillatorConfig
from oscillator.errors import InputError
from oscillator.grid import Grid1D, central_first, central_second, central_time

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-6
DEFAULT_QUADRATURE_NODES = 4001


@dataclass(frozen=True)
class EnergyGapTerms:
    """The three terms of -(dS/dt + |grad S|^2/2m + U) on the classical path"""
    time_derivative: float          # -dS/dt
    kinetic: float                  # |grad S|^2 / 2m
    potential: float                # U
    total: float


@dataclass(frozen=True)
class MasslessDualResiduals:
    particle: float                 # |E^2 - |p|^2|
    wave: float                     # |omega^2 - |k|^2| |S_w|^2
    de_broglie: float               # |S_p - (hbar/i) ln S_w| modulo 2 pi hbar


def delta_epsilon_average(field: SmoothField,
                          potential: Potential,
                          config: OscillatorConfig,
                          t: float = 0.0,
                          grid: Optional[Grid1D] = None,
                          method: str = 'analytic') -> float:
    """
    Quantum average of the energy defect

    -integral[(hbar/i) psi* psi_t + (hbar^2/2m) |grad psi|^2 + U |psi|^2] d(x/a)

    Args:
        field: Field normalized over x/a
        potential: U(x/a) in energy units
        t: Time of evaluation
        grid: Quadrature grid, defaults to 4001 nodes around the classical path;
            needs a time step for method='finite_difference'
        method: 'analytic' (closed-form jet) or 'finite_difference' (centered stencils)

    Raises:
        InputError: if the field norm deviates from 1 by more than 1e-6
    """
    if grid is None:
        grid = Grid1D.around_trajectory(config, DEFAULT_QUADRATURE_NODES, dt=1e-4 / config.angular_frequency)
    hbar, m, a = config.planck, config.mass, config.amplitude

    if method == 'analytic':
        xt = grid.nodes
        jet = field.jet(xt, t)
        psi, psi_t, psi_x = jet.psi, jet.psi_t, jet.psi_x
    elif method == 'finite_difference':
        sampled = field.slices(grid, t).values
        xt = grid.nodes[1:-1]
        psi = sampled[1, 1:-1]
        psi_t = central_time(sampled, grid.dt)[0, 1:-1]
        psi_x = central_first(sampled[1], grid.spacing)
    else:
        raise InputError(f"unknown method {method!r}; use 'analytic' or 'finite_difference'")

    density = np.abs(psi) ** 2
    norm = integrate.trapezoid(density, xt)
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise InputError(f"field is not normalized over x/a (norm {norm:.9f})")

    integrand = (hbar / 1j * np.conj(psi) * psi_t
                 + hbar ** 2 / (2.0 * m) * np.abs(psi_x) ** 2 / a ** 2
                 + np.asarray(potential(xt), dtype=float) * density)
    value = -integrate.trapezoid(integrand, xt)
    if abs(value.imag) > NORM_TOLERANCE * config.quantum:
        logger.warning(f"energy defect has imaginary part {value.imag:.3e}")
    return float(value.real)


def on_trajectory_energy_gap(config: OscillatorConfig, t: float = 0.0) -> EnergyGapTerms:
    """
    Energy defect of the coherent-state action at x/a = cos(omega t)

    Each term comes from the closed-form derivatives of ln(psi); the total is
    hbar omega / 2 for every alpha and t.
    """
    xt = math.cos(config.angular_frequency * t)
    d_x, d_t, _ = coherent_log_derivatives(config, xt, t)
    hbar = config.planck
    s_t = -1j * hbar * d_t
    grad_s = -1j * hbar * d_x / config.amplitude
    time_derivative = -float(np.real(s_t))
    kinetic = float(abs(grad_s) ** 2 / (2.0 * config.mass))
    potential = float(harmonic_potential(config, xt))
    return EnergyGapTerms(time_derivative=time_derivative, kinetic=kinetic, potential=potential,
                          total=time_derivative - kinetic - potential)


def coherent_gradient_check(count: int = 1000, seed: int = 7, step: float = 1e-5) -> float:
    """
    Largest relative gap between closed-form and centered-difference d/d(x/a), d/dt of ln(psi)

    Samples alpha in [0.5, 5], x/a in [-2, 2] and omega t in [0, 2 pi].
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for alpha, xt, t in zip(rng.uniform(0.5, 5.0, count), rng.uniform(-2.0, 2.0, count),
                            rng.uniform(0.0, 2.0 * math.pi, count)):
        config = OscillatorConfig.from_alpha(alpha)
        d_x, d_t, _ = coherent_log_derivatives(config, xt, t)
        fd_x = (coherent_log(config, xt + step, t) - coherent_log(config, xt - step, t)) / (2.0 * step)
        fd_t = (coherent_log(config, xt, t + step) - coherent_log(config, xt, t - step)) / (2.0 * step)
        worst = max(worst,
                    abs(fd_x - d_x) / max(1.0, abs(d_x)),
                    abs(fd_t - d_t) / max(1.0, abs(d_t)))
    return worst


def massless_dual_residuals(omega: float,
                            k_vector: Sequence[float],
                            config: OscillatorConfig,
                            x: Optional[Sequence[float]] = None,
                            t: float = 0.0) -> MasslessDualResiduals:
    """
    Particle action S_p = -E t + p.x and wave S_w = exp[-i(omega t - k.x)] with c = 1

    The particle carries E = hbar omega and p = hbar k, so S_p equals
    (hbar/i) ln S_w up to the 2 pi hbar branch ambiguity.
    """
    k = np.atleast_1d(np.asarray(k_vector, dtype=float))
    x = np.zeros_like(k) if x is None else np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != k.shape:
        raise InputError("x and k_vector must have the same dimension")
    hbar = config.planck
    energy, momentum = hbar * omega, hbar * k

    s_p = -energy * t + float(momentum @ x)
    s_w = np.exp(-1j * (omega * t - float(k @ x)))
    particle = abs(energy ** 2 - float(momentum @ momentum))
    wave = abs(omega ** 2 - float(k @ k)) * abs(s_w) ** 2

    branch = s_p / hbar - np.angle(s_w)
    wrapped = (branch + math.pi) % (2.0 * math.pi) - math.pi
    de_broglie = hbar * abs(wrapped) + hbar * abs(math.log(abs(s_w)))
    return MasslessDualResiduals(particle=particle, wave=float(wave), de_broglie=float(de_broglie))
