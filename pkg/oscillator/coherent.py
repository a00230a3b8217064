"""
Coherent State of the Harmonic Oscillator
Closed-form wavefunction, density, trajectory and potential in the
dimensionless coordinate x/a. Wavefunctions are normalized over x/a.
"""

from typing import Callable, Tuple, Union

import numpy as np

from .config import DimensionlessCoordinate, OscillatorConfig

ArrayLike = Union[float, np.ndarray]
Potential = Callable[[np.ndarray], np.ndarray]


def _unpack(xt, t):
    if isinstance(xt, DimensionlessCoordinate):
        return xt.xt, xt.t
    return np.asarray(xt, dtype=float), np.asarray(t, dtype=float)


def _scalar(value):
    return value.item() if isinstance(value, np.ndarray) and value.ndim == 0 else value


def trajectory_offset(config: OscillatorConfig, xt: ArrayLike, t: ArrayLike = 0.0) -> ArrayLike:
    """y = x/a - cos(omega t)"""
    xt, t = _unpack(xt, t)
    return _scalar(xt - np.cos(config.angular_frequency * t))


def classical_trajectory(config: OscillatorConfig, t: ArrayLike) -> ArrayLike:
    """Dimensionless classical position cos(omega t); multiply by a for x"""
    return _scalar(np.cos(config.angular_frequency * np.asarray(t, dtype=float)))


def coherent_log(config: OscillatorConfig, xt: ArrayLike, t: ArrayLike = 0.0) -> ArrayLike:
    """ln(psi) of the coherent state"""
    xt, t = _unpack(xt, t)
    a2 = config.alpha ** 2
    wt = config.angular_frequency * t
    y = xt - np.cos(wt)
    phase = wt / 2.0 + a2 * xt * np.sin(wt) - 0.25 * a2 * np.sin(2.0 * wt)
    return _scalar(0.25 * np.log(a2 / np.pi) - 0.5 * a2 * y ** 2 - 1j * phase)


def coherent_state(config: OscillatorConfig, xt: ArrayLike, t: ArrayLike = 0.0) -> ArrayLike:
    """
    psi(x/a, t) = (alpha^2/pi)^(1/4) exp[-alpha^2 y^2/2
                  - i(omega t/2 + alpha^2 (x/a) sin(omega t) - alpha^2 sin(2 omega t)/4)]
    """
    return _scalar(np.exp(coherent_log(config, xt, t)))


def probability_density(config: OscillatorConfig, xt: ArrayLike, t: ArrayLike = 0.0) -> ArrayLike:
    """(alpha/sqrt(pi)) exp(-alpha^2 y^2), per unit x/a"""
    y = trajectory_offset(config, xt, t)
    alpha = config.alpha
    return _scalar(alpha / np.sqrt(np.pi) * np.exp(-(alpha * np.asarray(y)) ** 2))


def coherent_log_derivatives(config: OscillatorConfig,
                             xt: ArrayLike,
                             t: ArrayLike = 0.0) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
    """
    Analytic derivatives of ln(psi)

    Returns:
        (d/d(x/a), d/dt, d^2/d(x/a)^2)
    """
    xt, t = _unpack(xt, t)
    a2 = config.alpha ** 2
    w = config.angular_frequency
    s, c = np.sin(w * t), np.cos(w * t)
    y = xt - c
    d_x = -a2 * y - 1j * a2 * s
    d_t = -a2 * y * w * s - 1j * w * (0.5 + a2 * xt * c - 0.5 * a2 * np.cos(2.0 * w * t))
    d_xx = np.full_like(np.asarray(d_x), -a2, dtype=complex)
    return _scalar(d_x), _scalar(d_t), _scalar(d_xx)


def phase_gradient_at_peak(config: OscillatorConfig, t: ArrayLike) -> ArrayLike:
    """Im d(ln psi)/d(x/a) on the classical trajectory: -alpha^2 sin(omega t)"""
    d_x, _, _ = coherent_log_derivatives(config, classical_trajectory(config, t), t)
    return _scalar(np.imag(d_x))


def harmonic_potential(config: OscillatorConfig, xt: ArrayLike) -> ArrayLike:
    """U = m omega^2 a^2 (x/a)^2 / 2"""
    xt = np.asarray(xt, dtype=float)
    return _scalar(0.5 * config.mass * config.angular_frequency ** 2 * config.amplitude ** 2 * xt ** 2)


def ho_potential(config: OscillatorConfig) -> Potential:
    """Vectorized harmonic potential bound to one configuration"""
    return lambda xt: np.asarray(harmonic_potential(config, xt), dtype=float)


def zero_potential(xt: np.ndarray) -> np.ndarray:
    return np.zeros_like(np.asarray(xt, dtype=float))
