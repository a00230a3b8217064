"""
Oscillator Data Model
Physical parameters and coordinates consumed by every other module
"""

import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class OscillatorConfig:
    """Physical parameters of the harmonic oscillator"""
    mass: float = 1.0
    angular_frequency: float = 1.0
    amplitude: float = 1.0
    planck: float = 1.0  # reduced Planck constant

    def __post_init__(self):
        for name in ('mass', 'angular_frequency', 'amplitude', 'planck'):
            value = getattr(self, name)
            if not (isinstance(value, (int, float, np.floating)) and math.isfinite(value) and value > 0):
                raise InputError(f"{name} must be a finite positive number, got {value!r}")

    @classmethod
    def from_alpha(cls, alpha: float, planck: float = 1.0) -> 'OscillatorConfig':
        """Default units (m = omega = hbar = 1) with amplitude chosen to give the requested alpha"""
        return cls(mass=1.0, angular_frequency=1.0, amplitude=alpha * math.sqrt(planck), planck=planck)

    @property
    def alpha(self) -> float:
        return self.amplitude * math.sqrt(self.mass * self.angular_frequency / self.planck)

    @property
    def de_broglie_wavelength(self) -> float:
        """hbar/(m a omega); a over this length is alpha squared"""
        return self.planck / (self.mass * self.amplitude * self.angular_frequency)

    @property
    def quantum(self) -> float:
        """Energy quantum hbar*omega"""
        return self.planck * self.angular_frequency

    def to_dict(self) -> Dict[str, float]:
        """Convert to dictionary for serialization"""
        return {
            'mass': self.mass,
            'angular_frequency': self.angular_frequency,
            'amplitude': self.amplitude,
            'planck': self.planck,
            'alpha': self.alpha,
            'de_broglie_wavelength': self.de_broglie_wavelength,
        }


@dataclass(frozen=True)
class DimensionlessCoordinate:
    """Position x/a together with the time it is observed at"""
    xt: float
    t: float = 0.0

    def y(self, config: OscillatorConfig) -> float:
        """Offset from the classical trajectory; zero exactly on it"""
        return self.xt - math.cos(config.angular_frequency * self.t)


def alpha(config: OscillatorConfig) -> float:
    """a * sqrt(m*omega/hbar)"""
    return config.alpha


def dissipation_ratio(config: OscillatorConfig, length: float) -> float:
    """
    Size of the dissipative term relative to the dynamic term p^2/mL

    The viscous term scales as hbar*p/(m*L^2) while the dynamic one as
    p^2/(m*L); their ratio is lambda_db/L with lambda_db = hbar/p.
    """
    if length <= 0:
        raise InputError(f"length must be positive, got {length}")
    return config.de_broglie_wavelength / length
