"""
Coherent and Ground State Fields
Closed-form solutions of the harmonic-oscillator Schrodinger equation
"""

import numpy as np

from oscillator.coherent import coherent_log, coherent_log_derivatives
from oscillator.config import OscillatorConfig
from .base import FieldJet, SmoothField


class CoherentField(SmoothField):
    """Coherent state following x/a = cos(omega t)"""

    def __init__(self, config: OscillatorConfig):
        super().__init__(name="Coherent", alpha=config.alpha)
        self.config = config

    def value(self, xt: np.ndarray, t: float) -> np.ndarray:
        return np.exp(coherent_log(self.config, np.asarray(xt, dtype=float), t))

    def jet(self, xt: np.ndarray, t: float) -> FieldJet:
        psi = self.value(xt, t)
        d_x, d_t, d_xx = coherent_log_derivatives(self.config, np.asarray(xt, dtype=float), t)
        return FieldJet(psi=psi, psi_t=psi * d_t, psi_x=psi * d_x, psi_xx=psi * (d_x ** 2 + d_xx))


class GroundStateField(SmoothField):
    """Undisplaced ground state exp(-i omega t/2) times the Gaussian of width 1/alpha in x/a"""

    def __init__(self, config: OscillatorConfig):
        super().__init__(name="Ground State", alpha=config.alpha)
        self.config = config

    def _log(self, xt: np.ndarray, t: float) -> np.ndarray:
        a2 = self.config.alpha ** 2
        w = self.config.angular_frequency
        return 0.25 * np.log(a2 / np.pi) - 0.5 * a2 * np.asarray(xt, dtype=float) ** 2 - 0.5j * w * t

    def value(self, xt: np.ndarray, t: float) -> np.ndarray:
        return np.exp(self._log(xt, t))

    def jet(self, xt: np.ndarray, t: float) -> FieldJet:
        a2 = self.config.alpha ** 2
        xt = np.asarray(xt, dtype=float)
        psi = self.value(xt, t)
        d_x = -a2 * xt
        return FieldJet(psi=psi,
                        psi_t=psi * (-0.5j * self.config.angular_frequency),
                        psi_x=psi * d_x,
                        psi_xx=psi * (d_x ** 2 - a2))


class PhaseShiftedField(SmoothField):
    """Another field multiplied by exp(-i Omega t)"""

    def __init__(self, base: SmoothField, shift: float):
        super().__init__(name=f"{base.name} (shifted)", shift=shift)
        self.base = base
        self.shift = shift

    def value(self, xt: np.ndarray, t: float) -> np.ndarray:
        return self.base.value(xt, t) * np.exp(-1j * self.shift * t)

    def jet(self, xt: np.ndarray, t: float) -> FieldJet:
        inner = self.base.jet(xt, t)
        phase = np.exp(-1j * self.shift * t)
        return FieldJet(psi=inner.psi * phase,
                        psi_t=(inner.psi_t - 1j * self.shift * inner.psi) * phase,
                        psi_x=inner.psi_x * phase,
                        psi_xx=inner.psi_xx * phase)
