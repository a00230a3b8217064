"""
Plane Wave Field
"""

import numpy as np

from .base import FieldJet, SmoothField


class PlaneWaveField(SmoothField):
    """A exp(i(k x/a - w t))"""

    def __init__(self, wavenumber: float, frequency: float = 0.0, amplitude: complex = 1.0):
        """
        Args:
            wavenumber: Wavenumber per unit x/a
            frequency: Angular frequency
            amplitude: Constant complex amplitude
        """
        super().__init__(name="Plane Wave", wavenumber=wavenumber, frequency=frequency)
        self.wavenumber = wavenumber
        self.frequency = frequency
        self.amplitude = amplitude

    def value(self, xt: np.ndarray, t: float) -> np.ndarray:
        xt = np.asarray(xt, dtype=float)
        return self.amplitude * np.exp(1j * (self.wavenumber * xt - self.frequency * t))

    def jet(self, xt: np.ndarray, t: float) -> FieldJet:
        psi = self.value(xt, t)
        return FieldJet(psi=psi,
                        psi_t=-1j * self.frequency * psi,
                        psi_x=1j * self.wavenumber * psi,
                        psi_xx=-(self.wavenumber ** 2) * psi)
