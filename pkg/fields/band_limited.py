"""
Band-Limited Random Fields
Smooth nonvanishing complex fields used to exercise PDE identities away
from actual solutions
"""

from typing import List, Optional, Sequence

import numpy as np

from oscillator.errors import InputError
from .base import FieldJet, SmoothField


class BandLimitedField(SmoothField):
    """
    psi = offset + sum_j A_j exp(i(k_j x/a - w_j t))

    The offset is at least twice the summed mode amplitudes, so |psi| never
    drops below the amplitude sum and ln(psi) stays on one branch.
    """

    MAX_MODES = 8

    def __init__(self,
                 amplitudes: Sequence[complex],
                 wavenumbers: Sequence[float],
                 frequencies: Sequence[float],
                 offset: Optional[float] = None):
        """
        Args:
            amplitudes: Complex mode amplitudes
            wavenumbers: Wavenumbers per unit x/a
            frequencies: Angular frequencies (not tied to any dispersion relation)
            offset: Constant term, defaults to 2 * sum |A_j|
        """
        amplitudes = np.asarray(amplitudes, dtype=complex)
        wavenumbers = np.asarray(wavenumbers, dtype=float)
        frequencies = np.asarray(frequencies, dtype=float)
        if not (len(amplitudes) == len(wavenumbers) == len(frequencies)):
            raise InputError("amplitudes, wavenumbers and frequencies must have equal length")
        if not 1 <= len(amplitudes) <= self.MAX_MODES:
            raise InputError(f"between 1 and {self.MAX_MODES} modes are supported")
        floor = 2.0 * float(np.sum(np.abs(amplitudes)))
        offset = floor if offset is None else float(offset)
        if offset < floor:
            raise InputError(f"offset {offset} is below 2 * sum|A| = {floor}")

        super().__init__(name="Band Limited", n_modes=len(amplitudes), offset=offset)
        self.amplitudes = amplitudes
        self.wavenumbers = wavenumbers
        self.frequencies = frequencies
        self.offset = offset

    @classmethod
    def random(cls,
               rng: np.random.Generator,
               n_modes: int = 8,
               max_wavenumber: int = 8,
               max_frequency: float = 3.0) -> 'BandLimitedField':
        """Random field with unit offset and mode amplitudes summing to 0.45"""
        magnitudes = rng.uniform(0.2, 1.0, n_modes)
        magnitudes *= 0.45 / magnitudes.sum()
        phases = rng.uniform(0.0, 2.0 * np.pi, n_modes)
        wavenumbers = rng.integers(1, max_wavenumber + 1, n_modes) * rng.choice([-1.0, 1.0], n_modes)
        frequencies = rng.uniform(-max_frequency, max_frequency, n_modes)
        return cls(magnitudes * np.exp(1j * phases), wavenumbers, frequencies, offset=1.0)

    @classmethod
    def random_set(cls, count: int, seed: int = 42, **kwargs) -> List['BandLimitedField']:
        rng = np.random.default_rng(seed)
        return [cls.random(rng, **kwargs) for _ in range(count)]

    def _modes(self, xt: np.ndarray, t: float) -> np.ndarray:
        xt = np.asarray(xt, dtype=float)
        arg = np.multiply.outer(xt, self.wavenumbers) - self.frequencies * t
        return self.amplitudes * np.exp(1j * arg)

    def value(self, xt: np.ndarray, t: float) -> np.ndarray:
        return self.offset + self._modes(xt, t).sum(axis=-1)

    def jet(self, xt: np.ndarray, t: float) -> FieldJet:
        modes = self._modes(xt, t)
        return FieldJet(psi=self.offset + modes.sum(axis=-1),
                        psi_t=(-1j * self.frequencies * modes).sum(axis=-1),
                        psi_x=(1j * self.wavenumbers * modes).sum(axis=-1),
                        psi_xx=(-(self.wavenumbers ** 2) * modes).sum(axis=-1))
