"""
Base Smooth Field Interface
All analytic test fields inherit from this base class
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Sequence

import numpy as np

from oscillator.errors import InputError
from oscillator.grid import Grid1D, SampledComplexField


@dataclass
class FieldJet:
    """Field value and its derivatives at a set of points (x derivatives in x/a)"""
    psi: np.ndarray
    psi_t: np.ndarray
    psi_x: np.ndarray
    psi_xx: np.ndarray


class SmoothField(ABC):
    """Abstract base class for fields known in closed form"""

    def __init__(self, name: str, **kwargs):
        """
        Args:
            name: Field identifier
            **kwargs: Field-specific parameters
        """
        self.name = name
        self.params = kwargs

    @abstractmethod
    def value(self, xt: np.ndarray, t: float) -> np.ndarray:
        """
        Evaluate the field

        Args:
            xt: Dimensionless positions x/a
            t: Time

        Returns:
            Complex amplitudes
        """
        pass

    @abstractmethod
    def jet(self, xt: np.ndarray, t: float) -> FieldJet:
        """Field value with its analytic first time and first/second space derivatives"""
        pass

    def sample(self, grid: Grid1D, times: Sequence[float]) -> SampledComplexField:
        """Sample the field on a grid at the given times (one row per time)"""
        xt = grid.nodes
        times = np.asarray(times, dtype=float)
        values = np.stack([self.value(xt, t) for t in times])
        return SampledComplexField(grid=grid, values=values, times=times)

    def slices(self, grid: Grid1D, t: float) -> SampledComplexField:
        """Three slices t - dt, t, t + dt for centered time stencils"""
        if grid.dt is None:
            raise InputError("grid has no time step")
        return self.sample(grid, [t - grid.dt, t, t + grid.dt])

    def describe(self) -> Dict[str, Any]:
        return {'name': self.name, **self.params}
