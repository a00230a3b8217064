"""
Uniform grids, sampled complex fields and the centered stencils used on them
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import OscillatorConfig
from .errors import InputError


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid over the dimensionless coordinate x/a"""
    xt_min: float
    xt_max: float
    n_points: int
    dt: Optional[float] = None  # time step, 1/omega units

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise InputError(f"n_points must be an integer >= 3, got {self.n_points}")
        if not (np.isfinite(self.xt_min) and np.isfinite(self.xt_max)) or self.xt_max <= self.xt_min:
            raise InputError(f"grid bounds must satisfy xt_min < xt_max, got [{self.xt_min}, {self.xt_max}]")
        if self.dt is not None and not (np.isfinite(self.dt) and self.dt > 0):
            raise InputError(f"dt must be positive, got {self.dt}")

    @property
    def spacing(self) -> float:
        return (self.xt_max - self.xt_min) / (self.n_points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.xt_min, self.xt_max, self.n_points)

    def refined(self) -> 'Grid1D':
        """Same interval with spacing and time step halved"""
        return Grid1D(self.xt_min, self.xt_max, 2 * (self.n_points - 1) + 1,
                      None if self.dt is None else self.dt / 2)

    @classmethod
    def around_trajectory(cls,
                          config: OscillatorConfig,
                          n_points: int,
                          margin: float = 8.0,
                          dt: Optional[float] = None) -> 'Grid1D':
        """Grid covering the turning points +-1 plus margin/alpha on each side"""
        reach = 1.0 + margin / config.alpha
        return cls(-reach, reach, n_points, dt)

    @classmethod
    def with_spacing(cls, xt_min: float, xt_max: float, spacing: float,
                     dt: Optional[float] = None) -> 'Grid1D':
        """Grid whose spacing is as close to the requested one as the interval allows"""
        n_points = int(round((xt_max - xt_min) / spacing)) + 1
        return cls(xt_min, xt_max, max(n_points, 3), dt)


@dataclass
class SampledComplexField:
    """Complex amplitudes on a grid, one row per time slice"""
    grid: Grid1D
    values: np.ndarray
    times: Optional[np.ndarray] = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape[-1] != self.grid.n_points:
            raise InputError(
                f"field has {self.values.shape[-1]} nodes, grid has {self.grid.n_points}")
        if not np.all(np.isfinite(self.values)):
            raise InputError("field values must be finite")
        if self.times is not None:
            self.times = np.asarray(self.times, dtype=float)
            if self.values.ndim != 2 or len(self.times) != self.values.shape[0]:
                raise InputError("times must have one entry per time slice")

    @property
    def n_slices(self) -> int:
        return 1 if self.values.ndim == 1 else self.values.shape[0]

    @property
    def dt(self) -> Optional[float]:
        if self.times is not None and len(self.times) > 1:
            return float(self.times[1] - self.times[0])
        return self.grid.dt

    def slice(self, index: int) -> np.ndarray:
        return self.values if self.values.ndim == 1 else self.values[index]


def discrete_norm(values: np.ndarray, spacing: float) -> float:
    """sum |psi_j|^2 * h"""
    return float(np.sum(np.abs(values) ** 2) * spacing)


def central_first(values: np.ndarray, spacing: float) -> np.ndarray:
    """Centered first difference on interior nodes along the last axis"""
    return (values[..., 2:] - values[..., :-2]) / (2.0 * spacing)


def central_second(values: np.ndarray, spacing: float) -> np.ndarray:
    """Centered three-point second difference on interior nodes along the last axis"""
    return (values[..., 2:] - 2.0 * values[..., 1:-1] + values[..., :-2]) / spacing ** 2


def central_time(slices: np.ndarray, dt: float) -> np.ndarray:
    """Centered time difference on interior slices along the first axis"""
    return (slices[2:] - slices[:-2]) / (2.0 * dt)
