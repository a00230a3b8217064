"""
Spatial Information Module
Shannon information of the coherent-state position distribution: partition
probabilities, the regularized continuum density, its total, and the
standard differential entropy as an independent comparator
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import integrate, optimize, special

from oscillator.coherent import trajectory_offset
from oscillator.config import OscillatorConfig
from oscillator.errors import InputError, NumericalError
from oscillator.grid import Grid1D

logger = logging.getLogger(__name__)

# 1 + ln(sqrt(pi)), the constant inside the density bracket
INFO_CONSTANT = 1.0 + 0.5 * math.log(math.pi)
# integral of the density over the whole line, independent of alpha and t
TOTAL_INFORMATION = INFO_CONSTANT / 2.0 + 0.25

QUADRATURE_TOLERANCE = 1e-10
MASS_COVERAGE = 1e-12


@dataclass(frozen=True)
class Partition1D:
    """Ordered breakpoints x0 < x1 < ... < xN in x/a (infinite ends allowed)"""
    breakpoints: Tuple[float, ...]

    def __post_init__(self):
        edges = np.asarray(self.breakpoints, dtype=float)
        if edges.ndim != 1 or len(edges) < 2:
            raise InputError("a partition needs at least two breakpoints")
        if np.any(np.isnan(edges)) or np.any(np.diff(edges) <= 0):
            raise InputError("breakpoints must be strictly increasing")
        object.__setattr__(self, 'breakpoints', tuple(float(e) for e in edges))

    @property
    def edges(self) -> np.ndarray:
        return np.asarray(self.breakpoints)

    @property
    def n_cells(self) -> int:
        return len(self.breakpoints) - 1

    @classmethod
    def uniform(cls, lo: float, hi: float, cells: int) -> 'Partition1D':
        if cells < 1:
            raise InputError(f"cells must be >= 1, got {cells}")
        return cls(tuple(np.linspace(lo, hi, cells + 1)))

    @classmethod
    def uniform_in_offset(cls, config: OscillatorConfig, t: float,
                          half_width: float, cells: int) -> 'Partition1D':
        """Uniform cells of y = x/a - cos(omega t) over [-half_width, half_width]"""
        centre = math.cos(config.angular_frequency * t)
        return cls.uniform(centre - half_width, centre + half_width, cells)


@dataclass
class InfoDensityCurve:
    """Sampled information density (nats per unit x/a) against y"""
    y: np.ndarray
    density: np.ndarray
    alpha: float

    def peak(self) -> Tuple[float, float]:
        """(y, density) of the largest sample"""
        i = int(np.argmax(self.density))
        return float(self.y[i]), float(self.density[i])

    def fwhm(self) -> float:
        """Full width at half maximum, from linear interpolation of the half-level crossings"""
        i_peak = int(np.argmax(self.density))
        half = self.density[i_peak] / 2.0
        above = np.nonzero(self.density >= half)[0]
        lo, hi = above[0], above[-1]
        if lo == 0 or hi == len(self.y) - 1:
            raise InputError("curve does not reach half maximum inside the sampled range")
        y_lo = np.interp(half, [self.density[lo - 1], self.density[lo]], [self.y[lo - 1], self.y[lo]])
        y_hi = np.interp(half, [self.density[hi + 1], self.density[hi]], [self.y[hi + 1], self.y[hi]])
        return float(y_hi - y_lo)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'y': self.y, 'density': self.density})


@dataclass(frozen=True)
class InformationIntegral:
    """Quadrature of the density with its error estimate and analytic tail"""
    value: float
    abserr: float
    tail: float
    half_width: float


def _scaled_offset(config: OscillatorConfig, xt, t) -> np.ndarray:
    return config.alpha * np.asarray(trajectory_offset(config, xt, t), dtype=float)


def _cell_masses(config: OscillatorConfig, t: float, edges: np.ndarray) -> np.ndarray:
    """Probabilities of consecutive cells, computed in whichever erf/erfc form keeps precision"""
    u = _scaled_offset(config, edges, t)
    lo, hi = u[:-1], u[1:]
    right = lo >= 0
    left = hi <= 0
    middle = ~(right | left)
    masses = np.empty_like(lo)
    masses[right] = 0.5 * (special.erfc(lo[right]) - special.erfc(hi[right]))
    masses[left] = 0.5 * (special.erfc(-hi[left]) - special.erfc(-lo[left]))
    masses[middle] = 0.5 * (special.erf(hi[middle]) - special.erf(lo[middle]))
    return masses


def partition_probability(config: OscillatorConfig, t: float, interval: Sequence[float]) -> float:
    """
    Probability of finding the particle in [x_lo, x_hi]

    Returns:
        (Phi(alpha y_hi) - Phi(alpha y_lo)) / 2 with Phi the error function
    """
    lo, hi = float(interval[0]), float(interval[1])
    if lo > hi:
        raise InputError(f"interval is reversed: [{lo}, {hi}]")
    if lo == hi:
        return 0.0
    return float(_cell_masses(config, t, np.array([lo, hi]))[0])


def cell_probabilities(config: OscillatorConfig, t: float, partition: Partition1D) -> np.ndarray:
    return _cell_masses(config, t, partition.edges)


def discrete_entropy(config: OscillatorConfig, t: float, partition: Partition1D) -> float:
    """
    Shannon information -sum p_i ln p_i over the partition cells (nats)

    When the partition misses more than 1e-12 of the probability mass the
    remainder is counted as one extra cell.
    """
    p = cell_probabilities(config, t, partition)
    missing = 1.0 - float(p.sum())
    if missing > MASS_COVERAGE:
        logger.debug(f"partition covers {1 - missing:.3e} of the mass, appending complement cell")
        p = np.append(p, missing)
    return float(np.sum(special.entr(p)))


def info_density(config: OscillatorConfig, xt, t=0.0):
    """
    Space information density, nats per unit x/a

    (alpha / (2 sqrt(pi))) exp(-(alpha y)^2) [1 + ln(pi)/2 + (alpha y)^2]
    """
    u = _scaled_offset(config, xt, t)
    value = config.alpha / (2.0 * math.sqrt(math.pi)) * np.exp(-u ** 2) * (INFO_CONSTANT + u ** 2)
    return float(value) if np.ndim(value) == 0 else value


def regularized_info_density(config: OscillatorConfig, xt, t=0.0):
    """Density with the 1/sqrt(pi) prefactor of the discrete regularized sum (twice info_density)"""
    return 2.0 * info_density(config, xt, t)


def regularized_cell_sum(config: OscillatorConfig, t: float, partition: Partition1D) -> float:
    """
    Regularized entropy sum with x ln x replaced by -x

    sum_i (alpha/sqrt(pi)) exp(-(alpha y_i)^2) [1 + ln(pi)/2 + (alpha y_i)^2] dy_i
    with y_i the left edge of each cell.
    """
    edges = partition.edges
    if not np.all(np.isfinite(edges)):
        raise InputError("regularized sum needs finite breakpoints")
    return float(np.sum(regularized_info_density(config, edges[:-1], t) * np.diff(edges)))


def gaussian_tail_information(config: OscillatorConfig, half_width: float) -> float:
    """Analytic integral of info_density over |y| > half_width"""
    u = config.alpha * half_width
    erfc = special.erfc(u)
    return float(INFO_CONSTANT / 2.0 * erfc + u * math.exp(-u * u) / (2.0 * math.sqrt(math.pi)) + erfc / 4.0)


def total_information_report(config: OscillatorConfig,
                             t: float = 0.0,
                             tol: float = QUADRATURE_TOLERANCE) -> InformationIntegral:
    """
    Adaptive quadrature of info_density over y in [-8/alpha, 8/alpha] plus the analytic tail

    Raises:
        NumericalError: if the quadrature error estimate exceeds tol
    """
    half_width = 8.0 / config.alpha
    centre = math.cos(config.angular_frequency * t)
    value, abserr = integrate.quad(lambda x: info_density(config, x, t),
                                   centre - half_width, centre + half_width,
                                   points=[centre], epsabs=tol * 1e-3, epsrel=1e-13, limit=200)
    if abserr > tol:
        raise NumericalError(f"information quadrature reached only {abserr:.3e} (tolerance {tol:.1e})",
                             achieved=abserr)
    tail = gaussian_tail_information(config, half_width)
    return InformationIntegral(value=value + tail, abserr=abserr, tail=tail, half_width=half_width)


def total_information(config: OscillatorConfig, t: float = 0.0) -> float:
    """Total spatial information in nats; (1 + ln sqrt(pi))/2 + 1/4 for every alpha and t"""
    return total_information_report(config, t).value


def differential_entropy(config: OscillatorConfig) -> float:
    """Differential entropy of the position density, ln(sqrt(pi e)/alpha)"""
    return 0.5 * math.log(math.pi * math.e) - math.log(config.alpha)


def half_maximum_width(config: OscillatorConfig) -> float:
    """Closed-form FWHM of info_density in x/a; alpha times this is alpha-independent"""
    u_half = optimize.brentq(lambda u: math.exp(-u * u) * (INFO_CONSTANT + u * u) - INFO_CONSTANT / 2.0,
                             0.0, 5.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return 2.0 * u_half / config.alpha


def peak_density(config: OscillatorConfig) -> float:
    """alpha (1 + ln sqrt(pi)) / (2 sqrt(pi))"""
    return config.alpha * INFO_CONSTANT / (2.0 * math.sqrt(math.pi))


def density_curve(config: OscillatorConfig, t: float, grid: Grid1D) -> InfoDensityCurve:
    """Sample info_density on the grid nodes"""
    xt = grid.nodes
    return InfoDensityCurve(y=np.asarray(trajectory_offset(config, xt, t)),
                            density=np.asarray(info_density(config, xt, t)),
                            alpha=config.alpha)


def to_bits(nats):
    """Display conversion from nats to bits"""
    return nats / math.log(2.0)
