"""
Number-State Information Module
Shannon information of the Poisson occupation law of a coherent state,
its derivative with respect to the mean occupation, and certified
truncation of the underlying series
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np
import pandas as pd
from scipy import special

from oscillator.config import OscillatorConfig
from oscillator.errors import DomainError, InputError, NumericalError

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-14
MAX_TRUNCATION = 1_000_000


@dataclass(frozen=True)
class NumberStateInfo:
    """Number-state information of a coherent state with mean occupation <n>"""
    mean: float
    truncation: int
    information: float        # nats
    derivative: float         # nats per unit <n>; nan at <n> = 0
    tail_bound: float


def poisson_pmf(n, mean: float):
    """<n>^n e^{-<n>} / n!, evaluated in log space"""
    n = np.asarray(n)
    if np.any(n < 0) or mean < 0:
        raise InputError(f"poisson_pmf needs n >= 0 and mean >= 0, got n={n}, mean={mean}")
    value = np.exp(_log_pmf(n, mean))
    return float(value) if value.ndim == 0 else value


def _log_pmf(n: np.ndarray, mean: float) -> np.ndarray:
    # xlogy keeps 0 * ln 0 = 0 so mean = 0 gives P(0) = 1
    return special.xlogy(n, mean) - mean - special.gammaln(n + 1.0)


def mean_occupation(config: OscillatorConfig) -> float:
    """
    <n> = (m omega^2 <x^2> + <p^2>/m) / (2 hbar omega)

    with the period averages of the classical motion <x^2> = a^2/2 and
    <p^2> = m^2 omega^2 a^2 / 2; equals alpha^2 / 2.
    """
    m, w, a = config.mass, config.angular_frequency, config.amplitude
    mean_x2 = a ** 2 / 2.0
    mean_p2 = (m * w * a) ** 2 / 2.0
    return (m * w ** 2 * mean_x2 + mean_p2 / m) / 2.0 / config.quantum


def truncation_level(mean: float) -> int:
    """Initial series length ceil(<n> + 12 sqrt(<n>) + 30)"""
    return int(math.ceil(mean + 12.0 * math.sqrt(mean) + 30.0))


def _geometric_tail(mean: float, n_max: int, weight_first: float, weight_step: float,
                    weight_curve: float) -> float:
    """
    Majorant of sum_{j>=0} P(n_max+1+j) w_j with w_j <= first + j step + j^2 curve

    Past n_max (>= mean) the pmf ratio P(n+1)/P(n) = mean/(n+1) is at most
    r = mean/(n_max+2), so P(n_max+1+j) <= P(n_max+1) r^j.
    """
    r = mean / (n_max + 2.0)
    head = math.exp(float(_log_pmf(np.float64(n_max + 1), mean)))
    one = 1.0 / (1.0 - r)
    return head * (weight_first * one
                   + weight_step * r * one ** 2
                   + weight_curve * r * (1.0 + r) * one ** 3)


def _information_tail(mean: float, n_max: int) -> float:
    # ln((N+1+j)!) <= ln((N+1)!) + j ln(N+1) + j^2/(N+1)
    first = float(special.gammaln(n_max + 2.0))
    return _geometric_tail(mean, n_max, first, math.log(n_max + 1.0), 1.0 / (n_max + 1.0))


def _density_tail(mean: float, n_max: int) -> float:
    # ln(N+2+j) <= ln(N+2) + j/(N+2)
    return _geometric_tail(mean, n_max, math.log(n_max + 2.0), 1.0 / (n_max + 2.0), 0.0)


def _certified_truncation(mean: float, tol: float, tail) -> Tuple[int, float]:
    n_max = truncation_level(mean)
    bound = tail(mean, n_max)
    while bound >= tol:
        if n_max > MAX_TRUNCATION:
            raise NumericalError(f"series tail bound {bound:.3e} still above {tol:.1e}", achieved=bound)
        logger.debug(f"tail bound {bound:.3e} at N={n_max} above {tol:.1e}, extending series")
        n_max *= 2
        bound = tail(mean, n_max)
    return n_max, bound


def _check_tol(tol: float):
    if not tol > 0:
        raise InputError(f"tol must be positive, got {tol}")


def _information_sum(mean: float, n_max: int) -> float:
    n = np.arange(n_max + 1, dtype=float)
    weights = np.exp(_log_pmf(n, mean))
    return mean * (1.0 - math.log(mean)) + float(np.sum(weights * special.gammaln(n + 1.0)))


def _density_sum(mean: float, n_max: int) -> float:
    n = np.arange(n_max + 1, dtype=float)
    weights = np.exp(_log_pmf(n, mean))
    return float(np.sum(weights * np.log1p(n))) - math.log(mean)


def number_information(mean: float, tol: float = DEFAULT_TOLERANCE) -> NumberStateInfo:
    """
    I = <n>(1 - ln<n>) + e^{-<n>} sum_n (<n>^n/n!) ln(n!)

    The series is truncated once its certified tail is below tol. At <n> = 0
    the information is the continuity limit 0.
    """
    if mean < 0:
        raise InputError(f"mean occupation must be >= 0, got {mean}")
    _check_tol(tol)
    if mean == 0:
        return NumberStateInfo(mean=0.0, truncation=0, information=0.0,
                               derivative=float('nan'), tail_bound=0.0)

    n_max, bound = _certified_truncation(mean, tol, _information_tail)
    info = _information_sum(mean, n_max)
    n_density, _ = _certified_truncation(mean, tol, _density_tail)
    return NumberStateInfo(mean=float(mean), truncation=n_max, information=info,
                           derivative=_density_sum(mean, n_density), tail_bound=bound)


def number_info_density(mean: float, tol: float = DEFAULT_TOLERANCE) -> float:
    """
    dI/d<n> = e^{-<n>} sum_n (<n>^n/n!) ln(n+1) - ln<n>

    Raises:
        DomainError: at <n> = 0, where the density diverges logarithmically
    """
    if mean < 0:
        raise InputError(f"mean occupation must be >= 0, got {mean}")
    if mean == 0:
        raise DomainError("number-state information density diverges as -ln<n> at <n> = 0")
    _check_tol(tol)
    n_max, _ = _certified_truncation(mean, tol, _density_tail)
    return _density_sum(mean, n_max)


def poisson_entropy_bruteforce(mean: float, n_max: int) -> float:
    """-sum_{n<=n_max} P ln P by direct summation"""
    p = poisson_pmf(np.arange(n_max + 1), mean)
    return float(np.sum(special.entr(p)))


def gaussian_entropy_asymptote(mean: float) -> float:
    """Large-<n> limit 0.5 ln(2 pi e <n>)"""
    return 0.5 * math.log(2.0 * math.pi * math.e * mean)


def number_info_curve(means: Iterable[float], tol: float = DEFAULT_TOLERANCE) -> pd.DataFrame:
    """Tabulate (<n>, I, dI/d<n>) for positive mean occupations"""
    rows = []
    for mean in means:
        info = number_information(float(mean), tol)
        rows.append({'mean': info.mean, 'information': info.information,
                     'derivative': info.derivative})
    return pd.DataFrame(rows, columns=['mean', 'information', 'derivative'])
