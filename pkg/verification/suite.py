"""
Verification Suite
Runs every acceptance check of the library and collects name, measured
value, bound and status for the verify report
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd
from scipy import optimize

from fields import BandLimitedField, CoherentField
from information.energy import (
    FAR_FIELD_LIMIT,
    energy_density,
    energy_per_info,
    lagrangian_energy_density,
    large_coordinate_limit,
    on_trajectory_energy_per_info,
)
from information.number import (
    DEFAULT_TOLERANCE as DEFAULT_SERIES_TOLERANCE,
    number_info_density,
    number_information,
    poisson_entropy_bruteforce,
)
from information.spatial import (
    TOTAL_INFORMATION,
    info_density,
    Partition1D,
    peak_density,
    regularized_cell_sum,
    total_information,
)
from oscillator.coherent import ho_potential
from oscillator.config import OscillatorConfig
from oscillator.errors import ConfigurationError
from oscillator.grid import Grid1D
from .energy_gap import (
    coherent_gradient_check,
    delta_epsilon_average,
    massless_dual_residuals,
    on_trajectory_energy_gap,
)
from .evolution import Evolution, ehrenfest_residual
from .residuals import (
    cancellation_viscosity,
    convergence_study,
    identity_separation,
    nonlinear_term_residual,
    schrodinger_residual,
    transform_identity_residual,
    viscosity_fit,
)

logger = logging.getLogger(__name__)

PASS, FAIL, INFO = 'PASS', 'FAIL', 'INFO'

DEFAULT_TOLERANCES: Dict[str, float] = {
    'information': 1e-8,
    'peak_relative': 1e-6,
    'fwhm_relative': 1e-6,
    'quantum_limit_relative': 1e-3,
    'derivative': 1e-6,
    'poisson_oracle': 1e-5,
    'series': DEFAULT_SERIES_TOLERANCE,   # number-state series truncation
    'order_low': 1.8,
    'order_high': 2.2,
    'identity_separation': 100.0,
    'viscosity_relative': 1e-6,
    'viscosity_sensitivity': 10.0,
    'schrodinger_scaled': 1e-3,
    'norm_drift': 1e-8,
    'overlap_loss': 1e-4,
    'ehrenfest_position': 1e-3,
    'energy_gap': 1e-10,
    'delta_epsilon': 1e-8,
    'gradient': 1e-8,
    'ratio_identity': 1e-10,
    'far_field': 1e-2,
    'massless': 1e-12,
}


@dataclass(frozen=True)
class Check:
    """One line of the verification report"""
    name: str
    value: float
    bound: float
    status: str
    detail: str = ''

    @property
    def passed(self) -> bool:
        return self.status != FAIL


@dataclass
class VerificationReport:
    checks: List[Check]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([c.__dict__ for c in self.checks],
                            columns=['name', 'value', 'bound', 'status', 'detail'])


def _upper(name: str, value: float, bound: float, detail: str = '') -> Check:
    """Passes when value <= bound"""
    ok = bool(np.isfinite(value)) and value <= bound
    return Check(name, float(value), bound, PASS if ok else FAIL, detail)


def _lower(name: str, value: float, bound: float, detail: str = '') -> Check:
    """Passes when value >= bound"""
    ok = not math.isnan(value) and value >= bound
    return Check(name, float(value), bound, PASS if ok else FAIL, detail)


def _info(name: str, value: float, bound: float, detail: str) -> Check:
    return Check(name, float(value), bound, INFO, detail)


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / max(1.0, abs(reference))


# -- spatial information ---------------------------------------------------

def check_information_conservation(tol: Dict[str, float]) -> List[Check]:
    worst = 0.0
    for alpha in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0):
        config = OscillatorConfig.from_alpha(alpha)
        for t in (0.0, math.pi / 3.0, math.pi):
            worst = max(worst, abs(total_information(config, t) - TOTAL_INFORMATION))
    config = OscillatorConfig.from_alpha(1.0)
    regularized = regularized_cell_sum(config, 0.0, Partition1D.uniform_in_offset(config, 0.0, 8.0, 16000))
    return [
        _upper("information conservation", worst, tol['information'],
               f"total = {TOTAL_INFORMATION:.9f} nats for alpha in [0.5, 20]"),
        _info("regularized-sum density prefactor", regularized / TOTAL_INFORMATION, 1.0,
              "the discrete regularized sum carries 1/sqrt(pi) where the continuum density has "
              "1/(2 sqrt(pi)); the continuum convention is used and integrates to the value above"),
    ]


def _measured_half_width(config: OscillatorConfig) -> float:
    """FWHM located directly on info_density(x/a) at t = 0"""
    half = info_density(config, 1.0) / 2.0
    offset = optimize.brentq(lambda y: info_density(config, 1.0 + y) - half, 1e-12, 5.0 / config.alpha,
                             xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return 2.0 * offset


def check_localization(tol: Dict[str, float]) -> List[Check]:
    peak_error = 0.0
    widths = []
    for alpha in (1.0, 2.0, 5.0, 10.0, 20.0):
        config = OscillatorConfig.from_alpha(alpha)
        grid = np.linspace(1.0 - 1.0 / alpha, 1.0 + 1.0 / alpha, 2001)
        sampled = float(np.max(info_density(config, grid)))
        peak_error = max(peak_error, abs(sampled - peak_density(config)) / peak_density(config))
        widths.append(alpha * _measured_half_width(config))
    widths = np.array(widths)
    spread = float((widths.max() - widths.min()) / widths.mean())
    return [
        _upper("localization peak", peak_error, tol['peak_relative'],
               "peak = alpha (1 + ln sqrt(pi)) / (2 sqrt(pi))"),
        _upper("localization width", spread, tol['fwhm_relative'],
               f"alpha * FWHM = {widths.mean():.9f}"),
    ]


# -- number-state information ----------------------------------------------

def check_number_information(tol: Dict[str, float]) -> List[Check]:
    series = tol['series']
    quantum = number_info_density(1e-4, series)
    quantum_error = abs(quantum - (-math.log(1e-4))) / (-math.log(1e-4))

    means = np.linspace(0.01, 50.0, 500)
    densities = np.array([number_info_density(m, series) for m in means])
    informations = np.array([number_information(m, series).information for m in means])
    decreasing = float(np.max(np.diff(densities)))
    increasing = float(np.min(np.diff(informations)))

    step = 1e-5
    derivative_error = 0.0
    for mean in (0.01, 0.1, 1.0, 5.0, 20.0):
        numeric = (number_information(mean + step, series).information
                   - number_information(mean - step, series).information) / (2.0 * step)
        derivative_error = max(derivative_error, abs(numeric - number_info_density(mean, series)))

    oracle = abs(number_information(1.0, series).information - poisson_entropy_bruteforce(1.0, 40))
    return [
        _upper("number quantum limit", quantum_error, tol['quantum_limit_relative'],
               f"dI/d<n>(1e-4) = {quantum:.6f} against -ln(1e-4)"),
        _upper("number density decreasing", decreasing, 0.0, "largest step of dI/d<n> on [0.01, 50]"),
        _lower("number information increasing", increasing, 0.0, "smallest step of I on [0.01, 50]"),
        _upper("number derivative consistency", derivative_error, tol['derivative'],
               "analytic series against centered difference of I"),
        _upper("poisson entropy oracle", oracle, tol['poisson_oracle'],
               "I(1) against brute-force -sum P ln P to n = 40"),
    ]


# -- PDE verification ------------------------------------------------------

def check_transform_identity(tol: Dict[str, float], nu_perturbation: float = 0.0) -> List[Check]:
    config = OscillatorConfig()
    nu = cancellation_viscosity(config) * (1.0 + nu_perturbation)
    grid = Grid1D(0.0, 2.0 * math.pi, 512, dt=1e-3)
    reports = [convergence_study(lambda f: transform_identity_residual(f, None, config, nu=nu),
                                 field, grid, 0.3)
               for field in BandLimitedField.random_set(20, seed=42)]
    orders = np.array([r.order_estimate for r in reports])
    separation = min(identity_separation(r) for r in reports)
    worst_order = float(orders[np.argmax(np.abs(orders - 2.0))])
    in_band = tol['order_low'] <= worst_order <= tol['order_high']
    return [
        Check("transform identity order", worst_order, tol['order_low'], PASS if in_band else FAIL,
              f"orders in [{orders.min():.3f}, {orders.max():.3f}] over 20 random fields"),
        _lower("transform identity separation", separation, tol['identity_separation'],
               "separate residual / identity residual on the finest grid"),
    ]


def check_viscosity(tol: Dict[str, float]) -> List[Check]:
    config = OscillatorConfig()
    grid = Grid1D(-3.0, 3.0, 301)
    fields = [CoherentField(OscillatorConfig.from_alpha(alpha)) for alpha in (0.7, 1.0, 1.5, 2.0)]
    estimate = viscosity_fit(fields, grid, 0.4, config, potential=ho_potential(config))
    target = config.planck / (2.0 * config.mass)
    magnitude_error = abs(abs(estimate.nu) - target) / target
    real_part = abs(estimate.nu.real) / abs(estimate.nu)

    base = nonlinear_term_residual(fields, grid, 0.4, estimate.nu, config, ho_potential(config))
    perturbed = min(nonlinear_term_residual(fields, grid, 0.4, estimate.nu * (1.0 + 0.01 * d),
                                            config, ho_potential(config))
                    for d in (1.0, -1.0, 1j, -1j))
    sensitivity = perturbed / base if base > 0 else math.inf
    return [
        _upper("viscosity magnitude", magnitude_error, tol['viscosity_relative'],
               f"nu = {estimate.nu:.12g}, expected i hbar/2m"),
        _upper("viscosity purely imaginary", real_part, tol['viscosity_relative'], "|Re nu| / |nu|"),
        _lower("viscosity uniqueness", sensitivity, tol['viscosity_sensitivity'],
               "residual growth for a 1% perturbation of nu"),
        _info("viscosity sign convention", estimate.nu.imag, target,
              "cancellation yields +i hbar/2m; the printed hbar/(2im) has the opposite sign"),
    ]


def check_coherent_solution(tol: Dict[str, float]) -> List[Check]:
    config = OscillatorConfig()
    reach = 1.0 + 8.0 / config.alpha
    coarse_grid = Grid1D.with_spacing(-reach, reach, 0.01, dt=1e-4)
    field = CoherentField(config)
    fine = convergence_study(lambda f: schrodinger_residual(f, ho_potential(config), config),
                             field, coarse_grid, 0.7)
    peak = float(np.max(np.abs(field.value(coarse_grid.refined().nodes, 0.7))))
    scaled = fine.max_abs / (config.quantum * peak)
    order = fine.order_estimate
    in_band = tol['order_low'] <= order <= tol['order_high']
    return [
        Check("coherent state residual order", order, tol['order_low'], PASS if in_band else FAIL,
              "Schrodinger residual under halving of h and dt"),
        _upper("coherent state residual", scaled, tol['schrodinger_scaled'],
               f"h = {fine.h:g}, dt = {fine.dt:g}, units hbar omega max|psi|"),
    ]


def check_evolution(tol: Dict[str, float], verbose: bool = False) -> List[Check]:
    config = OscillatorConfig.from_alpha(5.0)
    evolution = Evolution.for_coherent_state(config, n_points=2048, steps_per_period=8000)
    result = evolution.run(8000, output_every=80, verbose=verbose)
    return [
        _upper("evolution norm drift", result.norm_drift, tol['norm_drift'], "one period, alpha = 5"),
        _upper("evolution overlap loss", 1.0 - result.final_overlap, tol['overlap_loss'],
               f"final overlap {result.final_overlap:.9f}"),
        _upper("evolution trajectory", result.max_position_error, tol['ehrenfest_position'],
               f"Ehrenfest residual {ehrenfest_residual(result):.3e}"),
    ]


def check_energy_gap(tol: Dict[str, float]) -> List[Check]:
    rng = np.random.default_rng(11)
    gap_error = 0.0
    for alpha, t in zip(rng.uniform(0.5, 20.0, 100), rng.uniform(0.0, 2.0 * math.pi, 100)):
        config = OscillatorConfig.from_alpha(alpha)
        gap_error = max(gap_error, abs(on_trajectory_energy_gap(config, t).total - 0.5 * config.quantum))

    average = 0.0
    for alpha, t in ((1.0, 0.0), (3.0, 0.7)):
        config = OscillatorConfig.from_alpha(alpha)
        value = delta_epsilon_average(CoherentField(config), ho_potential(config), config, t=t)
        average = max(average, abs(value))
    return [
        _upper("on-trajectory energy gap", gap_error, tol['energy_gap'], "hbar omega / 2 for 100 random (alpha, t)"),
        _upper("quantum average energy defect", average, tol['delta_epsilon'], "coherent state, alpha in {1, 3}"),
        _upper("gradient cross-check", coherent_gradient_check(), tol['gradient'],
               "closed-form against centered differences at 1000 points"),
        _info("ground-state energy reading", 0.5, average,
              "the integrand on the classical path is hbar omega/2 while its quantum average is 0"),
    ]


# -- energy per information ------------------------------------------------

def check_energy_information(tol: Dict[str, float]) -> List[Check]:
    rng = np.random.default_rng(5)
    n = 10_000
    alphas = rng.uniform(0.5, 20.0, n)
    times = rng.uniform(0.0, 2.0 * math.pi, n)
    offsets = rng.uniform(-5.0, 5.0, n) / alphas
    identity_error = 0.0
    on_path_error = 0.0
    for alpha, t, y in zip(alphas, times, offsets):
        config = OscillatorConfig.from_alpha(alpha)
        xt = math.cos(t) + y
        direct = energy_per_info(config, xt, t)
        via_densities = energy_density(config, xt, t) / (config.quantum * info_density(config, xt, t))
        identity_error = max(identity_error, _relative(via_densities, direct))
        on_path = energy_per_info(config, math.cos(t), t)
        on_path_error = max(on_path_error, _relative(on_path, on_trajectory_energy_per_info(config)))

    config = OscillatorConfig.from_alpha(3.0)
    xt = np.linspace(-2.0, 2.0, 101)
    lagrangian_error = float(np.max(np.abs(np.abs(lagrangian_energy_density(config, xt, 0.7))
                                           - np.abs(energy_density(config, xt, 0.7)))))

    far = energy_per_info(OscillatorConfig.from_alpha(1.0), 1e3, 0.0)
    approach = large_coordinate_limit(OscillatorConfig.from_alpha(1.0))
    return [
        _upper("energy ratio identity", identity_error, tol['ratio_identity'], "10^4 random points"),
        _upper("energy ratio on trajectory", on_path_error, tol['ratio_identity'],
               "alpha^2 / (1 + ln sqrt(pi))"),
        _upper("energy density from Lagrangian", lagrangian_error, tol['ratio_identity'],
               "|T00| from gradients against the closed form, alpha = 3, t = 0.7"),
        _upper("energy ratio far field", abs(far - FAR_FIELD_LIMIT), tol['far_field'],
               f"dE/dI(x/a = 1e3) = {far:.6f} hbar omega"),
        _info("far-field limit claim", far, 1.0,
              "the ratio tends to 2 hbar omega, not the single quantum per unit information sometimes quoted"),
        _info("far-field convergence rate", approach.rate, -1.0,
              f"|dE/dI - 2| ~ (x/a)^{approach.rate:.3f}, extrapolated limit {approach.limit:.6f} hbar omega"),
    ]


def check_massless(tol: Dict[str, float]) -> List[Check]:
    config = OscillatorConfig()
    on_shell = [massless_dual_residuals(1.0, [1.0], config, x=[0.3], t=0.2),
                massless_dual_residuals(2.0, [0.0, 2.0, 0.0], config, x=[1.0, -0.5, 2.0], t=1.1)]
    worst = max(max(r.particle, r.wave) for r in on_shell)
    de_broglie = max(massless_dual_residuals(w, k, OscillatorConfig(planck=hbar), x=x, t=t).de_broglie
                     for w, k, x, t, hbar in ((1.0, [1.0], [0.7], 0.4, 1.0),
                                              (3.0, [2.0, 1.0], [0.1, 5.0], 2.5, 0.5),
                                              (0.5, [0.5], [40.0], 13.0, 2.0)))
    return [
        _upper("massless on-shell residuals", worst, tol['massless'], "E = |p| and omega = |k|"),
        _upper("De Broglie correspondence", de_broglie, tol['massless'], "S_p = (hbar/i) ln S_w with p = hbar k"),
    ]


CHECKS: Dict[str, Callable[..., List[Check]]] = {
    'information': check_information_conservation,
    'localization': check_localization,
    'number': check_number_information,
    'identity': check_transform_identity,
    'viscosity': check_viscosity,
    'schrodinger': check_coherent_solution,
    'evolution': check_evolution,
    'energy_gap': check_energy_gap,
    'energy_info': check_energy_information,
    'massless': check_massless,
}


def run_verification(tolerances: Optional[Dict[str, float]] = None,
                     nu_perturbation: float = 0.0,
                     verbose: bool = False) -> VerificationReport:
    """
    Run every check

    Args:
        tolerances: Overrides for DEFAULT_TOLERANCES
        nu_perturbation: Relative change applied to the viscosity in the
            transform-identity check (negative control)
        verbose: Show the evolution progress bar
    """
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tol)
        if unknown:
            raise ConfigurationError(f"unknown tolerance keys: {sorted(unknown)}")
        tol.update(tolerances)

    checks: List[Check] = []
    for group, run in CHECKS.items():
        logger.info(f"running {group} checks")
        if group == 'identity':
            checks.extend(run(tol, nu_perturbation))
        elif group == 'evolution':
            checks.extend(run(tol, verbose))
        else:
            checks.extend(run(tol))
    report = VerificationReport(checks)
    logger.info(f"{len(checks)} checks, {len(report.failures)} failed")
    return report
