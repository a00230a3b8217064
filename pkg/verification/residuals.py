"""
PDE Residual Engine
Finite-difference residuals of the Schrodinger equation and of the
dissipative Hamilton-Jacobi equation, the log-transform identity linking
them, and the least-squares fit of the viscosity that makes the identity hold
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np

from fields.base import FieldJet, SmoothField
from oscillator.coherent import Potential, zero_potential
from oscillator.config import OscillatorConfig
from oscillator.errors import InputError, NumericalError
from oscillator.grid import Grid1D, SampledComplexField, central_first, central_second, central_time

logger = logging.getLogger(__name__)

AMPLITUDE_FLOOR = 1e-30
MAX_PHASE_STEP = math.pi / 2.0
ILL_CONDITIONED = 1e-20


@dataclass(frozen=True)
class ResidualReport:
    """Statistics of a residual over the interior nodes with a complete stencil"""
    max_abs: float
    l2: float                       # root mean square
    h: float                        # grid spacing in x/a
    dt: float
    order_estimate: Optional[float] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def with_order(self, coarse: 'ResidualReport') -> 'ResidualReport':
        """This (finer) report with the order measured against a coarser one"""
        return replace(self, order_estimate=convergence_order(coarse, self))

    @property
    def flagged(self) -> int:
        return int(self.metadata.get('flagged', 0))


@dataclass(frozen=True)
class ViscosityEstimate:
    nu: complex
    residual_at_nu: float
    n_fields: int
    cancellation: complex           # -A/2m with A = hbar/i

    @property
    def relative_error(self) -> float:
        return abs(self.nu - self.cancellation) / abs(self.cancellation)


@dataclass
class SampledAction:
    """Complex action S on a grid, one row per time slice; flagged nodes hold nan"""
    grid: Grid1D
    values: np.ndarray
    times: Optional[np.ndarray] = None
    flagged: Optional[np.ndarray] = None

    def __post_init__(self):
        self.values = np.atleast_2d(np.asarray(self.values, dtype=complex))
        if self.flagged is None:
            self.flagged = ~np.isfinite(self.values)
        if self.times is not None:
            self.times = np.asarray(self.times, dtype=float)

    @property
    def dt(self) -> Optional[float]:
        if self.times is not None and len(self.times) > 1:
            return float(self.times[1] - self.times[0])
        return self.grid.dt


def cancellation_viscosity(config: OscillatorConfig, action_constant: Optional[complex] = None) -> complex:
    """nu = -A/2m, the value that removes the (grad psi)^2 term; i hbar/2m for A = hbar/i"""
    a = config.planck / 1j if action_constant is None else action_constant
    return -a / (2.0 * config.mass)


def convergence_order(coarse: ResidualReport, fine: ResidualReport) -> float:
    """Empirical order from one halving of h and dt"""
    if coarse.max_abs <= 0 or fine.max_abs <= 0:
        logger.warning("residual vanished on one grid, convergence order undefined")
        return float('nan')
    return math.log2(coarse.max_abs / fine.max_abs)


def hj_action_from_wavefunction(field: SampledComplexField, config: OscillatorConfig) -> SampledAction:
    """
    S = (hbar/i) ln(psi) with the phase unwrapped continuously

    The phase is unwrapped in time at the leftmost node valid in every slice
    and then outward along the grid from that node. Nodes whose amplitude is
    below 1e-30 max|psi| are flagged and hold nan.

    Raises:
        NumericalError: if adjacent valid nodes differ in phase by more than pi/2
    """
    values = np.atleast_2d(field.values)
    amplitude = np.abs(values)
    if not amplitude.max() > 0:
        raise InputError("wavefunction vanishes identically")
    flagged = amplitude < AMPLITUDE_FLOOR * amplitude.max()
    columns = np.nonzero(~flagged.any(axis=0))[0]
    if len(columns) == 0:
        raise InputError("no node is above the amplitude floor in every slice")
    if flagged.any():
        logger.warning(f"{int(flagged.sum())} nodes below the amplitude floor are excluded")

    ref = columns[0]
    phase = np.angle(values)
    phase[:, ref] = np.unwrap(phase[:, ref])
    phase[:, ref:] = np.unwrap(phase[:, ref:], axis=1)
    phase[:, :ref + 1] = np.unwrap(phase[:, ref::-1], axis=1)[:, ::-1]

    jumps = np.abs(np.diff(phase, axis=1))
    resolved = ~(flagged[:, 1:] | flagged[:, :-1])
    if np.any(jumps[resolved] > MAX_PHASE_STEP):
        worst = float(jumps[resolved].max())
        raise NumericalError(f"phase is under-resolved: adjacent-node jump {worst:.3f} exceeds pi/2",
                             achieved=worst)

    log_amplitude = np.log(np.where(flagged, 1.0, amplitude))
    action = config.planck * phase - 1j * config.planck * log_amplitude
    action[flagged] = np.nan
    return SampledAction(grid=field.grid, values=action, times=field.times, flagged=flagged)


def _time_step(sampled) -> float:
    values = np.atleast_2d(sampled.values)
    if sampled.grid.n_points < 3 or values.shape[0] < 3:
        raise InputError("residuals need at least 3 nodes and 3 time slices")
    dt = sampled.dt
    if dt is None:
        raise InputError("sampled field has no time step")
    return dt


def _potential_values(potential: Optional[Potential], grid: Grid1D) -> np.ndarray:
    potential = zero_potential if potential is None else potential
    return np.asarray(potential(grid.nodes), dtype=float)


def _stencil_mask(flagged: np.ndarray) -> np.ndarray:
    """Interior (time, space) points whose five-point stencil avoids flagged nodes"""
    return ~(flagged[1:-1, 1:-1] | flagged[:-2, 1:-1] | flagged[2:, 1:-1]
             | flagged[1:-1, :-2] | flagged[1:-1, 2:])


def _report(residual: np.ndarray, mask: np.ndarray, h: float, dt: float,
            metadata: Optional[Dict[str, Any]] = None) -> ResidualReport:
    magnitude = np.abs(residual[mask])
    if magnitude.size == 0:
        raise InputError("no interior node has a complete stencil")
    return ResidualReport(max_abs=float(magnitude.max()),
                          l2=float(np.sqrt(np.mean(magnitude ** 2))),
                          h=h, dt=dt, metadata=dict(metadata or {}))


def _schrodinger_terms(values: np.ndarray, h: float, dt: float, u: np.ndarray,
                       config: OscillatorConfig) -> np.ndarray:
    hbar, m, a = config.planck, config.mass, config.amplitude
    psi_t = central_time(values, dt)[:, 1:-1]
    laplacian = central_second(values[1:-1], h) / a ** 2
    return 1j * hbar * psi_t + hbar ** 2 / (2.0 * m) * laplacian - u[1:-1] * values[1:-1, 1:-1]


def _hj_terms(action: np.ndarray, h: float, dt: float, u: np.ndarray, nu: complex,
              config: OscillatorConfig) -> np.ndarray:
    a = config.amplitude
    s_t = central_time(action, dt)[:, 1:-1]
    gradient = central_first(action[1:-1], h) / a
    laplacian = central_second(action[1:-1], h) / a ** 2
    return s_t + gradient ** 2 / (2.0 * config.mass) + u[1:-1] - nu * laplacian


def schrodinger_residual(field: SampledComplexField,
                         potential: Optional[Potential],
                         config: OscillatorConfig) -> ResidualReport:
    """
    R = i hbar psi_t + (hbar^2/2m) lap(psi) - U psi with centered differences

    Args:
        field: At least three equally spaced time slices
        potential: U(x/a) in energy units, None for a free particle
        config: Oscillator parameters (hbar, m, a)

    Returns:
        Statistics over interior nodes of interior slices
    """
    dt = _time_step(field)
    values = np.atleast_2d(field.values)
    residual = _schrodinger_terms(values, field.grid.spacing, dt,
                                  _potential_values(potential, field.grid), config)
    return _report(residual, np.ones(residual.shape, dtype=bool), field.grid.spacing, dt)


def hj_residual(action: SampledAction,
                potential: Optional[Potential],
                nu: complex,
                config: OscillatorConfig) -> ResidualReport:
    """R = S_t + (grad S)^2/2m + U - nu lap(S) with centered differences"""
    dt = _time_step(action)
    residual = _hj_terms(action.values, action.grid.spacing, dt,
                         _potential_values(potential, action.grid), nu, config)
    return _report(residual, _stencil_mask(action.flagged), action.grid.spacing, dt,
                   {'flagged': int(action.flagged.sum())})


def transform_identity_residual(field: SampledComplexField,
                                potential: Optional[Potential],
                                config: OscillatorConfig,
                                nu: Optional[complex] = None) -> ResidualReport:
    """
    psi R_HJ(S(psi), nu) + R_Sch(psi), which vanishes in the continuum for any smooth psi

    Args:
        nu: Viscosity, defaults to the cancellation value i hbar/2m

    Returns:
        Report of the combination; metadata carries the separate magnitudes
        hj_max (of psi R_HJ) and schrodinger_max
    """
    nu = cancellation_viscosity(config) if nu is None else nu
    dt = _time_step(field)
    h = field.grid.spacing
    u = _potential_values(potential, field.grid)
    values = np.atleast_2d(field.values)
    action = hj_action_from_wavefunction(field, config)

    psi = values[1:-1, 1:-1]
    hj_part = psi * _hj_terms(action.values, h, dt, u, nu, config)
    schrodinger_part = _schrodinger_terms(values, h, dt, u, config)
    mask = _stencil_mask(action.flagged)
    return _report(hj_part + schrodinger_part, mask, h, dt, {
        'flagged': int(action.flagged.sum()),
        'nu': nu,
        'hj_max': float(np.abs(hj_part[mask]).max()),
        'schrodinger_max': float(np.abs(schrodinger_part[mask]).max()),
    })


def identity_separation(report: ResidualReport) -> float:
    """How many times smaller the identity residual is than the larger separate residual"""
    separate = max(report.metadata['hj_max'], report.metadata['schrodinger_max'])
    return separate / report.max_abs if report.max_abs > 0 else float('inf')


def convergence_study(evaluate: Callable[[SampledComplexField], ResidualReport],
                      field: SmoothField,
                      grid: Grid1D,
                      t: float) -> ResidualReport:
    """Evaluate on the grid and on its refinement; returns the fine report with its order"""
    coarse = evaluate(field.slices(grid, t))
    fine = evaluate(field.slices(grid.refined(), t))
    return fine.with_order(coarse)


def _transformed_terms(jet: FieldJet, u: np.ndarray, config: OscillatorConfig):
    """
    Split psi R_HJ(S(psi), nu) + R_Sch(psi) into base + nu * coefficient from analytic derivatives
    """
    hbar, m, a = config.planck, config.mass, config.amplitude
    psi = jet.psi
    q_t = jet.psi_t / psi
    q_x = jet.psi_x / (a * psi)
    q_xx = jet.psi_xx / (a ** 2 * psi)
    s_t = -1j * hbar * q_t
    grad_s = -1j * hbar * q_x
    lap_s = -1j * hbar * (q_xx - q_x ** 2)
    r_sch = 1j * hbar * jet.psi_t + hbar ** 2 / (2.0 * m) * jet.psi_xx / a ** 2 - u * psi
    base = psi * (s_t + grad_s ** 2 / (2.0 * m) + u) + r_sch
    return base, -psi * lap_s


def _stacked_terms(fields: Sequence[SmoothField], grid: Grid1D, t: float,
                   config: OscillatorConfig, potential: Optional[Potential]):
    if len(fields) < 3:
        raise InputError(f"viscosity fit needs at least 3 fields, got {len(fields)}")
    u = _potential_values(potential, grid)
    parts = [_transformed_terms(f.jet(grid.nodes, t), u, config) for f in fields]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def nonlinear_term_residual(fields: Sequence[SmoothField],
                            grid: Grid1D,
                            t: float,
                            nu: complex,
                            config: OscillatorConfig,
                            potential: Optional[Potential] = None) -> float:
    """RMS of psi R_HJ + R_Sch over all nodes and fields at the given nu"""
    base, coefficient = _stacked_terms(fields, grid, t, config, potential)
    return float(np.sqrt(np.mean(np.abs(base + nu * coefficient) ** 2)))


def viscosity_fit(fields: Sequence[SmoothField],
                  grid: Grid1D,
                  t: float,
                  config: OscillatorConfig,
                  potential: Optional[Potential] = None) -> ViscosityEstimate:
    """
    Least-squares nu over nodes and fields annihilating the (grad psi)^2 term

    The transformed residual is affine in nu, base + nu * coefficient, so
    the fit is a single complex normal equation.

    Raises:
        NumericalError: if the coefficient vector is numerically zero (for
            example plane waves, whose log has no curvature)
    """
    base, coefficient = _stacked_terms(fields, grid, t, config, potential)
    weight = float(np.vdot(coefficient, coefficient).real)
    scale = float(np.vdot(base, base).real)
    if weight <= ILL_CONDITIONED * max(scale, 1.0):
        raise NumericalError(f"viscosity fit is ill-conditioned (coefficient norm^2 {weight:.3e})",
                             achieved=weight)
    nu = complex(-np.vdot(coefficient, base) / weight)
    residual = float(np.sqrt(np.mean(np.abs(base + nu * coefficient) ** 2)))
    estimate = ViscosityEstimate(nu=nu, residual_at_nu=residual, n_fields=len(fields),
                                 cancellation=cancellation_viscosity(config))
    logger.info(f"fitted nu = {nu:.12g}, relative error {estimate.relative_error:.2e}")
    return estimate
