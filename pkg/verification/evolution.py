"""
Unitary Time Evolution
Cayley (implicit trapezoidal) propagation of the Schrodinger equation on a
Dirichlet grid, one tridiagonal complex solve per step
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd
from scipy import linalg
from tqdm import tqdm

from oscillator.coherent import Potential, coherent_state, ho_potential
from oscillator.config import OscillatorConfig
from oscillator.errors import ConfigurationError, NumericalError
from oscillator.grid import Grid1D, SampledComplexField, discrete_norm

logger = logging.getLogger(__name__)

MAX_PHASE_STEP = 1e-2           # omega * dt
NORM_DRIFT_PER_STEP = 1e-12
BOUNDARY_MARGIN = 8.0           # in units of 1/alpha beyond the turning points
SCHEMES = ('numerov', 'standard')


@dataclass
class EvolutionResult:
    """Diagnostics recorded at each output time"""
    times: np.ndarray
    norms: np.ndarray
    mean_positions: np.ndarray      # <x/a>
    overlaps: np.ndarray            # |<psi_exact, psi>| h against the coherent state
    final: SampledComplexField
    config: OscillatorConfig

    @property
    def norm_drift(self) -> float:
        return float(np.max(np.abs(self.norms - self.norms[0])))

    @property
    def final_overlap(self) -> float:
        return float(self.overlaps[-1])

    @property
    def max_position_error(self) -> float:
        """Largest |<x/a> - cos(omega t)| over the output times"""
        classical = np.cos(self.config.angular_frequency * self.times)
        return float(np.max(np.abs(self.mean_positions - classical)))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            't': self.times,
            'norm': self.norms,
            'mean_xt': self.mean_positions,
            'overlap': self.overlaps,
        })


class Evolution:
    """
    Propagates one wavefunction in tau = omega t with

        H/(hbar omega) = -(1/(2 alpha^2)) d^2/d(x/a)^2 + U/(hbar omega)

    The 'numerov' scheme uses the compact fourth-order Laplacian M^-1 D2/h^2
    with M = I + D2/12; multiplying the Cayley system by M keeps it
    tridiagonal. The 'standard' scheme uses D2/h^2. Both are exactly
    unitary. An instance owns its state and must be advanced from one
    caller at a time.
    """

    def __init__(self,
                 initial: SampledComplexField,
                 config: OscillatorConfig,
                 potential: Optional[Potential] = None,
                 dt: Optional[float] = None,
                 scheme: str = 'numerov'):
        """
        Args:
            initial: Starting wavefunction (one slice) on the Dirichlet grid
            config: Oscillator parameters
            potential: U(x/a) in energy units, defaults to the harmonic potential
            dt: Time step, defaults to the grid's
            scheme: 'numerov' or 'standard'

        Raises:
            ConfigurationError: if omega dt > 1e-2, the boundaries sit closer
                than 8/alpha to the turning points, or the scheme is unknown
        """
        grid = initial.grid
        dt = grid.dt if dt is None else dt
        if dt is None or not dt > 0:
            raise ConfigurationError("evolution needs a positive time step")
        if config.angular_frequency * dt > MAX_PHASE_STEP:
            raise ConfigurationError(
                f"omega*dt = {config.angular_frequency * dt:.3e} exceeds the accuracy guard {MAX_PHASE_STEP}")
        reach = 1.0 + BOUNDARY_MARGIN / config.alpha
        if grid.xt_min > -reach + 1e-12 * reach or grid.xt_max < reach - 1e-12 * reach:
            raise ConfigurationError(
                f"Dirichlet boundaries must lie beyond +-{reach:.6g} in x/a, grid spans "
                f"[{grid.xt_min:.6g}, {grid.xt_max:.6g}]")
        if scheme not in SCHEMES:
            raise ConfigurationError(f"unknown scheme {scheme!r}; use one of {SCHEMES}")

        self.config = config
        self.grid = grid
        self.dt = dt
        self.scheme = scheme
        self.potential = ho_potential(config) if potential is None else potential
        self.t0 = float(initial.times[0]) if initial.times is not None else 0.0
        self.t = self.t0
        self.steps_taken = 0

        psi = np.array(initial.slice(0), dtype=complex)
        psi[0] = psi[-1] = 0.0
        self.psi = psi
        self.norm = discrete_norm(psi, grid.spacing)
        self._build_operators()

    @classmethod
    def for_coherent_state(cls,
                           config: OscillatorConfig,
                           n_points: int = 2048,
                           steps_per_period: int = 8000,
                           scheme: str = 'numerov') -> 'Evolution':
        """Coherent state at t = 0 on a grid reaching 8/alpha beyond the turning points"""
        dt = 2.0 * math.pi / (config.angular_frequency * steps_per_period)
        grid = Grid1D.around_trajectory(config, n_points, margin=BOUNDARY_MARGIN, dt=dt)
        initial = SampledComplexField(grid=grid, values=coherent_state(config, grid.nodes, 0.0)[np.newaxis],
                                      times=np.array([0.0]))
        return cls(initial, config, scheme=scheme)

    def _build_operators(self):
        h = self.grid.spacing
        dtau = self.config.angular_frequency * self.dt
        v = np.asarray(self.potential(self.grid.nodes), dtype=float)[1:-1] / self.config.quantum
        kappa = 1.0 / (2.0 * self.config.alpha ** 2 * h ** 2)
        if self.scheme == 'numerov':
            m_off, m_diag = 1.0 / 12.0, 10.0 / 12.0
        else:
            m_off, m_diag = 0.0, 1.0
        half = 0.5j * dtau

        # (M + i dtau/2 (K + M V)) psi' = (M - i dtau/2 (K + M V)) psi, K = -kappa D2
        n = len(v)
        banded = np.zeros((3, n), dtype=complex)
        off = m_off + half * (-kappa + m_off * v)
        banded[0, 1:] = off[1:]
        banded[1] = m_diag + half * (2.0 * kappa + m_diag * v)
        banded[2, :-1] = off[:-1]
        self._banded = banded
        self._v = v
        self._kappa = kappa
        self._m = (m_off, m_diag)
        self._half = half

    def _rhs(self, psi: np.ndarray) -> np.ndarray:
        m_off, m_diag = self._m
        inner = psi[1:-1]
        left, right = psi[:-2], psi[2:]
        vpsi = self._v * inner
        vpsi_full = np.zeros_like(psi)
        vpsi_full[1:-1] = vpsi
        m_psi = m_off * (left + right) + m_diag * inner
        k_psi = self._kappa * (2.0 * inner - left - right)
        mv_psi = m_off * (vpsi_full[:-2] + vpsi_full[2:]) + m_diag * vpsi
        return m_psi - self._half * (k_psi + mv_psi)

    def step(self):
        """Advance by one time step"""
        try:
            inner = linalg.solve_banded((1, 1), self._banded, self._rhs(self.psi),
                                        overwrite_b=True, check_finite=False)
        except linalg.LinAlgError as exc:
            raise NumericalError(f"tridiagonal solve failed at t={self.t:.6g}: {exc}") from exc
        if not np.all(np.isfinite(inner)):
            raise NumericalError(f"non-finite wavefunction at t={self.t:.6g}")

        self.psi[1:-1] = inner
        norm = discrete_norm(self.psi, self.grid.spacing)
        drift = abs(norm - self.norm) / self.norm
        if drift > NORM_DRIFT_PER_STEP:
            raise NumericalError(f"norm drift {drift:.3e} in one step at t={self.t:.6g}", achieved=drift)
        self.norm = norm
        self.steps_taken += 1
        self.t = self.t0 + self.steps_taken * self.dt

    def mean_position(self) -> float:
        density = np.abs(self.psi) ** 2
        return float(np.sum(self.grid.nodes * density) / np.sum(density))

    def overlap_with_coherent(self) -> float:
        exact = coherent_state(self.config, self.grid.nodes, self.t)
        return float(abs(np.vdot(exact, self.psi)) * self.grid.spacing)

    def run(self, steps: int, output_every: int = 1, verbose: bool = False) -> EvolutionResult:
        """
        Advance a number of steps, recording diagnostics every output_every steps

        Args:
            steps: Number of time steps
            output_every: Diagnostic cadence in steps (the initial and final states are always recorded)
            verbose: Show a progress bar
        """
        if steps < 0 or output_every < 1:
            raise ConfigurationError("steps must be >= 0 and output_every >= 1")
        times: List[float] = []
        norms: List[float] = []
        positions: List[float] = []
        overlaps: List[float] = []

        def record():
            times.append(self.t)
            norms.append(self.norm)
            positions.append(self.mean_position())
            overlaps.append(self.overlap_with_coherent())

        record()
        for i in tqdm(range(1, steps + 1), desc="evolve", disable=not verbose):
            self.step()
            if i % output_every == 0 or i == steps:
                record()
                logger.debug(f"t={self.t:.6f} norm={self.norm:.15f} <x/a>={positions[-1]:.9f}")

        final = SampledComplexField(grid=self.grid, values=self.psi[np.newaxis].copy(), times=np.array([self.t]))
        return EvolutionResult(times=np.array(times), norms=np.array(norms),
                               mean_positions=np.array(positions), overlaps=np.array(overlaps),
                               final=final, config=self.config)


def evolve(initial: SampledComplexField,
           potential: Optional[Potential],
           dt: float,
           steps: int,
           config: OscillatorConfig,
           scheme: str = 'numerov',
           output_every: int = 1,
           verbose: bool = False) -> EvolutionResult:
    """Propagate initial for the given number of steps; see Evolution"""
    return Evolution(initial, config, potential=potential, dt=dt, scheme=scheme).run(
        steps, output_every=output_every, verbose=verbose)


def ehrenfest_residual(result: EvolutionResult) -> float:
    """
    Largest |d^2<x/a>/dtau^2 + <x/a>| from second differences of the recorded
    positions (uniformly spaced output times)
    """
    if len(result.times) < 3:
        return float('nan')
    w = result.config.angular_frequency
    dtau = w * (result.times[1] - result.times[0])
    x = result.mean_positions
    accel = (x[2:] - 2.0 * x[1:-1] + x[:-2]) / dtau ** 2
    return float(np.max(np.abs(accel + x[1:-1])))
