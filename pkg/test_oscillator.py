"""
Test Suite for the oscillator data model, grids and analytic fields
"""

import math
import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from oscillator.config import DimensionlessCoordinate, OscillatorConfig, dissipation_ratio
from oscillator.coherent import (
    classical_trajectory,
    coherent_log_derivatives,
    coherent_state,
    harmonic_potential,
    ho_potential,
    phase_gradient_at_peak,
    probability_density,
    trajectory_offset,
)
from oscillator.errors import DomainError, InputError, QCInfoError
from oscillator.grid import Grid1D, SampledComplexField, central_first, central_second, discrete_norm
from fields import BandLimitedField, CoherentField, GroundStateField, PhaseShiftedField, PlaneWaveField


class TestOscillatorConfig(unittest.TestCase):
    """Test physical parameters and derived scales"""

    def test_unit_scales(self):
        """m = omega = hbar = a = 1 gives alpha = 1 and lambda_db = 1"""
        config = OscillatorConfig()
        self.assertEqual(config.alpha, 1.0)
        self.assertEqual(config.de_broglie_wavelength, 1.0)
        self.assertEqual(config.quantum, 1.0)

    def test_from_alpha(self):
        for alpha in (0.5, 1.0, 7.0):
            for planck in (1.0, 0.25):
                config = OscillatorConfig.from_alpha(alpha, planck=planck)
                self.assertAlmostEqual(config.alpha, alpha, places=12)

    def test_alpha_from_physical_values(self):
        config = OscillatorConfig(mass=2.0, angular_frequency=8.0, amplitude=0.5, planck=4.0)
        self.assertAlmostEqual(config.alpha, 0.5 * math.sqrt(2.0 * 8.0 / 4.0))
        self.assertAlmostEqual(config.de_broglie_wavelength, 4.0 / (2.0 * 0.5 * 8.0))

    def test_invalid_parameters(self):
        """Non-positive or non-finite parameters are rejected"""
        for kwargs in ({'mass': 0.0}, {'amplitude': -1.0}, {'planck': float('nan')},
                       {'angular_frequency': float('inf')}):
            with self.assertRaises(InputError):
                OscillatorConfig(**kwargs)

    def test_error_hierarchy(self):
        self.assertTrue(issubclass(DomainError, InputError))
        self.assertTrue(issubclass(InputError, QCInfoError))
        self.assertTrue(issubclass(InputError, ValueError))

    def test_to_dict(self):
        data = OscillatorConfig.from_alpha(3.0).to_dict()
        self.assertIn('alpha', data)
        self.assertAlmostEqual(data['alpha'], 3.0)

    def test_dissipation_ratio(self):
        """lambda_db / L"""
        config = OscillatorConfig.from_alpha(2.0)
        self.assertAlmostEqual(dissipation_ratio(config, 1.0), 0.5)
        self.assertAlmostEqual(dissipation_ratio(config, 10.0), 0.05)
        with self.assertRaises(InputError):
            dissipation_ratio(config, 0.0)


class TestCoherentState(unittest.TestCase):
    """Test the closed-form coherent state"""

    def setUp(self):
        self.config = OscillatorConfig.from_alpha(3.0)

    def test_trajectory(self):
        self.assertAlmostEqual(classical_trajectory(self.config, 0.0), 1.0)
        self.assertAlmostEqual(classical_trajectory(self.config, math.pi), -1.0)
        self.assertAlmostEqual(trajectory_offset(self.config, 0.25, math.pi / 2), 0.25)

    def test_coordinate(self):
        coord = DimensionlessCoordinate(xt=0.3, t=1.1)
        self.assertAlmostEqual(coord.y(self.config), 0.3 - math.cos(1.1))
        self.assertAlmostEqual(trajectory_offset(self.config, coord), coord.y(self.config))

    def test_normalized(self):
        """Unit norm over x/a at several times"""
        grid = Grid1D.around_trajectory(self.config, 4001)
        for t in (0.0, 0.7, 2.0):
            norm = discrete_norm(coherent_state(self.config, grid.nodes, t), grid.spacing)
            self.assertAlmostEqual(norm, 1.0, places=10)

    def test_density(self):
        """|psi|^2 equals the Gaussian density, maximal on the trajectory"""
        xt = np.linspace(-2.0, 2.0, 81)
        assert_allclose(np.abs(coherent_state(self.config, xt, 0.4)) ** 2,
                        probability_density(self.config, xt, 0.4), rtol=1e-12)
        peak = probability_density(self.config, math.cos(0.4), 0.4)
        self.assertAlmostEqual(peak, 3.0 / math.sqrt(math.pi))

    def test_density_peak_follows_trajectory(self):
        """argmax of |psi|^2 sits on cos(wt) to within one node"""
        grid = Grid1D(-1.5, 1.5, 30001)
        for t in np.linspace(0.0, 2.0 * math.pi, 9):
            density = probability_density(self.config, grid.nodes, t)
            self.assertLessEqual(abs(grid.nodes[np.argmax(density)] - math.cos(t)), grid.spacing)

    def test_log_derivatives(self):
        """Closed-form derivatives match centered differences"""
        xt, t, step = 0.6, 0.9, 1e-6
        d_x, d_t, d_xx = coherent_log_derivatives(self.config, xt, t)
        psi = coherent_state(self.config, xt, t)
        fd_x = (coherent_state(self.config, xt + step, t) - coherent_state(self.config, xt - step, t)) / (2 * step)
        fd_t = (coherent_state(self.config, xt, t + step) - coherent_state(self.config, xt, t - step)) / (2 * step)
        self.assertAlmostEqual(abs(fd_x / psi - d_x), 0.0, places=5)
        self.assertAlmostEqual(abs(fd_t / psi - d_t), 0.0, places=5)
        self.assertAlmostEqual(d_xx, -9.0)

    def test_phase_gradient_at_peak(self):
        for t in (0.0, 0.5, 2.5):
            self.assertAlmostEqual(phase_gradient_at_peak(self.config, t), -9.0 * math.sin(t), places=12)

    def test_potential(self):
        """U = hbar omega alpha^2 (x/a)^2 / 2 in default units"""
        self.assertAlmostEqual(harmonic_potential(self.config, 1.0), 4.5)
        assert_allclose(ho_potential(self.config)(np.array([0.0, 2.0])), [0.0, 18.0])


class TestGrid(unittest.TestCase):
    """Test grids, sampled fields and stencils"""

    def test_spacing_and_refinement(self):
        grid = Grid1D(-1.0, 1.0, 201, dt=0.01)
        self.assertAlmostEqual(grid.spacing, 0.01)
        fine = grid.refined()
        self.assertEqual(fine.n_points, 401)
        self.assertAlmostEqual(fine.spacing, 0.005)
        self.assertAlmostEqual(fine.dt, 0.005)

    def test_with_spacing(self):
        grid = Grid1D.with_spacing(-9.0, 9.0, 0.01)
        self.assertEqual(grid.n_points, 1801)
        self.assertAlmostEqual(grid.spacing, 0.01)

    def test_around_trajectory(self):
        grid = Grid1D.around_trajectory(OscillatorConfig.from_alpha(4.0), 101)
        self.assertAlmostEqual(grid.xt_max, 3.0)
        self.assertAlmostEqual(grid.xt_min, -3.0)

    def test_invalid_grids(self):
        with self.assertRaises(InputError):
            Grid1D(0.0, 1.0, 2)
        with self.assertRaises(InputError):
            Grid1D(1.0, 0.0, 11)
        with self.assertRaises(InputError):
            Grid1D(0.0, 1.0, 11, dt=0.0)

    def test_sampled_field_shapes(self):
        grid = Grid1D(0.0, 1.0, 11)
        with self.assertRaises(InputError):
            SampledComplexField(grid=grid, values=np.ones(10))
        with self.assertRaises(InputError):
            SampledComplexField(grid=grid, values=np.ones(11), times=np.array([0.0]))
        with self.assertRaises(InputError):
            SampledComplexField(grid=grid, values=np.full(11, np.nan))
        field = SampledComplexField(grid=grid, values=np.ones((3, 11)), times=np.array([0.0, 0.1, 0.2]))
        self.assertEqual(field.n_slices, 3)
        self.assertAlmostEqual(field.dt, 0.1)

    def test_stencils(self):
        """Centered differences are exact on quadratics"""
        x = np.linspace(0.0, 1.0, 11)
        h = x[1] - x[0]
        assert_allclose(central_first(x ** 2, h), 2.0 * x[1:-1], atol=1e-12)
        assert_allclose(central_second(x ** 2, h), 2.0, atol=1e-10)


class TestFields(unittest.TestCase):
    """Test analytic fields and their jets"""

    def _check_jet(self, field, xt, t, step=1e-6, places=5):
        jet = field.jet(xt, t)
        assert_allclose(jet.psi, field.value(xt, t), rtol=1e-12)
        fd_x = (field.value(xt + step, t) - field.value(xt - step, t)) / (2 * step)
        fd_t = (field.value(xt, t + step) - field.value(xt, t - step)) / (2 * step)
        assert_allclose(jet.psi_x, fd_x, atol=10 ** -places)
        assert_allclose(jet.psi_t, fd_t, atol=10 ** -places)

    def test_coherent_jet(self):
        xt = np.linspace(-1.5, 1.5, 31)
        self._check_jet(CoherentField(OscillatorConfig.from_alpha(2.0)), xt, 0.3)

    def test_ground_state_jet(self):
        xt = np.linspace(-1.5, 1.5, 31)
        self._check_jet(GroundStateField(OscillatorConfig.from_alpha(1.5)), xt, 1.2)

    def test_band_limited_jet(self):
        field = BandLimitedField.random(np.random.default_rng(3))
        self._check_jet(field, np.linspace(0.0, 2 * math.pi, 64), 0.5, places=4)

    def test_phase_shift(self):
        """Shifting by exp(-i Omega t) adds -i Omega psi to psi_t"""
        base = CoherentField(OscillatorConfig())
        shifted = PhaseShiftedField(base, 0.3)
        xt = np.linspace(-1.0, 1.0, 11)
        assert_allclose(np.abs(shifted.value(xt, 0.8)), np.abs(base.value(xt, 0.8)))
        self._check_jet(shifted, xt, 0.8)

    def test_band_limited_stays_off_zero(self):
        """Unit offset and amplitudes summing to 0.45 keep |psi| >= 0.55"""
        xt = np.linspace(0.0, 2 * math.pi, 512)
        for field in BandLimitedField.random_set(5, seed=1):
            self.assertGreaterEqual(np.abs(field.value(xt, 0.7)).min(), 0.55 - 1e-12)

    def test_band_limited_validation(self):
        with self.assertRaises(InputError):
            BandLimitedField([1.0], [1.0], [0.0], offset=1.0)
        with self.assertRaises(InputError):
            BandLimitedField([0.1, 0.1], [1.0], [0.0])

    def test_random_set_reproducible(self):
        a = BandLimitedField.random_set(3, seed=42)
        b = BandLimitedField.random_set(3, seed=42)
        for fa, fb in zip(a, b):
            assert_allclose(fa.amplitudes, fb.amplitudes)

    def test_plane_wave(self):
        wave = PlaneWaveField(wavenumber=2.0, frequency=1.5)
        xt = np.linspace(0.0, 1.0, 5)
        self._check_jet(wave, xt, 0.2)
        assert_allclose(wave.jet(xt, 0.2).psi_xx, -4.0 * wave.value(xt, 0.2))

    def test_sampling(self):
        field = CoherentField(OscillatorConfig())
        grid = Grid1D(-2.0, 2.0, 41, dt=0.01)
        sampled = field.slices(grid, 0.5)
        self.assertEqual(sampled.values.shape, (3, 41))
        assert_allclose(sampled.times, [0.49, 0.5, 0.51])
        with self.assertRaises(InputError):
            field.slices(Grid1D(-2.0, 2.0, 41), 0.5)
        self.assertEqual(field.describe()['name'], 'Coherent')


def run_tests():
    """Run all tests"""
    unittest.main()


if __name__ == '__main__':
    run_tests()
