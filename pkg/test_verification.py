"""
Test Suite for PDE residuals, unitary evolution and energy-gap checks
"""

import math
import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fields import BandLimitedField, CoherentField, GroundStateField, PhaseShiftedField, PlaneWaveField
from oscillator.coherent import ho_potential
from oscillator.config import OscillatorConfig
from oscillator.errors import ConfigurationError, InputError, NumericalError
from oscillator.grid import Grid1D, SampledComplexField
from verification.residuals import (
    ResidualReport,
    cancellation_viscosity,
    convergence_order,
    convergence_study,
    hj_action_from_wavefunction,
    hj_residual,
    identity_separation,
    nonlinear_term_residual,
    schrodinger_residual,
    transform_identity_residual,
    viscosity_fit,
)
from verification.evolution import Evolution, ehrenfest_residual, evolve
from verification.energy_gap import (
    coherent_gradient_check,
    delta_epsilon_average,
    massless_dual_residuals,
    on_trajectory_energy_gap,
)
from verification.suite import (
    DEFAULT_TOLERANCES,
    FAIL,
    PASS,
    Check,
    VerificationReport,
    check_localization,
    check_massless,
    check_number_information,
    check_transform_identity,
    run_verification,
)


class TestActionExtraction(unittest.TestCase):
    """Test S = (hbar/i) ln(psi) with phase unwrapping"""

    def setUp(self):
        self.config = OscillatorConfig()

    def test_plane_wave_action(self):
        """Real part grows by k h per node, imaginary part vanishes for |psi| = 1"""
        grid = Grid1D(0.0, 1.0, 101, dt=0.01)
        action = hj_action_from_wavefunction(PlaneWaveField(5.0).slices(grid, 0.2), self.config)
        assert_allclose(np.diff(action.values.real, axis=1), 0.05, atol=1e-12)
        assert_allclose(action.values.imag, 0.0, atol=1e-12)
        self.assertFalse(action.flagged.any())

    def test_unwrapped_across_branch_cut(self):
        """The phase keeps increasing past pi"""
        grid = Grid1D(0.0, 4.0 * math.pi, 401, dt=0.01)
        action = hj_action_from_wavefunction(PlaneWaveField(1.0).slices(grid, 0.0), self.config)
        self.assertAlmostEqual(action.values.real[1, -1] - action.values.real[1, 0], 4.0 * math.pi, places=10)

    def test_nodes_below_floor_flagged(self):
        grid = Grid1D(0.0, 1.0, 11, dt=0.1)
        values = np.ones((3, 11), dtype=complex)
        values[:, 5] = 0.0
        field = SampledComplexField(grid=grid, values=values, times=np.array([0.0, 0.1, 0.2]))
        action = hj_action_from_wavefunction(field, self.config)
        self.assertEqual(int(action.flagged.sum()), 3)
        self.assertTrue(np.all(np.isnan(action.values[:, 5])))
        report = hj_residual(action, None, cancellation_viscosity(self.config), self.config)
        self.assertEqual(report.flagged, 3)
        self.assertTrue(np.isfinite(report.max_abs))

    def test_vanishing_field(self):
        grid = Grid1D(0.0, 1.0, 11, dt=0.1)
        field = SampledComplexField(grid=grid, values=np.zeros((3, 11)), times=np.array([0.0, 0.1, 0.2]))
        with self.assertRaises(InputError):
            hj_action_from_wavefunction(field, self.config)

    def test_under_resolved_phase(self):
        """Adjacent phase jumps above pi/2 are refused"""
        grid = Grid1D(0.0, 1.0, 11, dt=0.01)
        with self.assertRaises(NumericalError):
            hj_action_from_wavefunction(PlaneWaveField(20.0).slices(grid, 0.0), self.config)


class TestResiduals(unittest.TestCase):
    """Test Schrodinger and Hamilton-Jacobi residuals"""

    def setUp(self):
        self.config = OscillatorConfig()
        self.potential = ho_potential(self.config)

    def test_cancellation_viscosity(self):
        self.assertEqual(cancellation_viscosity(self.config), 0.5j)
        self.assertEqual(cancellation_viscosity(OscillatorConfig(mass=2.0, planck=3.0)), 0.75j)

    def test_ground_state_residual(self):
        grid = Grid1D.with_spacing(-9.0, 9.0, 0.01, dt=1e-3)
        report = schrodinger_residual(GroundStateField(self.config).slices(grid, 0.3), self.potential, self.config)
        self.assertLess(report.max_abs, 1e-4)
        self.assertLessEqual(report.l2, report.max_abs)

    def test_coherent_residual_order(self):
        """Second order under halving of h and dt"""
        grid = Grid1D.with_spacing(-9.0, 9.0, 0.02, dt=1e-4)
        fine = convergence_study(lambda f: schrodinger_residual(f, self.potential, self.config),
                                 CoherentField(self.config), grid, 0.7)
        self.assertGreater(fine.order_estimate, 1.8)
        self.assertLess(fine.order_estimate, 2.2)
        self.assertLess(fine.max_abs, 1e-3)

    def test_non_solution_residual(self):
        """A plane wave off the free dispersion relation leaves hbar (omega - k^2/2) psi"""
        grid = Grid1D(0.0, 1.0, 101, dt=1e-3)
        report = schrodinger_residual(PlaneWaveField(1.0, frequency=3.0).slices(grid, 0.0), None, self.config)
        self.assertAlmostEqual(report.max_abs, 2.5, places=3)

    def test_hj_residual_exact_action(self):
        """Linear action on the free dispersion relation satisfies the HJ equation"""
        grid = Grid1D(0.0, 1.0, 101, dt=1e-3)
        action = hj_action_from_wavefunction(PlaneWaveField(2.0, frequency=2.0).slices(grid, 0.5), self.config)
        report = hj_residual(action, None, cancellation_viscosity(self.config), self.config)
        self.assertLess(report.max_abs, 1e-8)

    def test_hj_residual_coherent_state(self):
        """The cancellation viscosity leaves only truncation; nu = 0 leaves hbar omega / 2"""
        grid = Grid1D.with_spacing(-4.0, 4.0, 0.01, dt=1e-4)
        action = hj_action_from_wavefunction(CoherentField(self.config).slices(grid, 0.6), self.config)
        viscous = hj_residual(action, self.potential, cancellation_viscosity(self.config), self.config)
        self.assertLess(viscous.max_abs, 1e-6)
        inviscid = hj_residual(action, self.potential, 0.0, self.config)
        self.assertAlmostEqual(inviscid.max_abs, 0.5, places=6)
        self.assertAlmostEqual(inviscid.l2, 0.5, places=6)

    def test_too_few_slices(self):
        grid = Grid1D(0.0, 1.0, 11, dt=0.1)
        field = PlaneWaveField(1.0).sample(grid, [0.0, 0.1])
        with self.assertRaises(InputError):
            schrodinger_residual(field, None, self.config)

    def test_convergence_order(self):
        coarse = ResidualReport(max_abs=4e-4, l2=1e-4, h=0.02, dt=1e-3)
        fine = ResidualReport(max_abs=1e-4, l2=2.5e-5, h=0.01, dt=5e-4)
        self.assertAlmostEqual(convergence_order(coarse, fine), 2.0)
        self.assertAlmostEqual(fine.with_order(coarse).order_estimate, 2.0)
        self.assertTrue(math.isnan(convergence_order(coarse, ResidualReport(0.0, 0.0, 0.01, 5e-4))))


class TestTransformIdentity(unittest.TestCase):
    """Test the log-transform identity on smooth non-solutions"""

    def setUp(self):
        self.config = OscillatorConfig()
        self.grid = Grid1D(0.0, 2.0 * math.pi, 512, dt=1e-3)

    def test_identity_converges(self):
        """Second-order convergence, far below the separate residuals"""
        for field in BandLimitedField.random_set(3, seed=42):
            report = convergence_study(lambda f: transform_identity_residual(f, None, self.config),
                                       field, self.grid, 0.3)
            self.assertGreater(report.order_estimate, 1.8)
            self.assertLess(report.order_estimate, 2.2)
            self.assertGreater(identity_separation(report), 100.0)
            self.assertEqual(report.metadata['nu'], 0.5j)

    def test_wrong_viscosity_breaks_identity(self):
        """Doubling nu leaves an O(1) residual"""
        field = BandLimitedField.random_set(1, seed=42)[0]
        sampled = field.slices(self.grid, 0.3)
        exact = transform_identity_residual(sampled, None, self.config)
        perturbed = transform_identity_residual(sampled, None, self.config, nu=1.0j)
        self.assertGreater(perturbed.max_abs, 10.0 * exact.max_abs)

    def test_suite_negative_control(self):
        checks = check_transform_identity(dict(DEFAULT_TOLERANCES), nu_perturbation=0.05)
        self.assertEqual(checks[0].status, FAIL)
        checks = check_transform_identity(dict(DEFAULT_TOLERANCES))
        self.assertTrue(all(c.status == PASS for c in checks))


class TestViscosityFit(unittest.TestCase):
    """Test the least-squares viscosity"""

    def setUp(self):
        self.config = OscillatorConfig()
        self.grid = Grid1D(-3.0, 3.0, 301)

    def test_recovers_cancellation_value(self):
        fields = [CoherentField(OscillatorConfig.from_alpha(a)) for a in (0.7, 1.0, 1.5, 2.0)]
        estimate = viscosity_fit(fields, self.grid, 0.4, self.config, potential=ho_potential(self.config))
        self.assertLess(estimate.relative_error, 1e-9)
        self.assertAlmostEqual(estimate.nu, 0.5j, places=9)
        self.assertEqual(estimate.n_fields, 4)
        self.assertLess(estimate.residual_at_nu, 1e-9)

    def test_band_limited_fields(self):
        fields = BandLimitedField.random_set(4, seed=3)
        grid = Grid1D(0.0, 2.0 * math.pi, 256)
        estimate = viscosity_fit(fields, grid, 0.1, self.config)
        self.assertLess(estimate.relative_error, 1e-9)
        worse = nonlinear_term_residual(fields, grid, 0.1, estimate.nu * 1.01, self.config)
        self.assertGreater(worse, 10.0 * estimate.residual_at_nu)

    def test_plane_waves_ill_conditioned(self):
        """Plane waves have a linear log, leaving nu undetermined"""
        waves = [PlaneWaveField(1.0, 0.5), PlaneWaveField(2.0, 1.0), PlaneWaveField(3.0, 0.1)]
        with self.assertRaises(NumericalError):
            viscosity_fit(waves, self.grid, 0.0, self.config)

    def test_needs_three_fields(self):
        with self.assertRaises(InputError):
            viscosity_fit([CoherentField(self.config)] * 2, self.grid, 0.0, self.config)


class TestEvolution(unittest.TestCase):
    """Test the Cayley propagator"""

    def setUp(self):
        self.config = OscillatorConfig.from_alpha(2.0)

    def test_coherent_state_tracks_trajectory(self):
        evolution = Evolution.for_coherent_state(self.config, n_points=512, steps_per_period=2000)
        result = evolution.run(200, output_every=20)
        self.assertEqual(len(result.times), 11)
        self.assertAlmostEqual(result.times[-1], 200 * evolution.dt, places=12)
        self.assertLess(result.norm_drift, 1e-10)
        self.assertGreater(result.final_overlap, 0.999)
        self.assertLess(result.max_position_error, 1e-3)
        self.assertLess(ehrenfest_residual(result), 1e-3)
        self.assertEqual(list(result.to_frame().columns), ['t', 'norm', 'mean_xt', 'overlap'])

    def test_standard_scheme_unitary(self):
        evolution = Evolution.for_coherent_state(self.config, n_points=512, steps_per_period=2000,
                                                 scheme='standard')
        result = evolution.run(100, output_every=50)
        self.assertLess(result.norm_drift, 1e-10)

    def test_ground_state_stationary(self):
        grid = Grid1D.around_trajectory(self.config, 401)
        initial = GroundStateField(self.config).sample(grid, [0.0])
        result = evolve(initial, None, 1e-3, 100, self.config, output_every=25)
        self.assertLess(np.max(np.abs(result.mean_positions)), 1e-10)
        self.assertEqual(result.final.values.shape, (1, 401))

    def test_guards(self):
        grid = Grid1D.around_trajectory(self.config, 401, dt=1e-3)
        initial = GroundStateField(self.config).sample(grid, [0.0])
        with self.assertRaises(ConfigurationError):
            Evolution(initial, self.config, dt=0.1)
        with self.assertRaises(ConfigurationError):
            Evolution(initial, self.config, scheme='leapfrog')
        narrow = Grid1D(-1.5, 1.5, 101, dt=1e-3)
        with self.assertRaises(ConfigurationError):
            Evolution(GroundStateField(self.config).sample(narrow, [0.0]), self.config)
        with self.assertRaises(ConfigurationError):
            Evolution(initial, self.config).run(-1)


class TestEnergyGap(unittest.TestCase):
    """Test the Hamilton-Jacobi energy defect"""

    def test_on_trajectory(self):
        """hbar omega / 2 whatever alpha and t"""
        for alpha, t in ((3.0, 0.9), (0.5, 2.0), (12.0, 4.0)):
            terms = on_trajectory_energy_gap(OscillatorConfig.from_alpha(alpha), t)
            self.assertAlmostEqual(terms.total, 0.5, places=10)
        terms = on_trajectory_energy_gap(OscillatorConfig.from_alpha(3.0), 0.0)
        self.assertAlmostEqual(terms.time_derivative, 5.0)
        self.assertAlmostEqual(terms.kinetic, 0.0)
        self.assertAlmostEqual(terms.potential, 4.5)

    def test_quantum_average_vanishes(self):
        config = OscillatorConfig.from_alpha(1.0)
        value = delta_epsilon_average(CoherentField(config), ho_potential(config), config, t=0.3)
        self.assertAlmostEqual(value, 0.0, places=8)
        value = delta_epsilon_average(CoherentField(config), ho_potential(config), config, t=0.3,
                                      method='finite_difference')
        self.assertAlmostEqual(value, 0.0, delta=1e-4)

    def test_phase_shift_moves_average(self):
        """exp(-i Omega t) adds hbar Omega"""
        config = OscillatorConfig.from_alpha(1.0)
        shifted = PhaseShiftedField(CoherentField(config), 0.3)
        value = delta_epsilon_average(shifted, ho_potential(config), config, t=0.5)
        self.assertAlmostEqual(value, 0.3, places=8)

    def test_requires_normalized_field(self):
        config = OscillatorConfig()
        with self.assertRaises(InputError):
            delta_epsilon_average(PlaneWaveField(1.0), ho_potential(config), config)
        with self.assertRaises(InputError):
            delta_epsilon_average(CoherentField(config), ho_potential(config), config, method='spectral')

    def test_gradient_check(self):
        self.assertLess(coherent_gradient_check(count=50), 1e-8)

    def test_massless_duals(self):
        config = OscillatorConfig()
        on_shell = massless_dual_residuals(2.0, [0.0, 2.0], config, x=[1.0, 0.5], t=0.7)
        self.assertAlmostEqual(on_shell.particle, 0.0, places=12)
        self.assertAlmostEqual(on_shell.wave, 0.0, places=12)
        self.assertAlmostEqual(on_shell.de_broglie, 0.0, places=12)
        off_shell = massless_dual_residuals(2.0, [1.0], config)
        self.assertAlmostEqual(off_shell.particle, 3.0)
        self.assertAlmostEqual(off_shell.wave, 3.0)
        with self.assertRaises(InputError):
            massless_dual_residuals(1.0, [1.0, 0.0], config, x=[1.0])


class TestVerificationSuite(unittest.TestCase):
    """Test the check collection"""

    def test_quick_checks_pass(self):
        tol = dict(DEFAULT_TOLERANCES)
        for checks in (check_massless(tol), check_localization(tol), check_number_information(tol)):
            for check in checks:
                self.assertTrue(check.passed, f"{check.name}: {check.value} vs {check.bound}")

    def test_series_tolerance_used(self):
        """A much tighter series tolerance extends the sums and keeps every number check passing"""
        tol = dict(DEFAULT_TOLERANCES, series=1e-300)
        for check in check_number_information(tol):
            self.assertTrue(check.passed, f"{check.name}: {check.value} vs {check.bound}")
        with self.assertRaises(InputError):
            check_number_information(dict(DEFAULT_TOLERANCES, series=0.0))

    def test_report(self):
        report = VerificationReport([Check('a', 1.0, 2.0, PASS), Check('b', 3.0, 2.0, FAIL, 'too big')])
        self.assertFalse(report.all_passed)
        self.assertEqual([c.name for c in report.failures], ['b'])
        frame = report.to_frame()
        self.assertEqual(list(frame.columns), ['name', 'value', 'bound', 'status', 'detail'])
        self.assertEqual(len(frame), 2)

    def test_unknown_tolerance(self):
        with self.assertRaises(ConfigurationError):
            run_verification({'no_such_check': 1.0})


def run_tests():
    """Run all tests"""
    unittest.main()


if __name__ == '__main__':
    run_tests()
