"""
Main Report Runner
Reproduces the information-density figures as CSV or SVG, runs the
verification suite and integrates the Schrodinger equation
"""

import argparse
import logging
import math
import sys
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from information.energy import energy_info_surface, energy_per_info
from information.number import number_info_curve
from information.spatial import density_curve, info_density, to_bits
from oscillator.coherent import coherent_state, ho_potential
from oscillator.errors import ConfigurationError, InputError, NumericalError, OutputError
from oscillator.grid import Grid1D, SampledComplexField
from verification.evolution import evolve
from verification.suite import run_verification
from .run_config import FORMATS, RunConfig, build_run_config
from .writers import heatmap_figure, line_figure, write_csv, write_svg

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
FAR_FIELD_XT = 1e3

# per-command defaults between the RunConfig defaults and the config file
COMMAND_DEFAULTS: Dict[str, Dict] = {
    'surface': {'alpha': 5.0},
    'energy': {'alpha': 20.0},
    'evolve': {'alpha': 5.0, 'n_points': 2048},
}


def _banner(run: RunConfig, title: str, lines: Sequence[str] = ()):
    if run.quiet:
        return
    print(f"{title}")
    print(f"{'=' * 60}")
    for line in lines:
        print(line)
    print(f"{'=' * 60}")


def _in_unit(run: RunConfig, nats):
    """Information in the display unit: nats, or bits under --bits"""
    return to_bits(nats) if run.bits else nats


def _times(run: RunConfig) -> np.ndarray:
    return np.linspace(run.t_min, run.t_max, run.n_times)


def _emit(run: RunConfig, frame: pd.DataFrame, figure: Callable) -> int:
    path = run.output_path()
    if run.format == 'svg':
        write_svg(figure(), path)
    else:
        write_csv(frame, path, run.header())
    if not run.quiet:
        print(f"\n✅ Results saved to {path}")
    return EXIT_OK


def cmd_density(run: RunConfig) -> int:
    """Information density against y = x/a - cos(omega t), one column per alpha"""
    configs = [run.oscillator()] if run.si else [run.oscillator(a) for a in run.alphas]
    _banner(run, "Spatial information density",
            [f"alphas: {', '.join(f'{c.alpha:g}' for c in configs)}", f"t: {run.t:g}"])
    columns: Dict[str, np.ndarray] = {}
    y = None
    for config in configs:
        centre = math.cos(config.angular_frequency * run.t)
        grid = Grid1D(centre - run.half_width, centre + run.half_width, run.n_points)
        curve = density_curve(config, run.t, grid)
        y = curve.y if y is None else y
        columns[f"alpha_{config.alpha:g}"] = _in_unit(run, curve.density)
    frame = pd.DataFrame({'y': y, **columns})
    unit = 'bits' if run.bits else 'nats'
    return _emit(run, frame, lambda: line_figure(y, columns, 'y = x/a - cos(wt)', f"dI/d(x/a) [{unit}]"))


def cmd_surface(run: RunConfig) -> int:
    """Information density over (x/a, t)"""
    config = run.oscillator()
    grid = Grid1D(-run.xt_max, run.xt_max, run.n_points)
    times = _times(run)
    _banner(run, "Spatial information surface", [f"alpha: {config.alpha:g}", f"times: {len(times)}"])
    values = _in_unit(run, np.stack([np.asarray(info_density(config, grid.nodes, t)) for t in times]))
    tt, xx = np.meshgrid(times, grid.nodes, indexing='ij')
    frame = pd.DataFrame({'xt': xx.ravel(), 't': tt.ravel(), 'density': values.ravel()})
    unit = 'bits' if run.bits else 'nats'
    return _emit(run, frame, lambda: heatmap_figure(grid.nodes, times, values, 'x/a', 't',
                                                    f"dI/d(x/a) [{unit}]", f"alpha = {config.alpha:g}"))


def cmd_number(run: RunConfig) -> int:
    """Number-state information and its derivative against <n>"""
    means = np.linspace(run.mean_min, run.mean_max, run.n_means)
    _banner(run, "Number-state information", [f"<n> in [{run.mean_min:g}, {run.mean_max:g}]"])
    frame = number_info_curve(means, run.tol)
    frame[['information', 'derivative']] = _in_unit(run, frame[['information', 'derivative']])
    curves = {'I': frame['information'].to_numpy(), 'dI/d<n>': frame['derivative'].to_numpy()}
    return _emit(run, frame, lambda: line_figure(means, curves, '<n>', 'bits' if run.bits else 'nats'))


def cmd_energy(run: RunConfig) -> int:
    """dE/dI over (x/a, t), in units of hbar*omega unless --si"""
    config = run.oscillator()
    grid = Grid1D(-run.xt_max, run.xt_max, run.n_points)
    times = _times(run)
    _banner(run, "Energy per unit information", [f"alpha: {config.alpha:g}", f"times: {len(times)}"])
    scale = (config.quantum if run.si else 1.0) / _in_unit(run, 1.0)
    surface = energy_info_surface(config, grid, times)
    frame = surface.to_frame()
    frame['ratio'] *= scale
    frame['far_field'] = np.asarray(energy_per_info(config, FAR_FIELD_XT, frame['t'].to_numpy())) * scale
    unit = 'energy' if run.si else 'hbar omega'
    return _emit(run, frame, lambda: heatmap_figure(grid.nodes, times, surface.values * scale, 'x/a', 't',
                                                    f"dE/dI [{unit}]", f"alpha = {config.alpha:g}"))


def cmd_verify(run: RunConfig) -> int:
    """Run the verification suite; exit 0 only when every check passes"""
    if run.format == 'svg':
        raise ConfigurationError("verify produces a text report and optional CSV, not SVG")
    _banner(run, "Verification suite", [f"viscosity perturbation: {run.nu_perturbation:g}"])
    # --tol sets the series truncation unless a tol_series key overrides it
    tolerances = {'series': run.tol, **run.tolerances}
    report = run_verification(tolerances, nu_perturbation=run.nu_perturbation, verbose=not run.quiet)
    for check in report.checks:
        print(f"{check.status:<4}  {check.name:<38} value={check.value:.6e}  bound={check.bound:.3e}  "
              f"{check.detail}")
    failures = report.failures
    print(f"\n{len(report.checks)} checks, {len(failures)} failed")
    if run.out:
        write_csv(report.to_frame(), run.output_path(), run.header())
    return EXIT_OK if report.all_passed else EXIT_FAILED


def cmd_evolve(run: RunConfig) -> int:
    """Evolve the coherent state and record norm, <x/a> and overlap with the exact state"""
    config = run.oscillator()
    w = config.angular_frequency
    dt = run.dt if run.dt is not None else 2.0 * math.pi / (w * run.steps_per_period)
    steps = int(round(run.periods * 2.0 * math.pi / (w * dt)))
    grid = Grid1D.around_trajectory(config, run.n_points, dt=dt)
    _banner(run, "Coherent state evolution",
            [f"alpha: {config.alpha:g}", f"nodes: {run.n_points}", f"steps: {steps:,}", f"scheme: {run.scheme}"])
    initial = SampledComplexField(grid=grid, values=coherent_state(config, grid.nodes, 0.0)[np.newaxis],
                                  times=np.array([0.0]))
    result = evolve(initial, ho_potential(config), dt, steps, config, scheme=run.scheme,
                    output_every=run.output_every, verbose=not run.quiet)
    if not run.quiet:
        print(f"  ✓ Norm drift: {result.norm_drift:.3e}")
        print(f"  ✓ Final overlap: {result.final_overlap:.9f}")
        print(f"  ✓ Max |<x/a> - cos(wt)|: {result.max_position_error:.3e}")
    frame = result.to_frame()
    curves = {'<x/a>': result.mean_positions, 'cos(wt)': np.cos(w * result.times)}
    return _emit(run, frame, lambda: line_figure(result.times, curves, 't', 'x/a'))


HANDLERS: Dict[str, Callable[[RunConfig], int]] = {
    'density': cmd_density,
    'surface': cmd_surface,
    'number': cmd_number,
    'energy': cmd_energy,
    'verify': cmd_verify,
    'evolve': cmd_evolve,
}


def _alpha_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', type=str, default=None, help='Output file path')
    common.add_argument('--format', choices=FORMATS, default=None, help='Output format')
    common.add_argument('--config', type=str, default=None, help='key=value or YAML config file')
    common.add_argument('--bits', action='store_true', default=None, help='Information in bits instead of nats')
    common.add_argument('--tol', type=float, default=None,
                        help='Number-state series truncation tolerance (number, verify)')
    common.add_argument('--si', action='store_true', default=None,
                        help='Energies in physical units (needs --mass --omega --amplitude --planck)')
    common.add_argument('--mass', type=float, default=None)
    common.add_argument('--omega', dest='angular_frequency', type=float, default=None)
    common.add_argument('--amplitude', type=float, default=None)
    common.add_argument('--planck', type=float, default=None, help='Reduced Planck constant')
    common.add_argument('--quiet', action='store_true', default=None, help='Suppress progress output')
    common.add_argument('--log-level', dest='log_level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])

    parser = argparse.ArgumentParser(prog='qcinfo',
                                     description='Information density of the coherent quantum oscillator')
    sub = parser.add_subparsers(dest='command', required=True)

    density = sub.add_parser('density', parents=[common], help='Density curves for several alphas')
    density.add_argument('--alphas', type=_alpha_list, default=None, help='Comma-separated alpha values')
    density.add_argument('--t', type=float, default=None)
    density.add_argument('--half-width', dest='half_width', type=float, default=None)
    density.add_argument('--n-points', dest='n_points', type=int, default=None)

    for name, text in (('surface', 'Density surface over (x/a, t)'), ('energy', 'dE/dI surface over (x/a, t)')):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('--alpha', type=float, default=None)
        p.add_argument('--xt-max', dest='xt_max', type=float, default=None)
        p.add_argument('--n-points', dest='n_points', type=int, default=None)
        p.add_argument('--t-min', dest='t_min', type=float, default=None)
        p.add_argument('--t-max', dest='t_max', type=float, default=None)
        p.add_argument('--n-times', dest='n_times', type=int, default=None)

    number = sub.add_parser('number', parents=[common], help='Number-state information curve')
    number.add_argument('--mean-min', dest='mean_min', type=float, default=None)
    number.add_argument('--mean-max', dest='mean_max', type=float, default=None)
    number.add_argument('--n-means', dest='n_means', type=int, default=None)

    verify = sub.add_parser('verify', parents=[common], help='Run the verification suite')
    verify.add_argument('--nu-perturbation', dest='nu_perturbation', type=float, default=None,
                        help='Relative viscosity perturbation (negative control)')

    ev = sub.add_parser('evolve', parents=[common], help='Evolve the coherent state')
    ev.add_argument('--alpha', type=float, default=None)
    ev.add_argument('--periods', type=float, default=None)
    ev.add_argument('--n-points', dest='n_points', type=int, default=None)
    ev.add_argument('--dt', type=float, default=None)
    ev.add_argument('--steps-per-period', dest='steps_per_period', type=int, default=None)
    ev.add_argument('--output-every', dest='output_every', type=int, default=None)
    ev.add_argument('--scheme', choices=['numerov', 'standard'], default=None)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ('command', 'config')}
    try:
        run = build_run_config(args.command, flags, args.config, COMMAND_DEFAULTS.get(args.command))
    except (ConfigurationError, InputError) as exc:
        print(f"qcinfo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qcinfo: error: cannot read config {args.config}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO

    logging.basicConfig(level=getattr(logging, run.log_level.upper(), logging.WARNING),
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        return HANDLERS[run.command](run)
    except (ConfigurationError, InputError) as exc:
        print(f"qcinfo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutputError as exc:
        print(f"qcinfo: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericalError as exc:
        print(f"qcinfo: numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
