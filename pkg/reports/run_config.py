"""
Run Configuration
Parameters of one CLI invocation, merged from built-in defaults, an
optional config file and command-line flags (later layers win)
"""

import configparser
import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

import yaml

from oscillator.config import OscillatorConfig
from oscillator.errors import ConfigurationError

COMMANDS = ('density', 'surface', 'number', 'energy', 'verify', 'evolve')
FORMATS = ('csv', 'svg')
TOLERANCE_PREFIX = 'tol_'

# keys that do not change the produced data and stay out of the echoed header
_NOT_ECHOED = {'command', 'out', 'config', 'quiet', 'log_level', 'tolerances'}


@dataclass
class RunConfig:
    """Effective parameters of one subcommand"""
    command: str
    alphas: List[float] = field(default_factory=lambda: [float(a) for a in range(1, 11)])
    alpha: float = 1.0
    t: float = 0.0
    t_min: float = 0.0
    t_max: float = 2.0 * math.pi
    n_times: int = 65
    half_width: float = 3.0           # density curves: |y| range
    xt_max: float = 2.0               # surfaces: |x/a| range
    n_points: int = 401
    mean_min: float = 0.01
    mean_max: float = 50.0
    n_means: int = 500
    periods: float = 1.0
    dt: Optional[float] = None        # evolve; defaults to one period / steps_per_period
    steps_per_period: int = 8000
    output_every: int = 80
    scheme: str = 'numerov'
    nu_perturbation: float = 0.0
    mass: Optional[float] = None
    angular_frequency: Optional[float] = None
    amplitude: Optional[float] = None
    planck: Optional[float] = None
    out: Optional[str] = None
    format: str = 'csv'
    bits: bool = False
    si: bool = False
    tol: float = 1e-14
    quiet: bool = False
    log_level: str = 'WARNING'
    config: Optional[str] = None
    tolerances: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self):
        """
        Raises:
            ConfigurationError: on any invalid value
        """
        if self.command not in COMMANDS:
            raise ConfigurationError(f"unknown command {self.command!r}; choose from {COMMANDS}")
        if self.format not in FORMATS:
            raise ConfigurationError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.command == 'density' and not self.alphas:
            raise ConfigurationError("alpha list is empty")
        if any(not a > 0 for a in self.alphas) or not self.alpha > 0:
            raise ConfigurationError("alpha values must be positive")
        labels = [f"{a:g}" for a in self.alphas]
        if len(set(labels)) != len(labels):
            # density columns are keyed by the %g label
            raise ConfigurationError(f"alpha list has duplicates: {','.join(labels)}")
        if self.n_points < 3:
            raise ConfigurationError(f"n_points must be >= 3, got {self.n_points}")
        if self.n_times < 1 or self.n_means < 2:
            raise ConfigurationError("n_times must be >= 1 and n_means >= 2")
        if self.t_max < self.t_min:
            raise ConfigurationError(f"time range is reversed: [{self.t_min}, {self.t_max}]")
        if not self.mean_min > 0:
            raise ConfigurationError(
                f"mean_min must be > 0 (the information density diverges at <n> = 0), got {self.mean_min}")
        if self.mean_max <= self.mean_min:
            raise ConfigurationError("mean_max must exceed mean_min")
        if not self.tol > 0:
            raise ConfigurationError(f"tol must be positive, got {self.tol}")
        if self.half_width <= 0 or self.xt_max <= 0 or self.periods <= 0:
            raise ConfigurationError("half_width, xt_max and periods must be positive")
        if self.steps_per_period < 1 or self.output_every < 1:
            raise ConfigurationError("steps_per_period and output_every must be >= 1")
        if self.si and None in (self.mass, self.angular_frequency, self.amplitude, self.planck):
            raise ConfigurationError("--si needs explicit mass, angular_frequency, amplitude and planck")

    def oscillator(self, alpha: Optional[float] = None) -> OscillatorConfig:
        """Physical parameters: explicit m, omega, a, hbar under --si, otherwise unit scales with the given alpha"""
        if self.si:
            return OscillatorConfig(mass=self.mass, angular_frequency=self.angular_frequency,
                                    amplitude=self.amplitude, planck=self.planck)
        return OscillatorConfig.from_alpha(self.alpha if alpha is None else alpha)

    def output_path(self) -> Path:
        return Path(self.out) if self.out else Path(f"{self.command}.{self.format}")

    def header(self) -> Dict[str, str]:
        """Effective configuration echoed in output headers, deterministic formatting"""
        echoed = {}
        for f in dataclasses.fields(self):
            if f.name in _NOT_ECHOED:
                continue
            echoed[f.name] = _format_value(getattr(self, f.name))
        echoed['command'] = self.command
        return dict(sorted(echoed.items()))


def _format_value(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return ','.join(_format_value(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return 'none'
    return str(value).lower() if isinstance(value, bool) else str(value)


def _field_types() -> Dict[str, Any]:
    return {f.name: f for f in dataclasses.fields(RunConfig)}


def _coerce(name: str, raw: Any) -> Any:
    """Convert a config-file value to the type of the RunConfig field"""
    declared = _field_types()[name]
    default = declared.default if declared.default is not dataclasses.MISSING else declared.default_factory()
    try:
        if name == 'alphas':
            if isinstance(raw, (list, tuple)):
                return [float(v) for v in raw]
            return [float(v) for v in str(raw).split(',') if v.strip()]
        if isinstance(default, bool):
            if isinstance(raw, bool):
                return raw
            text = str(raw).strip().lower()
            if text not in ('true', 'false', 'yes', 'no', '1', '0'):
                raise ValueError(raw)
            return text in ('true', 'yes', '1')
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float) or default is None and name not in ('out', 'config'):
            if raw is None or str(raw).strip().lower() == 'none':
                return None
            return float(raw)
        return str(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"invalid value for {name}: {raw!r}") from exc


def load_config_file(path: str) -> Dict[str, Any]:
    """
    Read a flat key=value file ('#' comments) or a YAML mapping (.yaml/.yml)

    Keys starting with 'tol_' are verification tolerance overrides.

    Raises:
        ConfigurationError: on unknown keys, nesting or bad values
        OSError: if the file cannot be read
    """
    text = Path(path).read_text(encoding='utf-8')
    if Path(path).suffix.lower() in ('.yaml', '.yml'):
        raw = yaml.safe_load(text) or {}
        if not isinstance(raw, dict) or any(isinstance(v, dict) for v in raw.values()):
            raise ConfigurationError(f"{path}: config must be a flat mapping")
    else:
        parser = configparser.ConfigParser(comment_prefixes=('#',), inline_comment_prefixes=('#',),
                                           delimiters=('=',), interpolation=None)
        parser.optionxform = str
        try:
            parser.read_string('[run]\n' + text, source=str(path))
        except configparser.Error as exc:
            raise ConfigurationError(f"{path}: {exc}") from exc
        raw = dict(parser['run'])
    return parse_settings(raw, source=str(path))


def parse_settings(raw: Mapping[str, Any], source: str = 'config') -> Dict[str, Any]:
    fields = _field_types()
    settings: Dict[str, Any] = {}
    tolerances: Dict[str, float] = {}
    for key, value in raw.items():
        key = str(key).strip().replace('-', '_')
        if key.startswith(TOLERANCE_PREFIX):
            try:
                tolerances[key[len(TOLERANCE_PREFIX):]] = float(value)
            except (TypeError, ValueError) as exc:
                raise ConfigurationError(f"{source}: invalid tolerance {key}={value!r}") from exc
        elif key in fields and key not in ('command', 'config', 'tolerances'):
            settings[key] = _coerce(key, value)
        else:
            raise ConfigurationError(f"{source}: unknown key {key!r}")
    if tolerances:
        settings['tolerances'] = tolerances
    return settings


def build_run_config(command: str,
                     flags: Mapping[str, Any],
                     config_path: Optional[str] = None,
                     command_defaults: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """
    Defaults < per-command defaults < config file < flags

    Flags holding None are treated as not given.
    """
    merged: Dict[str, Any] = dict(command_defaults or {})
    if config_path:
        merged.update(load_config_file(config_path))
    merged.update({k: v for k, v in flags.items() if v is not None})
    return RunConfig(command=command, config=config_path, **merged)
