"""
Command-line reports: figure data as CSV/SVG, verification and evolution runs
"""

from .run_config import RunConfig, build_run_config, load_config_file
from .writers import write_csv, write_svg

__all__ = [
    'RunConfig',
    'build_run_config',
    'load_config_file',
    'write_csv',
    'write_svg',
]
