"""
Result Writers
Byte-deterministic CSV tables and SVG figures
"""

import logging
from pathlib import Path
from typing import Mapping

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from oscillator.errors import OutputError  # noqa: E402

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.12e'
SVG_HASH_SALT = 'qcinfo'


def header_line(header: Mapping[str, str]) -> str:
    """'# key=value ...' with keys sorted"""
    return '# ' + ' '.join(f"{k}={header[k]}" for k in sorted(header))


def write_csv(frame: pd.DataFrame, path: Path, header: Mapping[str, str]) -> Path:
    """
    Write one comment line echoing the configuration, then the table

    Comma separated, header row, '%.12e' floats, LF line endings, UTF-8.

    Raises:
        OutputError: if the file cannot be written
    """
    path = Path(path)
    try:
        with open(path, 'w', encoding='utf-8', newline='') as fh:
            fh.write(header_line(header) + '\n')
            frame.to_csv(fh, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
    logger.info(f"wrote {len(frame)} rows to {path}")
    return path


def write_svg(fig: plt.Figure, path: Path) -> Path:
    """
    Save a figure as SVG with a fixed id salt and no date, then close it

    Raises:
        OutputError: if the file cannot be written
    """
    path = Path(path)
    try:
        with matplotlib.rc_context({'svg.hashsalt': SVG_HASH_SALT, 'svg.fonttype': 'path'}):
            fig.savefig(path, format='svg', metadata={'Date': None})
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
    finally:
        plt.close(fig)
    logger.info(f"wrote figure to {path}")
    return path


def line_figure(x: np.ndarray, curves: Mapping[str, np.ndarray], xlabel: str, ylabel: str,
                title: str = '') -> plt.Figure:
    """Polyline plot, one line per labelled curve"""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, y in curves.items():
        ax.plot(x, y, label=label, linewidth=1.2)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(curves) > 1:
        ax.legend(fontsize='small')
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def heatmap_figure(x: np.ndarray, t: np.ndarray, values: np.ndarray, xlabel: str, ylabel: str,
                   colorbar: str, title: str = '') -> plt.Figure:
    """Heat map of values[t, x]"""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    mesh = ax.pcolormesh(x, t, values, shading='auto', cmap='viridis')
    fig.colorbar(mesh, ax=ax, label=colorbar)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig
