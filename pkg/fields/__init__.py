"""
Analytic complex fields used by the verification engine
"""

from .base import SmoothField, FieldJet
from .coherent import CoherentField, GroundStateField, PhaseShiftedField
from .band_limited import BandLimitedField
from .plane_wave import PlaneWaveField

__all__ = [
    'SmoothField',
    'FieldJet',
    'CoherentField',
    'GroundStateField',
    'PhaseShiftedField',
    'BandLimitedField',
    'PlaneWaveField',
]
