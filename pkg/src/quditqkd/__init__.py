"""Security analysis toolkit for two-basis qudit key distribution."""

from .galois import FieldSpec, FieldElement, field
from .bell import BellSpectrum
from .criteria import cloning_bound, threshold_disturbance

__all__ = ["FieldSpec", "FieldElement", "field", "BellSpectrum", "cloning_bound", "threshold_disturbance"]
__version__ = "0.1.0"
