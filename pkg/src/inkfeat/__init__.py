"""Feature extraction for digital ink."""

from .errors import *  # noqa: F401,F403
from .ink import FlatPointSequence, Gesture, Sample, Stroke, flatten, validate

__version__ = "0.1.0"

__all__ = ["FlatPointSequence", "Gesture", "Sample", "Stroke", "flatten", "validate"]
