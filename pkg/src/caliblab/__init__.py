"""caliblab: numerical laboratory for calibrated-submanifold identities."""

from .calibrations import Calibration, make_calibration
from .comass import comass
from .multivector import Frame, MultiVector, hodge, wedge

__all__ = [
    "Calibration",
    "Frame",
    "MultiVector",
    "comass",
    "hodge",
    "make_calibration",
    "wedge",
]

__version__ = "0.1.0"
