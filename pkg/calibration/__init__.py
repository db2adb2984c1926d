"""
Confidence calibration (temperature scaling) and calibration diagnostics
"""

from .metrics import expected_calibration_error
from .temperature_scaling import (
    CalibrationModel,
    apply_temperature,
    calibrate_records,
    fit_temperature,
    mean_nll,
)

__all__ = [
    "CalibrationModel",
    "apply_temperature",
    "calibrate_records",
    "expected_calibration_error",
    "fit_temperature",
    "mean_nll",
]
