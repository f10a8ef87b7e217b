"""Experiments: sweeps, alpha optimisation, validation and the CLI."""

from .optimize import AlphaOptimum, optimize_alpha
from .sweeps import (
    SweepRangeError,
    SweepRow,
    SweepSpec,
    is_unimodal,
    sweep_alpha,
    sweep_distance,
    sweep_snr,
)
from .validate import ValidationReport, validate

__all__ = [
    "AlphaOptimum",
    "SweepRangeError",
    "SweepRow",
    "SweepSpec",
    "ValidationReport",
    "is_unimodal",
    "optimize_alpha",
    "sweep_alpha",
    "sweep_distance",
    "sweep_snr",
    "validate",
]
