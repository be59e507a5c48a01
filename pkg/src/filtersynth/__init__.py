"""Analog Butterworth and Chebyshev-I low-pass design with Sallen-Key synthesis."""

from .core import (
    AttenuationsOutOfOrder,
    ComplexFrequency,
    EdgesOutOfOrder,
    Family,
    FilterRealization,
    FilterSpecification,
    FirstOrder,
    NonPositiveFrequency,
    PairingError,
    SecondOrder,
    SpecError,
    TransferFunction,
    evaluate,
    stages_from_poles,
    validate_spec,
)
from .design import design

__all__ = [
    "AttenuationsOutOfOrder",
    "ComplexFrequency",
    "EdgesOutOfOrder",
    "Family",
    "FilterRealization",
    "FilterSpecification",
    "FirstOrder",
    "NonPositiveFrequency",
    "PairingError",
    "SecondOrder",
    "SpecError",
    "TransferFunction",
    "design",
    "evaluate",
    "stages_from_poles",
    "validate_spec",
]
