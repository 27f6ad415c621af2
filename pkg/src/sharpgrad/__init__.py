"""Sharp constants in pointwise gradient estimates for generalized Poisson integrals."""

from .errors import InvalidParams, NumericFailure, OutOfRegime, SharpGradError
from .model import (
    Branch,
    GradientBound,
    KernelParams,
    Method,
    NormIndex,
    SharpConstant,
    Variant,
    classify_regime,
    coefficient_at,
    validate,
    xn_exponent,
)
from .constants import gradient_bound, sharp_constant

__all__ = [
    "SharpGradError",
    "InvalidParams",
    "OutOfRegime",
    "NumericFailure",
    "KernelParams",
    "NormIndex",
    "Branch",
    "Method",
    "Variant",
    "SharpConstant",
    "GradientBound",
    "validate",
    "classify_regime",
    "xn_exponent",
    "coefficient_at",
    "sharp_constant",
    "gradient_bound",
]
