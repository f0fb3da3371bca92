"""Generalized l=1 spherical harmonics for arbitrary quantization axes, with numerical checks."""
from .amplitudes import chain, chi_general, chi_matrix, chi_to_z
from .geometry import Axis, Frame, SpherePoint, axis_to_unit_vector, frame_from_axis
from .harmonics import (
    AxisKind,
    GeneralizedHarmonic,
    axis_variant,
    evaluate,
    generalized_harmonic,
    ordinary_harmonic,
    printed_closed_form,
    probability,
)
from .operators import apply, apply_l2, build_operator, eigen_residual
from .quadrature import inner_product, integrate_density, sphere_rule
from .verify import VerifyConfig, run_suite, sample

__version__ = "0.1.0"

__all__ = [
    "chain",
    "chi_general",
    "chi_matrix",
    "chi_to_z",
    "Axis",
    "Frame",
    "SpherePoint",
    "axis_to_unit_vector",
    "frame_from_axis",
    "AxisKind",
    "GeneralizedHarmonic",
    "axis_variant",
    "evaluate",
    "generalized_harmonic",
    "ordinary_harmonic",
    "printed_closed_form",
    "probability",
    "apply",
    "apply_l2",
    "build_operator",
    "eigen_residual",
    "inner_product",
    "integrate_density",
    "sphere_rule",
    "VerifyConfig",
    "run_suite",
    "sample",
]
