"""Radial semilinear wave equation with scale-invariant damping and mass in
even space dimension: exponents, kernels, the linear propagator, the Duhamel
fixed point, a finite-difference oracle and an estimates harness."""

from .errors import DomainError, PicardDivergence, QuadratureError
from .exponents import ModelParams, admissible_window, validate

__all__ = ["DomainError", "PicardDivergence", "QuadratureError", "ModelParams",
           "admissible_window", "validate"]
__version__ = "0.1.0"
