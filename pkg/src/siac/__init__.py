"""Smoothness-Increasing Accuracy-Conserving (SIAC) filtering of 1D gridded data."""

__version__ = "0.1.0"

from .bspline import bspline_eval, bspline_moment
from .convolution import filter_grid, filter_point
from .estimator import SIACFilter
from .exceptions import (
    DegenerateKernelError,
    DomainError,
    InvalidInputError,
    SIACError,
    UnsupportedConfigurationError,
)
from .grid import (
    PiecewiseInterpolant,
    PointwiseData,
    build_mesh,
    evaluate_interpolant,
    lagrange_interpolant,
)
from .kernel import (
    Kernel,
    KernelSpec,
    adaptive_scaling,
    build_knot_matrix,
    kernel_eval,
    make_kernel_at,
    shift_lambda,
    solve_coefficients,
)
from .spectral import amplitude_spectrum, analytic_kernel_fourier, numerical_kernel_fourier

__all__ = [
    "SIACFilter",
    "PointwiseData",
    "PiecewiseInterpolant",
    "build_mesh",
    "lagrange_interpolant",
    "evaluate_interpolant",
    "bspline_eval",
    "bspline_moment",
    "KernelSpec",
    "Kernel",
    "shift_lambda",
    "build_knot_matrix",
    "solve_coefficients",
    "adaptive_scaling",
    "make_kernel_at",
    "kernel_eval",
    "filter_point",
    "filter_grid",
    "analytic_kernel_fourier",
    "numerical_kernel_fourier",
    "amplitude_spectrum",
    "SIACError",
    "InvalidInputError",
    "DomainError",
    "DegenerateKernelError",
    "UnsupportedConfigurationError",
]
