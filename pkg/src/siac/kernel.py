"""SIAC kernel construction.

A kernel with ``r + 1`` B-splines of order ``l`` is a linear combination of
the B-splines whose knot sequences are the rows of a knot matrix. Row ``i``
of the unshifted matrix is ``-(r + l)/2 + i + (0, 1, ..., l)``. Near the ends
of a bounded domain the whole matrix is translated by a shift ``lam`` so the
scaled support stays inside the data, and optionally one extra spline with
clustered end knots is added on the boundary side. Coefficients follow from
requiring the kernel to reproduce polynomials.

Kernels are kept in unscaled coordinates. A kernel scaled by ``H`` is
``K_H(u) = K(u / H) / H`` and the filtered value at ``x`` is
``integral K_H(x - y) u_h(y) dy``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bspline import bspline_eval, bspline_moments
from .exceptions import DegenerateKernelError, InvalidInputError

__all__ = [
    "KernelSpec",
    "KnotMatrix",
    "Kernel",
    "shift_lambda",
    "build_knot_matrix",
    "solve_coefficients",
    "adaptive_scaling",
    "scaling_at",
    "make_kernel_at",
    "kernel_eval",
    "symmetric_coefficients",
    "COND_LIMIT",
]

COND_LIMIT = 1e12

PERIODIC = "periodic"
POSITION_DEPENDENT = "position_dependent"


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family and how it is placed on the domain.

    Give either a constant scaling ``H`` or ``adaptive=True`` with an
    interior scaling ``H_int`` and the element size ``h_grid``.
    """

    r: int = 2
    order: int = 2
    domain: tuple = (0.0, 1.0)
    H: float | None = None
    adaptive: bool = False
    H_int: float | None = None
    h_grid: float | None = None
    generalized_spline: bool = False
    boundary_mode: str = POSITION_DEPENDENT

    def __post_init__(self):
        if int(self.r) != self.r or self.r < 0:
            raise InvalidInputError("r must be a nonnegative integer")
        if int(self.order) != self.order or self.order < 1:
            raise InvalidInputError("spline order must be an integer >= 1")
        a, b = (float(v) for v in self.domain)
        object.__setattr__(self, "domain", (a, b))
        if not b > a:
            raise InvalidInputError(f"empty domain [{a}, {b}]")
        if self.boundary_mode not in (PERIODIC, POSITION_DEPENDENT):
            raise InvalidInputError(f"unknown boundary mode {self.boundary_mode!r}")
        w = self.width
        if self.adaptive:
            if self.periodic:
                raise InvalidInputError("adaptive scaling needs position-dependent mode")
            if self.H_int is None or self.h_grid is None:
                raise InvalidInputError("adaptive scaling needs H_int and h_grid")
            if not self.h_grid > 0:
                raise InvalidInputError("h_grid must be positive")
            if self.H_int < self.h_grid / w:
                raise InvalidInputError("H_int must be at least h_grid / (r + l)")
            if self.H_int * w > b - a:
                raise InvalidInputError(
                    f"interior kernel support {self.H_int * w} exceeds the domain length"
                )
        else:
            if self.H is None or not self.H > 0:
                raise InvalidInputError("a positive constant scaling H is required")
            if not self.periodic and self.H * w > (b - a) * (1 + 1e-12):
                raise InvalidInputError(
                    f"kernel support H*(r+l) = {self.H * w} does not fit in the domain"
                )
        if self.periodic and self.generalized_spline:
            raise InvalidInputError("periodic filtering uses the symmetric kernel only")
        if self.generalized_spline and self.order < 2:
            # for l = 1 the boundary row repeats the outermost principal row
            raise InvalidInputError("the generalized spline needs spline order >= 2")

    @property
    def width(self) -> int:
        """Support width ``r + l`` of the unscaled kernel."""
        return self.r + self.order

    @property
    def periodic(self) -> bool:
        return self.boundary_mode == PERIODIC


@dataclass(frozen=True)
class KnotMatrix:
    """Knot sequences (one per row) of the kernel's B-splines.

    ``extra_row`` is the index of the generalized boundary spline, if any.
    """

    rows: np.ndarray
    shift: float
    extra_row: int | None = None

    @property
    def n_splines(self) -> int:
        return self.rows.shape[0]


@dataclass(frozen=True)
class Kernel:
    """A kernel in unscaled coordinates together with its scaling ``H``."""

    knots: KnotMatrix
    coefficients: np.ndarray
    H: float

    @property
    def order(self) -> int:
        return self.knots.rows.shape[1] - 1

    @property
    def scaled_knots(self) -> np.ndarray:
        return self.H * self.knots.rows

    @property
    def support(self) -> tuple:
        """Support of ``K_H`` in the convolution offset ``u = x - y``."""
        return float(self.H * self.knots.rows.min()), float(self.H * self.knots.rows.max())

    def breaks(self) -> np.ndarray:
        """Distinct scaled knots, where the kernel loses smoothness."""
        return np.unique(self.scaled_knots)

    def __call__(self, u):
        return kernel_eval(self, u)


def shift_lambda(x_star: float, spec: KernelSpec, H_at: float) -> float:
    """Translation of the knot matrix that keeps the support in the domain."""
    if spec.periodic:
        return 0.0
    a, b = spec.domain
    half = 0.5 * spec.width
    if x_star < 0.5 * (a + b):
        return min(0.0, -half + (x_star - a) / H_at)
    return max(0.0, half + (x_star - b) / H_at)


def build_knot_matrix(spec: KernelSpec, lam: float) -> KnotMatrix:
    """Knot matrix shifted by ``lam``, plus the boundary spline if enabled.

    For ``lam < 0`` the extra row ``s_L`` is appended, for ``lam > 0`` the
    row ``s_R`` is prepended; a symmetric kernel never gets one.
    """
    return _knot_matrix(spec.r, spec.order, float(lam), spec.generalized_spline)


def _knot_matrix(r: int, l: int, lam: float, generalized: bool) -> KnotMatrix:
    half = 0.5 * (r + l)
    rows = -half + np.arange(r + 1)[:, None] + np.arange(l + 1)[None, :] + lam
    extra = None
    if generalized and lam < 0:
        end = lam + half
        s_left = np.full(l + 1, end)
        s_left[0] = end - 1
        rows = np.vstack([rows, s_left])
        extra = r + 1
    elif generalized and lam > 0:
        start = lam - half
        s_right = np.full(l + 1, start)
        s_right[-1] = start + 1
        rows = np.vstack([s_right, rows])
        extra = 0
    rows.setflags(write=False)
    return KnotMatrix(rows, lam, extra)


def solve_coefficients(T, order: int | None = None) -> np.ndarray:
    """Coefficients making the kernel reproduce polynomials.

    With ``n`` splines the square system matches moments ``0..n-1``:
    ``sum_g c_g * integral B_g(y) (-y)**p dy = [p == 0]``.
    """
    rows = T.rows if isinstance(T, KnotMatrix) else np.asarray(T, dtype=float)
    if order is not None and rows.shape[1] != order + 1:
        raise InvalidInputError(
            f"knot rows have {rows.shape[1]} entries, expected {order + 1}"
        )
    n = rows.shape[0]
    M = np.column_stack([bspline_moments(row, n - 1) for row in rows])
    # row equilibration leaves the solution unchanged and tames the powers
    scale = np.abs(M).max(axis=1)
    scale[scale == 0] = 1.0
    M = M / scale[:, None]
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise DegenerateKernelError(
            f"kernel coefficient system is ill-conditioned (cond = {cond:.3g})"
        )
    rhs = np.zeros(n)
    rhs[0] = 1.0 / scale[0]
    c = np.linalg.solve(M, rhs)
    c.setflags(write=False)
    return c


@lru_cache(maxsize=4096)
def _cached_coefficients(r: int, order: int, lam: float, generalized: bool):
    T = _knot_matrix(r, order, lam, generalized)
    return T, solve_coefficients(T, order)


def symmetric_coefficients(r: int, order: int) -> np.ndarray:
    """Coefficients of the unshifted kernel (computed once per ``(r, l)``)."""
    return _cached_coefficients(int(r), int(order), 0.0, False)[1]


def adaptive_scaling(x: float, spec: KernelSpec) -> float:
    """Scaling that shrinks linearly to ``h_grid / (r + l)`` at both domain ends."""
    a, b = spec.domain
    w = spec.width
    H_int, h_min = spec.H_int, spec.h_grid / w
    reach = H_int * w / 2
    if x - reach >= a and x + reach <= b:
        return float(H_int)
    slope = 2 * (H_int - h_min) / (H_int * w)
    if x - reach <= a:
        return float(h_min + (x - a) * slope)
    return float(h_min + (b - x) * slope)


def scaling_at(x: float, spec: KernelSpec) -> float:
    return adaptive_scaling(x, spec) if spec.adaptive else float(spec.H)


def make_kernel_at(x_star: float, spec: KernelSpec) -> Kernel:
    """Kernel used to filter at ``x_star``."""
    a, b = spec.domain
    if not spec.periodic and not (a <= x_star <= b):
        raise InvalidInputError(f"x_star = {x_star} is outside [{a}, {b}]")
    H = scaling_at(x_star, spec)
    lam = shift_lambda(x_star, spec, H)
    T, c = _cached_coefficients(spec.r, spec.order, lam, spec.generalized_spline)
    return Kernel(T, c, H)


def kernel_eval(k: Kernel, u):
    """``K_H(u) = sum_g c_g B_g(u / H) / H``."""
    ua = np.asarray(u, dtype=float)
    z = np.atleast_1d(ua) / k.H
    out = np.zeros_like(z)
    for c, row in zip(k.coefficients, k.knots.rows):
        out += c * bspline_eval(row, z)
    out /= k.H
    return float(out[0]) if ua.ndim == 0 else out
