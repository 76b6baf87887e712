"""Turn pointwise cell-centre samples into a piecewise-polynomial interpolant.

A finite-volume style mesh is laid over the sample points (cell edges at
midpoints between neighbouring samples, outer edges at the domain ends).
Elements are one or two consecutive cells, and on each element a Lagrange
polynomial is fitted through a stencil of neighbouring samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError, InvalidInputError

__all__ = [
    "PointwiseData",
    "Mesh",
    "PiecewiseInterpolant",
    "build_mesh",
    "lagrange_interpolant",
    "evaluate_interpolant",
    "interpolant_from_callable",
]


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PointwiseData:
    """Samples ``fs`` at strictly increasing cell centres ``xs`` inside ``[lo, hi]``."""

    domain_lo: float
    domain_hi: float
    xs: np.ndarray
    fs: np.ndarray

    def __post_init__(self):
        xs, fs = _frozen(self.xs), _frozen(self.fs)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "fs", fs)
        if xs.ndim != 1 or xs.size == 0:
            raise InvalidInputError("pointwise data is empty")
        if fs.shape != xs.shape:
            raise InvalidInputError(
                f"xs and fs differ in length ({xs.size} vs {fs.size})"
            )
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(fs))):
            raise InvalidInputError("pointwise data contains non-finite values")
        if np.any(np.diff(xs) <= 0):
            raise InvalidInputError("sample points must be strictly increasing")
        if not (self.domain_lo < xs[0] and xs[-1] < self.domain_hi):
            raise InvalidInputError(
                "sample points must lie strictly inside "
                f"({self.domain_lo}, {self.domain_hi})"
            )

    @classmethod
    def from_centers(cls, xs, fs, domain=None) -> "PointwiseData":
        """Build from cell centres, inferring the domain ends when not given.

        The inferred ends sit half a neighbouring spacing outside the first and
        last sample, which is exact for uniform cell-centred grids.
        """
        xs = np.asarray(xs, dtype=float)
        if domain is None:
            if xs.size < 2:
                raise InvalidInputError("cannot infer the domain from a single sample")
            domain = (xs[0] - 0.5 * (xs[1] - xs[0]), xs[-1] + 0.5 * (xs[-1] - xs[-2]))
        return cls(float(domain[0]), float(domain[1]), xs, fs)

    @property
    def n(self) -> int:
        return self.xs.size


@dataclass(frozen=True)
class Mesh:
    """Cell edges and the grouping of cells into elements.

    ``elements`` holds ``(first_cell, last_cell)`` index pairs, inclusive.
    """

    cell_edges: np.ndarray
    elements: tuple

    @property
    def element_edges(self) -> np.ndarray:
        idx = [e[0] for e in self.elements] + [self.elements[-1][1] + 1]
        return self.cell_edges[idx]


@dataclass(frozen=True)
class PiecewiseInterpolant:
    """Element-wise polynomials on ``breakpoints``.

    Element ``k`` covers ``[breakpoints[k], breakpoints[k+1])`` (the last one
    is closed) and holds coefficients of a polynomial in the local variable
    ``(x - centers[k]) / scales[k]``, lowest power first.
    """

    breakpoints: np.ndarray
    coefficients: np.ndarray
    centers: np.ndarray
    scales: np.ndarray
    periodic: bool = False
    degrees: np.ndarray = field(default=None)

    def __post_init__(self):
        for name in ("breakpoints", "coefficients", "centers", "scales"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if self.degrees is None:
            deg = np.full(self.n_elements, self.coefficients.shape[1] - 1)
        else:
            deg = np.asarray(self.degrees, dtype=int)
        deg.setflags(write=False)
        object.__setattr__(self, "degrees", deg)

    @property
    def domain(self):
        return float(self.breakpoints[0]), float(self.breakpoints[-1])

    @property
    def n_elements(self) -> int:
        return self.breakpoints.size - 1

    @property
    def degree(self) -> int:
        return int(self.coefficients.shape[1] - 1)

    def __call__(self, x):
        return evaluate_interpolant(self, x)


def build_mesh(data: PointwiseData, cells_per_element: int = 1) -> Mesh:
    """Superimpose cells (and elements of 1 or 2 cells) on the sample grid."""
    if not isinstance(data, PointwiseData) or data.n == 0:
        raise InvalidInputError("build_mesh needs non-empty PointwiseData")
    if cells_per_element not in (1, 2):
        raise InvalidInputError("cells_per_element must be 1 or 2")
    xs = data.xs
    edges = np.empty(xs.size + 1)
    edges[0], edges[-1] = data.domain_lo, data.domain_hi
    edges[1:-1] = 0.5 * (xs[:-1] + xs[1:])
    edges.setflags(write=False)
    n = xs.size
    elements = tuple(
        (i, min(i + cells_per_element, n) - 1) for i in range(0, n, cells_per_element)
    )
    return Mesh(edges, elements)


def _stencil(j: int, left: int, right: int, n: int, boundary: str) -> range:
    lo, hi = j - left, j + right
    if boundary == "truncate":
        return range(max(lo, 0), min(hi, n - 1) + 1)
    # keep the full width and slide it back inside the grid
    if lo < 0:
        lo, hi = 0, hi - lo
    if hi > n - 1:
        lo, hi = lo - (hi - n + 1), n - 1
    return range(lo, hi + 1)


def lagrange_interpolant(
    data: PointwiseData,
    mesh: Mesh,
    left_width: int = 0,
    right_width: int = 0,
    *,
    periodic: bool = False,
    boundary: str = "truncate",
) -> PiecewiseInterpolant:
    """Fit a Lagrange polynomial on each element through a cell stencil.

    The stencil about the first cell ``j`` of an element is cells
    ``j - left_width .. j + right_width``. Near the domain ends
    ``boundary="truncate"`` drops cells that do not exist and lowers the
    degree; ``boundary="shift"`` keeps the degree by sliding the stencil
    inward. With both widths zero this is the piecewise-constant
    initialisation.
    """
    if left_width < 0 or right_width < 0:
        raise InvalidInputError("stencil widths must be nonnegative")
    if left_width + right_width + 1 > data.n:
        raise InvalidInputError(
            f"stencil of {left_width + right_width + 1} cells is wider than the "
            f"grid of {data.n} samples"
        )
    if boundary not in ("truncate", "shift"):
        raise InvalidInputError("boundary must be 'truncate' or 'shift'")

    p = left_width + right_width
    edges = mesh.element_edges
    n_el = len(mesh.elements)
    coefs = np.zeros((n_el, p + 1))
    centers = 0.5 * (edges[:-1] + edges[1:])
    scales = 0.5 * (edges[1:] - edges[:-1])
    degrees = np.zeros(n_el, dtype=int)
    for k, (first, _) in enumerate(mesh.elements):
        idx = _stencil(first, left_width, right_width, data.n, boundary)
        nodes = (data.xs[idx.start:idx.stop] - centers[k]) / scales[k]
        V = np.vander(nodes, increasing=True)
        coefs[k, : len(idx)] = np.linalg.solve(V, data.fs[idx.start:idx.stop])
        degrees[k] = len(idx) - 1
    return PiecewiseInterpolant(edges, coefs, centers, scales, periodic, degrees)


def interpolant_from_callable(func, breakpoints, degree: int, *, periodic=False):
    """Interpolate ``func`` at Chebyshev points of each element.

    Handy for building exact piecewise representations of polynomials of
    degree ``<= degree``.
    """
    bp = np.asarray(breakpoints, dtype=float)
    centers = 0.5 * (bp[:-1] + bp[1:])
    scales = 0.5 * (bp[1:] - bp[:-1])
    m = degree + 1
    s = np.cos(np.pi * (np.arange(m) + 0.5) / m)
    V = np.vander(s, increasing=True)
    vals = np.asarray(func(centers[:, None] + scales[:, None] * s[None, :]), dtype=float)
    coefs = np.linalg.solve(V[None, :, :], vals[..., None])[..., 0]
    return PiecewiseInterpolant(bp, coefs, centers, scales, periodic)


def evaluate_interpolant(interp: PiecewiseInterpolant, x):
    """Evaluate the interpolant; at a shared breakpoint the right element wins."""
    a, b = interp.domain
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    if interp.periodic:
        xa = a + np.mod(xa - a, b - a)
    else:
        tol = 1e-12 * (b - a)
        if np.any((xa < a - tol) | (xa > b + tol)):
            bad = xa[(xa < a - tol) | (xa > b + tol)][0]
            raise DomainError(f"x = {bad!r} is outside the domain [{a}, {b}]")
    k = np.searchsorted(interp.breakpoints, xa, side="right") - 1
    k = np.clip(k, 0, interp.n_elements - 1)
    u = (xa - interp.centers[k]) / interp.scales[k]
    c = interp.coefficients
    out = c[k, -1].copy()
    for col in range(c.shape[1] - 2, -1, -1):
        out = out * u + c[k, col]
    return float(out[0]) if scalar else out
