"""scikit-learn style transformer around the filtering pipeline."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .convolution import filter_grid
from .exceptions import InvalidInputError
from .grid import PointwiseData, build_mesh, lagrange_interpolant
from .kernel import KernelSpec, symmetric_coefficients

__all__ = ["SIACFilter", "check_grid"]


def check_grid(grid, n_points: int | None = None) -> np.ndarray:
    """Validate sample positions: finite, 1D, strictly increasing."""
    g = check_array(grid, ensure_2d=False, dtype=np.float64, input_name="grid")
    if g.ndim != 1:
        raise InvalidInputError("grid must be one-dimensional")
    if n_points is not None and g.size != n_points:
        raise InvalidInputError(f"grid has {g.size} points but X has {n_points} rows")
    if np.any(np.diff(g) <= 0):
        raise InvalidInputError("grid must be strictly increasing")
    return g


class SIACFilter(TransformerMixin, BaseEstimator):
    """Denoise profiles sampled at cell centres with a SIAC convolution filter.

    Rows of ``X`` are grid points, columns are independent profiles sharing
    the grid given to :meth:`fit`. ``transform`` returns the filtered values
    at the same points.

    Parameters
    ----------
    r : int
        Number of reproduced moments; the kernel has ``r + 1`` B-splines.
    order : int
        B-spline order.
    H : float, optional
        Constant kernel scaling in grid units. Required unless ``adaptive``.
    adaptive : bool
        Use the boundary-shrinking scaling with interior value ``H_int``.
    H_int, h_grid : float, optional
        Interior scaling and element size for adaptive scaling. ``h_grid``
        defaults to the mean element width.
    generalized_spline : bool
        Add the clustered-knot boundary spline to shifted kernels.
    periodic : bool
        Treat the data as periodic and use the symmetric kernel everywhere.
    domain : (float, float), optional
        Domain ends. Inferred from the grid when omitted.
    stencil : (int, int)
        Left and right stencil widths of the Lagrange initialisation.
    cells_per_element : {1, 2}
    boundary_stencil : {"truncate", "shift"}
    n_jobs : int, optional
        Threads for the pointwise convolution (default ``SIAC_THREADS``).
    """

    def __init__(
        self,
        r=2,
        order=2,
        H=None,
        adaptive=False,
        H_int=None,
        h_grid=None,
        generalized_spline=False,
        periodic=False,
        domain=None,
        stencil=(0, 0),
        cells_per_element=1,
        boundary_stencil="truncate",
        n_jobs=None,
    ):
        self.r = r
        self.order = order
        self.H = H
        self.adaptive = adaptive
        self.H_int = H_int
        self.h_grid = h_grid
        self.generalized_spline = generalized_spline
        self.periodic = periodic
        self.domain = domain
        self.stencil = stencil
        self.cells_per_element = cells_per_element
        self.boundary_stencil = boundary_stencil
        self.n_jobs = n_jobs

    def _check_X(self, X):
        X = check_array(X, ensure_2d=False, dtype=np.float64)
        if X.ndim > 2:
            raise InvalidInputError("X must be 1D or 2D")
        return X

    def fit(self, X, y=None, grid=None):
        """Validate the grid and kernel parameters.

        ``grid`` holds the cell-centre positions; unit cells
        ``0.5, 1.5, ...`` are assumed when it is omitted.
        """
        X = self._check_X(X)
        n = X.shape[0]
        if grid is None:
            grid = np.arange(n) + 0.5
            domain = (0.0, float(n)) if self.domain is None else self.domain
        else:
            domain = self.domain
        self.grid_ = check_grid(grid, n)
        probe = PointwiseData.from_centers(self.grid_, np.zeros(n), domain)
        self.domain_ = (probe.domain_lo, probe.domain_hi)
        self.mesh_ = build_mesh(probe, self.cells_per_element)
        n_el = len(self.mesh_.elements)
        self.h_grid_ = (
            float(self.h_grid) if self.h_grid is not None
            else (self.domain_[1] - self.domain_[0]) / n_el
        )
        self.spec_ = KernelSpec(
            r=self.r,
            order=self.order,
            domain=self.domain_,
            H=None if self.adaptive else self.H,
            adaptive=self.adaptive,
            H_int=self.H_int,
            h_grid=self.h_grid_ if self.adaptive else None,
            generalized_spline=self.generalized_spline,
            boundary_mode="periodic" if self.periodic else "position_dependent",
        )
        symmetric_coefficients(self.r, self.order)
        self.n_features_in_ = 1 if X.ndim == 1 else X.shape[1]
        return self

    def interpolants(self, X):
        """Piecewise-polynomial initialisation of each column of ``X``."""
        check_is_fitted(self, "spec_")
        X = self._check_X(X)
        if X.shape[0] != self.grid_.size:
            raise InvalidInputError(
                f"X has {X.shape[0]} rows, the fitted grid has {self.grid_.size}"
            )
        cols = X[:, None] if X.ndim == 1 else X
        left, right = self.stencil
        out = []
        for col in cols.T:
            data = PointwiseData(*self.domain_, self.grid_, col)
            out.append(lagrange_interpolant(
                data, self.mesh_, left, right,
                periodic=self.periodic, boundary=self.boundary_stencil,
            ))
        return out

    def filter_at(self, X, points):
        """Filtered values of every column of ``X`` at arbitrary ``points``."""
        pts = np.asarray(points, dtype=float).ravel()
        X = self._check_X(X)
        res = np.column_stack([
            filter_grid(interp, self.spec_, pts, n_jobs=self.n_jobs)
            for interp in self.interpolants(X)
        ])
        return res[:, 0] if X.ndim == 1 else res

    def transform(self, X):
        """Filtered values at the fitted grid points, same shape as ``X``."""
        check_is_fitted(self, "spec_")
        return self.filter_at(X, self.grid_)
