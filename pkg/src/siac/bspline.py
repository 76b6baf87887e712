"""B-splines from knot sequences, evaluated by the Cox--de Boor recursion.

Repeated knots are allowed. Recursion weights with a zero denominator are
dropped, which is the usual convention and is what the one-sided boundary
splines with clustered end knots rely on.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .exceptions import InvalidInputError

__all__ = [
    "check_knots",
    "bspline_eval",
    "bspline_moment",
    "bspline_moments",
    "gauss_legendre",
]


@lru_cache(maxsize=64)
def _leggauss(n: int):
    x, w = leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n: int, lo, hi):
    """Nodes and weights of the ``n``-point Gauss rule mapped to ``[lo, hi]``.

    ``lo`` and ``hi`` may be arrays of panel ends; the result then has shape
    ``(n_panels, n)``.
    """
    x, w = _leggauss(int(n))
    lo = np.asarray(lo, dtype=float)[..., None]
    hi = np.asarray(hi, dtype=float)[..., None]
    half = 0.5 * (hi - lo)
    return half * x + 0.5 * (hi + lo), half * w


def check_knots(knots) -> np.ndarray:
    """Validate a single knot sequence and return it as a float array."""
    t = np.asarray(knots, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise InvalidInputError("a knot sequence needs at least two knots")
    if not np.all(np.isfinite(t)):
        raise InvalidInputError("knots must be finite")
    if np.any(np.diff(t) < 0):
        raise InvalidInputError(f"knots must be nondecreasing, got {t.tolist()}")
    if t[-1] == t[0]:
        raise InvalidInputError("knot sequence has zero-length support")
    return t


def bspline_eval(knots, x):
    """Evaluate the B-spline of order ``len(knots) - 1`` at ``x``.

    Support is the half-open interval ``[t_0, t_l)``; the value is zero
    outside it. Scalar input gives a float, array input an array.
    """
    t = check_knots(knots)
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    order = t.size - 1

    # order-1 splines: characteristic functions of [t_j, t_{j+1})
    B = ((t[:-1, None] <= xa) & (xa < t[1:, None])).astype(float)
    for k in range(2, order + 1):
        nb = order + 1 - k
        left = np.zeros((nb, xa.size))
        right = np.zeros((nb, xa.size))
        for j in range(nb):
            d = t[j + k - 1] - t[j]
            if d > 0:
                left[j] = (xa - t[j]) / d * B[j]
            d = t[j + k] - t[j + 1]
            if d > 0:
                right[j] = (t[j + k] - xa) / d * B[j + 1]
        B = left + right
    out = B[0]
    return float(out[0]) if scalar else out


def bspline_moment(knots, p: int) -> float:
    """Exact ``integral B(y) * (-y)**p dy`` by Gauss--Legendre per knot interval."""
    return float(bspline_moments(knots, p)[p])


def bspline_moments(knots, p_max: int) -> np.ndarray:
    """All moments ``integral B(y) (-y)**p dy`` for ``p = 0..p_max``."""
    t = check_knots(knots)
    if p_max < 0:
        raise InvalidInputError("moment index must be nonnegative")
    order = t.size - 1
    n = max(1, math.ceil(((order - 1) + p_max + 1) / 2))
    lo, hi = t[:-1], t[1:]
    keep = hi > lo
    y, w = gauss_legendre(n, lo[keep], hi[keep])
    y, w = y.ravel(), w.ravel()
    vals = bspline_eval(t, y) * w
    powers = (-y)[None, :] ** np.arange(p_max + 1)[:, None]
    return powers @ vals
