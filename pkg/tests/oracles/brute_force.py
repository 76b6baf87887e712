"""Brute-force reference computations.

Everything here avoids the package's B-spline recursion and its Gauss
rules: B-splines come from ``scipy.interpolate.BSpline.basis_element`` and
integrals from composite Simpson sums over many uniform panels.
"""

import numpy as np
from scipy.interpolate import BSpline


def scipy_bspline(knots):
    b = BSpline.basis_element(np.asarray(knots, dtype=float), extrapolate=False)
    return lambda x: np.nan_to_num(b(np.asarray(x, dtype=float)))


def simpson(f, lo, hi, panels):
    x = np.linspace(lo, hi, 2 * panels + 1)
    # one-sided limits at the piece ends: the integrand may jump there
    # (at least a few ulps, or a short piece far from 0 is not moved at all)
    nudge = max(1e-13 * (hi - lo), 8 * np.finfo(float).eps * max(abs(lo), abs(hi)))
    x[0] += nudge
    x[-1] -= nudge
    y = f(x)
    h = (hi - lo) / (2 * panels)
    return h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())


def piecewise_simpson(f, jumps, panels):
    """Composite Simpson with ``panels`` spread over the pieces between ``jumps``."""
    jumps = np.unique(np.asarray(jumps, dtype=float))
    total = jumps[-1] - jumps[0]
    out = 0.0
    for lo, hi in zip(jumps[:-1], jumps[1:]):
        n = max(2, int(round(panels * (hi - lo) / total)))
        out += simpson(f, lo, hi, n)
    return out


def moment(knots, p, panels=10**6):
    """``integral B(y) (-y)**p dy`` by composite Simpson."""
    B = scipy_bspline(knots)
    return piecewise_simpson(lambda y: B(y) * (-y) ** p, knots, panels)


def coefficients(rows, panels=10**5):
    """Dense solve of the moment system with brute-force moments."""
    rows = np.asarray(rows, dtype=float)
    n = rows.shape[0]
    M = np.array([[moment(t, p, panels) for t in rows] for p in range(n)])
    rhs = np.zeros(n)
    rhs[0] = 1.0
    return np.linalg.solve(M, rhs)


def kernel_value(rows, coefs, H, u):
    u = np.asarray(u, dtype=float)
    z = u / H
    return sum(c * scipy_bspline(t)(z) for c, t in zip(coefs, rows)) / H


def convolution(interp, kernel, x_star, panels=10**5):
    """Filtered value at ``x_star`` with ``panels`` Simpson panels.

    Panels are aligned with every jump of the integrand (element ends and
    kernel knots), which any composite rule needs for piecewise integrands.
    """
    rows = kernel.knots.rows
    kb = x_star - kernel.H * np.unique(rows)
    lo, hi = kb.min(), kb.max()
    bp = interp.breakpoints
    if interp.periodic:
        a, b = interp.domain
        L = b - a
        shifts = np.arange(np.floor((lo - a) / L), np.floor((hi - a) / L) + 1)
        bp = np.concatenate([bp + s * L for s in shifts])
    jumps = np.concatenate([kb, bp[(bp > lo) & (bp < hi)]])

    def integrand(y):
        return kernel_value(rows, kernel.coefficients, kernel.H, x_star - y) * interp(y)

    return piecewise_simpson(integrand, jumps, panels)


def symmetric_32_coefficients():
    """Coefficients of the 3-spline, order-2 symmetric kernel."""
    return coefficients([[-2, -1, 0], [-1, 0, 1], [0, 1, 2]], panels=10**6)


if __name__ == "__main__":
    np.set_printoptions(precision=17)
    print("symmetric (3,2) coefficients:", symmetric_32_coefficients())
