import numpy as np
import pytest

from oracles import brute_force
from siac.convolution import filter_grid, filter_point, integration_breaks, max_threads
from siac.exceptions import InvalidInputError
from siac.grid import (
    PointwiseData,
    build_mesh,
    interpolant_from_callable,
    lagrange_interpolant,
)
from siac.kernel import KernelSpec, make_kernel_at


def pc(fs, a=0.0, b=1.0, periodic=False):
    n = len(fs)
    xs = a + (np.arange(n) + 0.5) * (b - a) / n
    d = PointwiseData(a, b, xs, fs)
    return lagrange_interpolant(d, build_mesh(d), periodic=periodic)


def spec(**kw):
    kw.setdefault("r", 2)
    kw.setdefault("order", 2)
    kw.setdefault("domain", (0.0, 1.0))
    if not kw.get("adaptive"):
        kw.setdefault("H", 0.05)
    return KernelSpec(**kw)


class TestFilterPoint:
    @pytest.mark.parametrize("x", [0.0, 0.013, 0.5, 0.97, 1.0])
    def test_constant(self, x):
        u = pc(np.full(40, 2.5))
        assert filter_point(u, spec(generalized_spline=True), x) == pytest.approx(2.5, abs=1e-13)

    def test_linear_interior(self):
        u = interpolant_from_callable(lambda y: y, np.linspace(0, 1, 21), 1)
        assert filter_point(u, spec(), 0.437) == pytest.approx(0.437, abs=1e-10)

    def test_quadratic_at_boundary_with_generalized_spline(self):
        u = interpolant_from_callable(lambda y: y**2, np.linspace(0, 1, 21), 2)
        s = spec(generalized_spline=True)
        assert filter_point(u, s, 0.0) == pytest.approx(0.0, abs=1e-9)
        assert filter_point(u, s, 1.0) == pytest.approx(1.0, abs=1e-9)

    def test_quadratic_at_boundary_matches_oracle(self):
        u = interpolant_from_callable(lambda y: y**2 + 0.3, np.linspace(0, 1, 21), 2)
        s = spec(generalized_spline=True)
        k = make_kernel_at(0.0, s)
        ref = brute_force.convolution(u, k, 0.0, panels=10**6)
        assert filter_point(u, s, 0.0) == pytest.approx(ref, rel=1e-9)

    def test_mismatched_domain(self):
        with pytest.raises(InvalidInputError):
            filter_point(pc(np.ones(10), b=2.0), spec(), 0.5)

    def test_periodic_needs_periodic_interpolant(self):
        with pytest.raises(InvalidInputError):
            filter_point(pc(np.ones(10)), spec(boundary_mode="periodic"), 0.5)


class TestBreaks:
    def test_contains_kernel_knots_and_cell_edges(self):
        u = pc(np.ones(10))
        k = make_kernel_at(0.5, spec(H=0.05))
        pts = integration_breaks(u, k, 0.5)
        assert pts[0] == pytest.approx(0.4) and pts[-1] == pytest.approx(0.6)
        # edges at 0.4, 0.5, 0.6 coincide with knots and are merged
        np.testing.assert_allclose(pts, [0.4, 0.45, 0.5, 0.55, 0.6])

    def test_periodic_images(self):
        u = pc(np.ones(10), periodic=True)
        k = make_kernel_at(0.0, spec(H=0.05, boundary_mode="periodic"))
        pts = integration_breaks(u, k, 0.0)
        np.testing.assert_allclose(pts, [-0.1, -0.05, 0.0, 0.05, 0.1], atol=1e-15)


class TestInvariants:
    def test_linearity(self, rng):
        f, g = rng.normal(size=50), rng.normal(size=50)
        s = spec(generalized_spline=True)
        xs = np.linspace(0, 1, 37)
        lhs = filter_grid(pc(2.0 * f - 0.7 * g), s, xs)
        rhs = 2.0 * filter_grid(pc(f), s, xs) - 0.7 * filter_grid(pc(g), s, xs)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_periodic_translation_equivariance(self, rng):
        n = 32
        f = rng.normal(size=n)
        s = spec(H=4 / n, boundary_mode="periodic")
        xs = (np.arange(n) + 0.5) / n
        out = filter_grid(pc(f, periodic=True), s, xs)
        shifted = filter_grid(pc(np.roll(f, 1), periodic=True), s, xs)
        np.testing.assert_allclose(shifted, np.roll(out, 1), atol=1e-12)

    def test_periodic_endpoints_agree(self, rng):
        u = pc(np.sin(2 * np.pi * (np.arange(20) + 0.5) / 20), periodic=True)
        s = spec(H=0.1, boundary_mode="periodic")
        a, b = filter_grid(u, s, [0.0, 1.0])
        assert a == pytest.approx(b, abs=1e-13)

    @pytest.mark.parametrize("gen", [False, True])
    def test_boundary_preservation_adaptive(self, rng, gen):
        f = rng.normal(size=100)
        s = spec(adaptive=True, H_int=0.1, h_grid=0.01, generalized_spline=gen)
        lo, hi = filter_grid(pc(f), s, [0.0, 1.0])
        assert lo == pytest.approx(f[0], abs=1e-12)
        assert hi == pytest.approx(f[-1], abs=1e-12)

    def test_thread_count_does_not_change_results(self, rng):
        u = pc(rng.normal(size=60))
        s = spec(generalized_spline=True)
        xs = rng.uniform(0, 1, 64)
        one = filter_grid(u, s, xs, n_jobs=1)
        four = filter_grid(u, s, xs, n_jobs=4)
        np.testing.assert_array_equal(one, four)

    def test_constant_grid(self):
        u = pc(np.full(25, -1.25))
        out = filter_grid(u, spec(adaptive=True, H_int=0.1, h_grid=0.04), (np.arange(25) + 0.5) / 25)
        np.testing.assert_allclose(out, -1.25, atol=1e-13)

    def test_rejects_points_outside(self):
        with pytest.raises(InvalidInputError):
            filter_grid(pc(np.ones(10)), spec(), [1.2])


def test_max_threads_env(monkeypatch):
    monkeypatch.setenv("SIAC_THREADS", "3")
    assert max_threads() == 3
    monkeypatch.setenv("SIAC_THREADS", "x")
    with pytest.raises(InvalidInputError):
        max_threads()
    monkeypatch.delenv("SIAC_THREADS")
    assert max_threads() == 1
