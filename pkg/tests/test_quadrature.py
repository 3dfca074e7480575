"""Quadrature engine against closed-form integrals."""

import math

import numpy as np
import pytest

from skewsum.errors import InvalidArgumentError
from skewsum.quadrature import QuadratureError, integrate_1d, integrate_2d


class TestOneDimensional:
    def test_sine_hump(self):
        assert integrate_1d(np.sin, 0.0, math.pi) == pytest.approx(2.0, rel=1e-10)

    def test_standard_normal_mass(self):
        f = lambda x: np.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)
        assert integrate_1d(f, -9.0, 9.0) == pytest.approx(1.0, rel=1e-10)

    def test_needs_refinement(self):
        # Narrow spike forces subdivision but stays integrable.
        f = lambda x: np.exp(-((x - 0.2) ** 2) / 2e-6)
        got = integrate_1d(f, -1.0, 1.0, rel_tol=1e-9)
        assert got == pytest.approx(math.sqrt(2e-6 * math.pi), rel=1e-8)

    def test_budget_exhaustion_raises(self):
        rough = lambda x: np.sin(1.0 / (np.abs(x) + 1e-9))
        with pytest.raises(QuadratureError):
            integrate_1d(rough, -1.0, 1.0, rel_tol=1e-13, max_panels=8)

    def test_invalid_interval(self):
        with pytest.raises(InvalidArgumentError):
            integrate_1d(np.sin, 1.0, 1.0)


class TestTwoDimensional:
    def test_product_polynomial(self):
        f = lambda u, v: u * v
        assert integrate_2d(f, [[0, 1, 0, 1]]) == pytest.approx(0.25, rel=1e-12)

    def test_gaussian_product(self):
        f = lambda u, v: np.exp(-0.5 * (u * u + v * v)) / (2 * math.pi)
        got = integrate_2d(f, [[-8, 8, -8, 8]])
        assert got == pytest.approx(1.0, rel=1e-9)

    def test_union_of_rectangles(self):
        f = lambda u, v: np.ones_like(u)
        rects = [[0, 1, 0, 1], [1, 3, 0, 0.5]]
        assert integrate_2d(f, rects) == pytest.approx(2.0, rel=1e-12)

    def test_triangle_mask(self):
        # integrand restricted to u < v inside the unit square: area 1/2
        f = lambda u, v: (v > u).astype(float)
        got = integrate_2d(f, [[0, 1, 0, 1]], rel_tol=1e-5, max_rects=16384)
        assert got == pytest.approx(0.5, abs=1e-4)

    def test_budget_exhaustion_raises(self):
        f = lambda u, v: np.sin(50.0 / (np.abs(u * v) + 1e-12))
        with pytest.raises(QuadratureError):
            integrate_2d(f, [[0, 1, 0, 1]], rel_tol=1e-12, max_rects=8)

    def test_bad_rect_shape(self):
        with pytest.raises(InvalidArgumentError):
            integrate_2d(lambda u, v: u, [[0, 1, 0]])
