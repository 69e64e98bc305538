"""Support functions, shape summaries, Minkowski sums and the Hausdorff metric."""
import math

import numpy as np
import pytest
from scipy.special import ellipe

from hessian_symm.geometry import (
    Ball,
    Ellipsoid,
    FourierBody2D,
    Polygon,
    Polytope3D,
    diameter,
    direction,
    hausdorff_distance,
    hausdorff_distance_grid,
    homothety,
    minkowski_add_ball,
    shape_summary,
    sphere_grid,
    support,
    translate,
    unit_ball_volume,
)


def test_unit_ball_volume():
    assert unit_ball_volume(1) == pytest.approx(2.0, rel=1e-15)
    assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3, rel=1e-15)


@pytest.mark.parametrize("n,nodes", [(2, 256), (3, 590)])
def test_sphere_grid_weights(n, nodes):
    dirs, w = sphere_grid(n, nodes)
    np.testing.assert_allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-14)
    assert w.sum() == pytest.approx(2 * math.pi if n == 2 else 4 * math.pi, rel=1e-12)


def test_support_examples(square):
    assert support(square, [1.0, 0.0]) == pytest.approx(1.0, abs=1e-15)
    assert support(Ball(np.zeros(3), 2.5), direction([0.3, -0.4, 0.5])) == pytest.approx(2.5, abs=1e-14)
    tri = Polygon(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    assert support(tri, np.array([1.0, 1.0]) / math.sqrt(2)) == pytest.approx(1 / math.sqrt(2), abs=1e-15)


def test_support_rejects_non_unit(square):
    with pytest.raises(ValueError):
        support(square, [2.0, 0.0])


def test_polygon_rejects_nonconvex():
    with pytest.raises(ValueError):
        Polygon(np.array([[0.0, 0.0], [1.0, 0.0], [0.2, 0.2], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        Polygon(np.zeros((0, 2)))


def test_fourier_rejects_nonconvex():
    with pytest.raises(ValueError):
        FourierBody2D(1.0, [0.0, 0.5], [0.0, 0.0])


def test_shape_summary_ball():
    s = shape_summary(Ball(np.array([0.5, -1.0]), 2.0))
    assert s.diameter == pytest.approx(4.0)
    assert s.mean_width == pytest.approx(4.0)
    np.testing.assert_allclose(s.steiner_point, [0.5, -1.0])


def test_shape_summary_square(square):
    s = shape_summary(square)
    assert s.diameter == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    # Cauchy: w = perimeter / pi
    assert s.mean_width == pytest.approx(8 / math.pi, abs=1e-12)
    np.testing.assert_allclose(s.steiner_point, 0.0, atol=1e-14)


def test_mean_width_quadrature_ellipse():
    a, b = 1.5, 0.5
    # planar mean width is perimeter / pi; the perimeter is a complete elliptic integral
    perimeter = 4 * a * ellipe(1 - (b / a) ** 2)
    assert shape_summary(Ellipsoid(np.zeros(2), [a, b])).mean_width == pytest.approx(perimeter / math.pi, rel=1e-10)


def test_thin_rectangle_width_ratio():
    ratios = []
    for eps in (1e-1, 1e-2, 1e-3):
        r = Polygon(np.array([[-1, -eps], [1, -eps], [1, eps], [-1, eps]], dtype=float))
        s = shape_summary(r)
        ratios.append(s.mean_width / s.diameter)
    assert ratios[-1] == pytest.approx(2 / math.pi, abs=1e-3)
    assert all(x > 2 / math.pi for x in ratios)


def test_polytope_summary_cube(cube):
    s = shape_summary(cube)
    assert s.diameter == pytest.approx(math.sqrt(3), abs=1e-12)
    # mean width of the unit cube is 3/2
    assert s.mean_width == pytest.approx(1.5, abs=1e-12)
    np.testing.assert_allclose(s.steiner_point, 0.5, atol=1e-12)


def test_ellipse_steiner_point_is_center():
    s = shape_summary(Ellipsoid(np.array([0.3, 0.1, -0.2]), [1.0, 0.7, 0.4]))
    np.testing.assert_allclose(s.steiner_point, [0.3, 0.1, -0.2], atol=1e-12)


def test_minkowski_add_ball(square):
    grown = minkowski_add_ball(square, 1.0)
    assert support(grown, [1.0, 0.0]) == pytest.approx(2.0)
    b = minkowski_add_ball(Ball(np.zeros(2), 1.5), 0.5)
    assert isinstance(b, Ball) and b.radius == pytest.approx(2.0)
    with pytest.raises(ValueError):
        minkowski_add_ball(square, -0.1)


def test_parallel_body_summary(square):
    s = shape_summary(minkowski_add_ball(square, 0.5))
    assert s.mean_width == pytest.approx(8 / math.pi + 1.0, abs=1e-12)


def test_hausdorff_examples(square):
    assert hausdorff_distance(Ball(np.zeros(3), 1.0), Ball(np.zeros(3), 2.0)) == pytest.approx(1.0)
    v = np.array([0.3, -0.4])
    assert hausdorff_distance(square, translate(square, v)) == pytest.approx(0.5, abs=1e-12)
    sb = shape_summary(square).steiner_ball
    assert hausdorff_distance(square, sb) == pytest.approx(4 / math.pi - 1, abs=1e-12)
    assert hausdorff_distance_grid(square, sb, grid=8192) == pytest.approx(4 / math.pi - 1, abs=1e-10)
    with pytest.raises(ValueError):
        hausdorff_distance(square, Ball(np.zeros(3), 1.0))


def test_hausdorff_exact_vs_grid_polytopes():
    rng = np.random.default_rng(5)
    a = Polytope3D(rng.normal(size=(25, 3)))
    b = Polytope3D(rng.normal(size=(25, 3)))
    exact = hausdorff_distance(a, b)
    approx = hausdorff_distance_grid(a, b)
    assert approx <= exact + 1e-12
    assert approx == pytest.approx(exact, rel=1e-3)


def test_homothety_examples(square):
    assert np.array_equal(homothety(square, 1.0).vertices, square.vertices)
    half = homothety(square, 0.5)
    np.testing.assert_allclose(half.vertices, 0.5 * square.vertices)
    d = hausdorff_distance(square, half)
    assert d == pytest.approx(0.5 * math.sqrt(2), abs=1e-12)
    assert d <= (1 - 0.5) * diameter(square) + 1e-12
    with pytest.raises(ValueError):
        homothety(square, 0.0)


@pytest.mark.parametrize("body", [
    Ellipsoid(np.array([0.2, -0.1]), [1.3, 0.6]),
    FourierBody2D(1.0, [0.05, 0.03], [0.0, -0.02]),
    Polygon.hull(np.random.default_rng(2).normal(size=(12, 2))),
])
def test_homothety_translate_support(body):
    dirs, _ = sphere_grid(2, 128)
    c = np.array([0.4, 0.1])
    np.testing.assert_allclose(homothety(body, 0.3, c).support(dirs),
                               0.3 * body.support(dirs) + 0.7 * dirs @ c, atol=1e-12)
    np.testing.assert_allclose(translate(body, c).support(dirs), body.support(dirs) + dirs @ c, atol=1e-12)


def test_degenerate_bodies_flagged():
    seg = Polygon(np.array([[0.0, 0.0], [1.0, 0.0]]))
    assert seg.degenerate
    flat = Polytope3D(np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float))
    assert flat.degenerate


def test_contains(square, ellipse):
    pts = np.array([[0.0, 0.0], [0.99, 0.99], [1.01, 0.0]])
    assert list(square.contains(pts)) == [True, True, False]
    assert list(ellipse.contains(np.array([[1.19, 0.0], [1.21, 0.0]]))) == [True, False]


def test_fourier_boundary_support_consistency():
    body = FourierBody2D(1.0, [0.0, 0.04, 0.01], [0.0, 0.02, 0.0])
    th = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    u = np.column_stack([np.cos(th), np.sin(th)])
    x = body.boundary(th)
    np.testing.assert_allclose(np.sum(x * u, axis=1), body.h(th), atol=1e-13)
    np.testing.assert_allclose(body.distance(x), 0.0, atol=1e-6)
