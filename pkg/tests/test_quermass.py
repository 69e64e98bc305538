"""Quermassintegrals, mean radii, the Steiner polynomial and Hausdorff asymmetry."""
import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import elliprg

from hessian_symm.geometry import Ball, Ellipsoid, FourierBody2D, Polygon, Polytope3D, homothety, minkowski_add_ball
from hessian_symm.quermass import (
    DegenerateBodyError,
    QuermassVector,
    UnsupportedBodyError,
    hausdorff_asymmetry,
    mean_radius,
    monte_carlo_parallel_volume,
    quermassintegrals,
    steiner_fit,
    steiner_polynomial,
    steiner_volume_check,
)


def test_unit_square(unit_square):
    np.testing.assert_allclose(quermassintegrals(unit_square).w, (1.0, 2.0, math.pi), atol=1e-12)


def test_unit_cube(cube):
    np.testing.assert_allclose(quermassintegrals(cube).w, (1.0, 2.0, math.pi, 4 * math.pi / 3), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("R", [0.5, 2.0])
def test_ball(n, R):
    w = quermassintegrals(Ball(np.zeros(n), R)).w
    on = math.pi if n == 2 else 4 * math.pi / 3
    np.testing.assert_allclose(w, [on * R ** (n - i) for i in range(n + 1)], rtol=1e-14)


@pytest.mark.parametrize("n", [2, 3])
def test_ellipsoid_as_ball(n):
    w = quermassintegrals(Ellipsoid(np.zeros(n), np.full(n, 0.7))).w
    w_ball = quermassintegrals(Ball(np.zeros(n), 0.7)).w
    np.testing.assert_allclose(w, w_ball, rtol=1e-8)


def test_ellipsoid_3d_against_elliptic_integrals():
    a, b, c = 1.5, 1.0, 0.4
    q = quermassintegrals(Ellipsoid(np.zeros(3), [a, b, c]))
    surface = 4 * math.pi * a * b * c * elliprg(a**-2, b**-2, c**-2)
    h = lambda ph, th: math.sqrt((a * math.sin(th) * math.cos(ph)) ** 2 + (b * math.sin(th) * math.sin(ph)) ** 2
                                 + (c * math.cos(th)) ** 2) * math.sin(th)
    mean_h = integrate.dblquad(h, 0, math.pi, 0, 2 * math.pi, epsabs=1e-13)[0] / (4 * math.pi)
    assert q[0] == pytest.approx(4 * math.pi * a * b * c / 3, rel=1e-12)
    assert q[1] == pytest.approx(surface / 3, rel=1e-8)
    # W_2 = omega_3 times the mean half-width
    assert q[2] == pytest.approx(4 * math.pi / 3 * mean_h, rel=1e-8)


def test_fourier_body_closed_form():
    body = FourierBody2D(1.0, [0.0, 0.05], [0.0, 0.02])
    q = quermassintegrals(body)
    # area = pi a0^2 - (pi/2) sum (j^2 - 1)(a_j^2 + b_j^2)
    area = math.pi - math.pi / 2 * 3 * (0.05**2 + 0.02**2)
    assert q[0] == pytest.approx(area, rel=1e-12)
    assert q[1] == pytest.approx(math.pi, rel=1e-14)


def test_fourier_matches_polygon_approximation():
    body = FourierBody2D(1.0, [0.0, 0.03, 0.02], [0.0, 0.0, -0.01])
    th = np.linspace(0, 2 * np.pi, 4000, endpoint=False)
    poly = Polygon.hull(body.boundary(th))
    np.testing.assert_allclose(quermassintegrals(body).w, quermassintegrals(poly).w, rtol=1e-5)


def test_steiner_polynomial_examples(cube, unit_square):
    assert steiner_polynomial(quermassintegrals(cube), 1.0) == pytest.approx(1 + 6 + 3 * math.pi + 4 * math.pi / 3)
    # area + perimeter * rho + pi rho^2
    assert steiner_polynomial(quermassintegrals(unit_square), 0.5) == pytest.approx(1 + 4 * 0.5 + math.pi * 0.25)
    est, err = monte_carlo_parallel_volume(unit_square, 0.5, 400_000, 1)
    assert abs(est - (3 + math.pi / 4)) <= 4 * err
    for n in (2, 3):
        q = quermassintegrals(Ball(np.zeros(n), 1.3))
        on = math.pi if n == 2 else 4 * math.pi / 3
        assert steiner_polynomial(q, 0.4) == pytest.approx(on * 1.7**n, rel=1e-14)


@pytest.mark.parametrize("body_name", ["square", "cube", "ellipse", "fourier", "ellipsoid"])
def test_steiner_volume_check_families(body_name, unit_square, cube, ellipse):
    body = {
        "square": unit_square,
        "cube": cube,
        "ellipse": ellipse,
        "fourier": FourierBody2D(1.0, [0.0, 0.05, 0.02], [0.0, 0.0, 0.03]),
        "ellipsoid": Ellipsoid(np.zeros(3), [1.2, 1.0, 1 / 1.2]),
    }[body_name]
    for i, rho in enumerate((0.1, 0.5, 1.0, 2.0)):
        assert steiner_volume_check(body, rho, samples=200_000, seed=i).passed


def test_steiner_check_rejects():
    with pytest.raises(ValueError):
        steiner_volume_check(Ball(np.zeros(2), 1.0), 0.0)
    with pytest.raises(ValueError):
        steiner_volume_check(Ball(np.zeros(2), 1.0), 1.0, samples=1000)


def test_monte_carlo_is_seeded(cube):
    assert monte_carlo_parallel_volume(cube, 0.5, 100_000, 7) == monte_carlo_parallel_volume(cube, 0.5, 100_000, 7)


def test_steiner_fit_recovers_square(unit_square):
    w, err = steiner_fit(unit_square, samples=200_000, seed=3)
    assert np.all(np.abs(w - (1.0, 2.0, math.pi)) <= 4 * err)


def test_mean_radius_examples(square):
    assert mean_radius(Ball(np.zeros(3), 1.7), 1) == 1.7
    q = quermassintegrals(square)
    assert q.mean_radius(0) == pytest.approx(2 / math.sqrt(math.pi), abs=1e-12)
    assert q.mean_radius(1) == pytest.approx(4 / math.pi, abs=1e-12)
    with pytest.raises(ValueError):
        q.mean_radius(2)


def test_degenerate_segment():
    seg = Polygon(np.array([[0.0, 0.0], [1.5, 0.0]]))
    q = quermassintegrals(seg)
    assert q[0] == 0.0 and q[1] == pytest.approx(1.5)
    assert q.mean_radius(0) == 0.0
    assert q.mean_radius(1) == pytest.approx(1.5 / math.pi)


def test_flat_polytope():
    flat = Polytope3D(np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float))
    q = quermassintegrals(flat)
    assert q[0] == 0.0
    # a flat unit square: surface 2, so W_1 = 2/3; W_2 = pi/3 * perimeter/... via mean width 1 (edges pi/4 each)
    assert q[1] == pytest.approx(2 / 3, abs=1e-12)
    assert q[2] > 0


def test_point_is_degenerate():
    with pytest.raises(DegenerateBodyError):
        hausdorff_asymmetry(Polygon(np.array([[0.2, 0.3]])))


def test_parallel_body_unsupported_or_exact(unit_square):
    try:
        q = quermassintegrals(minkowski_add_ball(unit_square, 0.5))
    except UnsupportedBodyError:
        return
    assert q[0] == pytest.approx(steiner_polynomial(quermassintegrals(unit_square), 0.5))


def test_quermass_vector_length():
    with pytest.raises(ValueError):
        QuermassVector(2, (1.0, 2.0))


@pytest.mark.parametrize("t", [0.3, 0.7])
def test_scaling(t, cube):
    for body in (cube, Ellipsoid(np.zeros(3), [1.3, 1.0, 0.5]), FourierBody2D(1.0, [0.0, 0.05], [0.01, 0.0])):
        n = body.dim
        w0, w1 = quermassintegrals(body).w, quermassintegrals(homothety(body, t)).w
        np.testing.assert_allclose(w1, [t ** (n - i) * w0[i] for i in range(n + 1)], rtol=1e-9)


def test_asymmetry_examples(square):
    assert hausdorff_asymmetry(Ball(np.zeros(2), 3.0)).alpha == 0.0
    rec = hausdorff_asymmetry(square)
    assert rec.alpha == pytest.approx(1 - math.pi / 4, abs=1e-12)
    assert rec.zeta_nm1 == pytest.approx(4 / math.pi)
    assert isinstance(rec.alpha, float)


def test_asymmetry_linear_in_perturbation():
    # h = 1 + eps cos(2 theta): the Steiner ball is the unit disk and d_H = eps
    for eps in (0.2, 0.05, 0.01, 0.001):
        rec = hausdorff_asymmetry(FourierBody2D(1.0, [0.0, eps], [0.0, 0.0]))
        assert rec.alpha == pytest.approx(eps, rel=1e-9)


def test_asymmetry_of_ellipsoid_vanishes_for_sphere():
    assert hausdorff_asymmetry(Ellipsoid(np.zeros(3), [1.0, 1.0, 1.0])).alpha < 1e-9
