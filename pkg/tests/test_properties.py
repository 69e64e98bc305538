"""Property-based checks of geometric and analytic invariants."""
import itertools
import math

import numpy as np
from hypothesis import given, settings, strategies as st

from hessian_symm.geometry import (
    Ellipsoid,
    FourierBody2D,
    Polygon,
    Polytope3D,
    hausdorff_distance,
    homothety,
    shape_summary,
    sphere_grid,
    translate,
    unit_ball_volume,
)
from hessian_symm.khessian import elementary_symmetric, hk_energy
from hessian_symm.quermass import hausdorff_asymmetry, quermassintegrals
from hessian_symm.report import fmt
from hessian_symm.stability import half_power_bound
from hessian_symm.symmetrize import QuadraticOnEllipsoid, symmetrand

SETTINGS = settings(max_examples=60, deadline=None)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.sampled_from([2, 3])


def random_polytope(seed, n, count=None):
    rng = np.random.default_rng(seed)
    count = count or int(rng.integers(n + 2, 30))
    pts = rng.normal(size=(count, n)) * rng.uniform(0.2, 2.0, size=n)
    return Polygon.hull(pts) if n == 2 else Polytope3D(pts)


def random_fourier(seed):
    rng = np.random.default_rng(seed)
    while True:
        a, b = 0.08 * rng.uniform(-1, 1, 4), 0.08 * rng.uniform(-1, 1, 4)
        try:
            return FourierBody2D(1.0, a, b)
        except ValueError:
            continue


@SETTINGS
@given(seeds, dims, st.floats(0.01, 100.0))
def test_support_homogeneous(seed, n, lam):
    """h(lam u) = lam h(u) for lam > 0."""
    body = random_polytope(seed, n)
    dirs, _ = sphere_grid(n, 64 if n == 2 else 110)
    np.testing.assert_allclose(body.support(lam * dirs), lam * body.support(dirs), rtol=1e-12, atol=1e-12)


@SETTINGS
@given(seeds, dims, st.floats(0.05, 0.95))
def test_support_monotone_on_nested_homothets(seed, n, t):
    """A subset has the smaller support function."""
    body = random_polytope(seed, n)
    inner = homothety(body, t, body.vertices.mean(axis=0))
    dirs, _ = sphere_grid(n, 128 if n == 2 else 302)
    assert np.all(inner.support(dirs) <= body.support(dirs) + 1e-12)


@SETTINGS
@given(seeds, dims)
def test_width_diameter_sandwich(seed, n):
    """2 omega_{n-1} / (n omega_n) <= w / D <= 1."""
    s = shape_summary(random_polytope(seed, n))
    lower = 2 * unit_ball_volume(n - 1) / (n * unit_ball_volume(n))
    assert lower - 1e-12 <= s.mean_width / s.diameter <= 1 + 1e-12


def test_width_diameter_sandwich_thousand():
    """The sandwich on 1000 seeded random polytopes per dimension."""
    for n in (2, 3):
        lower = 2 * unit_ball_volume(n - 1) / (n * unit_ball_volume(n))
        for seed in range(1000):
            s = shape_summary(random_polytope(seed, n, count=12))
            assert lower - 1e-12 <= s.mean_width / s.diameter <= 1 + 1e-12


@SETTINGS
@given(seeds, dims, st.floats(1e-3, 0.3))
def test_steiner_point_stability(seed, n, eps):
    """|s(E) - s(F)| <= n d_H(E, F) for a perturbed pair."""
    rng = np.random.default_rng(seed)
    e = random_polytope(seed, n)
    f = type(e)(e.vertices + eps * rng.normal(size=e.vertices.shape)) if n == 3 else Polygon.hull(
        e.vertices + eps * rng.normal(size=e.vertices.shape))
    gap = np.linalg.norm(shape_summary(e).steiner_point - shape_summary(f).steiner_point)
    assert gap <= n * hausdorff_distance(e, f) + 1e-12


@SETTINGS
@given(seeds, seeds, seeds, dims)
def test_hausdorff_metric_axioms(s1, s2, s3, n):
    """Symmetry, triangle inequality and identity of indiscernibles."""
    a, b, c = (random_polytope(s, n) for s in (s1, s2, s3))
    ab, ba = hausdorff_distance(a, b), hausdorff_distance(b, a)
    assert abs(ab - ba) <= 1e-9
    assert ab <= hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-9
    assert hausdorff_distance(a, a) <= 1e-9
    assert ab >= 0


@SETTINGS
@given(seeds, dims, st.floats(-2, 2), st.floats(-2, 2))
def test_translation_hausdorff(seed, n, x, y):
    """d_H(K, K + v) = |v|."""
    body = random_polytope(seed, n)
    v = np.array([x, y] if n == 2 else [x, y, x - y])
    assert abs(hausdorff_distance(body, translate(body, v)) - np.linalg.norm(v)) <= 1e-9


@SETTINGS
@given(seeds, dims)
def test_zeta_chain(seed, n):
    """zeta_0 <= zeta_1 <= ... <= zeta_{n-1}."""
    z = quermassintegrals(random_polytope(seed, n)).zeta
    assert np.all(np.diff(z) >= -1e-12 * z.max())


@SETTINGS
@given(seeds, dims, st.sampled_from([0.3, 0.7, 1.9]))
def test_quermass_scaling(seed, n, t):
    """W_i(t K) = t^(n-i) W_i(K)."""
    body = random_polytope(seed, n)
    w, wt = quermassintegrals(body).w, quermassintegrals(homothety(body, t)).w
    np.testing.assert_allclose(wt, [t ** (n - i) * w[i] for i in range(n + 1)], rtol=1e-9)


@SETTINGS
@given(seeds, st.sampled_from(["polytope2", "polytope3", "fourier", "ellipsoid"]))
def test_asymmetry_in_unit_interval(seed, kind):
    """0 <= alpha_H <= 1."""
    rng = np.random.default_rng(seed)
    body = {
        "polytope2": lambda: random_polytope(seed, 2),
        "polytope3": lambda: random_polytope(seed, 3),
        "fourier": lambda: random_fourier(seed),
        "ellipsoid": lambda: Ellipsoid(np.zeros(3), rng.uniform(0.2, 2.0, 3)),
    }[kind]()
    assert 0.0 <= hausdorff_asymmetry(body).alpha <= 1.0


@SETTINGS
@given(st.floats(1e-6, 5.0), st.floats(0.0, 1.0))
def test_half_power(alpha, x):
    """(1 + x)^alpha >= 1 + alpha x / 2 on the whole domain."""
    lhs, rhs, ok = half_power_bound(alpha, x)
    assert ok and lhs >= rhs


@SETTINGS
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=6), st.data())
def test_elementary_symmetric_recursion(lam, data):
    """The coefficient recursion agrees with subset enumeration, exactly on integers."""
    k = data.draw(st.integers(1, len(lam)))
    brute = sum(math.prod(c) for c in itertools.combinations(lam, k))
    assert float(elementary_symmetric(np.array(lam, dtype=float), k)) == brute


@SETTINGS
@given(st.floats(0.5, 2.0), st.floats(0.5, 2.0), st.floats(0.1, 3.0), st.sampled_from([0.5, 2.0, 3.0]))
def test_hk_homogeneity(a, b, c, t):
    """H_k(t u) = t^(k+1) H_k(u)."""
    e = Ellipsoid(np.zeros(3), [a, b, 1.0])
    for k in (1, 2):
        h = hk_energy(QuadraticOnEllipsoid(e, c), k, quadrature=16)
        ht = hk_energy(QuadraticOnEllipsoid(e, t * c), k, quadrature=16)
        assert math.isclose(ht, t ** (k + 1) * h, rel_tol=1e-11)


@settings(max_examples=10, deadline=None)
@given(st.floats(0.4, 2.0), st.floats(0.4, 2.0), st.floats(0.4, 2.0))
def test_symmetrand_ordering_and_measure(a, b, c):
    """u*_i >= u*_j for i < j, and |{u < t}| <= |{u*_k < t}|."""
    u = QuadraticOnEllipsoid(Ellipsoid(np.zeros(3), [a, b, c]), 1.0)
    stars = [symmetrand(u, k, grid_size=64) for k in range(3)]
    r = np.linspace(0, stars[0].R, 33)
    vol = 4 * math.pi / 3 * a * b * c
    for i in range(2):
        assert np.all(stars[i](r) >= stars[i + 1](r) - 1e-9)
    for t in (-0.9, -0.5, -0.1):
        measure = vol * float(u.scale(t)) ** 3
        for s in stars:
            assert measure <= 4 * math.pi / 3 * s.inverse(t) ** 3 * (1 + 1e-9)


@SETTINGS
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_round_trip(x):
    """17 significant digits round-trip every finite binary64 value."""
    assert float(fmt(x)) == x
