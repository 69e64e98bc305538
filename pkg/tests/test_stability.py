"""Explicit constants, Groemer-Schneider bounds, the propagation lemma and the power bound."""
import math

import numpy as np
import pytest

from hessian_symm.geometry import Ball, Ellipsoid, Polygon, homothety
from hessian_symm.report import FAIL, HYPOTHESIS_NOT_MET, PASS, VACUOUS
from hessian_symm.stability import (
    FORMS,
    ExcludedCaseError,
    beta,
    constants_table,
    format_constants,
    gs_all,
    gs_bound_check,
    gs_worst,
    half_power_bound,
    mu_threshold,
    propagation_check,
    s_m,
)


def test_s_m():
    assert s_m(2, 1.0, 1.0) == 2.0
    assert s_m(1, 3.7, -2.0) == 1.0
    assert s_m(3, 2.0, 3.0) == 9 + 6 + 4
    with pytest.raises(ValueError):
        s_m(0, 1.0, 1.0)


def test_beta_2_closed_form():
    # at n = 2 the first branch 3 / (pi^2 n (n+2) 2^n) is active; omega_1 = 2
    assert beta(2) == pytest.approx(1 / (80 * math.pi**2), rel=1e-15)
    assert constants_table(2, 1).alpha_branch == 0


def test_kappa3_2_1():
    tab = constants_table(2, 1)
    assert tab.kappa3 == pytest.approx(3 * beta(2) / (4 * math.pi), rel=1e-15)
    assert tab.kappa3 == pytest.approx(3.0235813531124519e-4, rel=1e-14)


def test_beta_formula_relation():
    for n in range(2, 7):
        tab = constants_table(n, 1)
        assert tab.beta_n == beta(n)
        assert tab.omega_nm1 == pytest.approx(math.pi ** ((n - 1) / 2) / math.gamma((n + 1) / 2), rel=1e-14)


@pytest.mark.parametrize("n", range(2, 7))
def test_constants_positive(n):
    for k in range(1, n):
        tab = constants_table(n, k)
        for key, val in tab.as_dict().items():
            if isinstance(val, float):
                assert val > 0, key
        for key in ("C2", "C3", "c4", "c5"):
            assert getattr(tab, key) > 0


def test_stated_reassembled_relations():
    for n in range(2, 7):
        for k in range(1, n):
            tab = constants_table(n, k)
            assert tab.C2_stated == pytest.approx(k * tab.C2_reassembled, rel=1e-13)
            assert tab.C3_reassembled == pytest.approx(tab.C3_stated / (2 * (n + 2)), rel=1e-13)
            assert tab.c4_stated == pytest.approx(tab.c4_reassembled, rel=1e-13)
            assert tab.C3 == min(tab.C3_stated, tab.C3_reassembled)
            assert tab.c5 == min(tab.c5_stated, tab.c5_reassembled)


def test_exponents():
    tab = constants_table(3, 2)
    assert (tab.exp_gs, tab.exp_talenti, tab.exp_polya) == (3.0, 4.0, 6.0)


def test_body_dependent_constants():
    tab = constants_table(3, 1)
    assert tab.C1(2.0) == pytest.approx(tab.c1 * 2.0)
    assert tab.C4(2.0) == pytest.approx(tab.c4 / 4.0)
    assert tab.C5(2.0) == pytest.approx(tab.c5 / 2.0**5)


def test_excluded_cases():
    with pytest.raises(ExcludedCaseError, match="excluded"):
        constants_table(3, 3)
    with pytest.raises(ExcludedCaseError):
        constants_table(3, 0)
    with pytest.raises(ValueError):
        constants_table(1, 1)


def test_format_constants():
    text = format_constants(constants_table(2, 1))
    lines = dict(line.split("=", 1) for line in text.splitlines())
    assert float(lines["beta_n"]) == beta(2)
    assert lines["beta_n"].startswith("0.0012665")
    assert {"C2", "C3", "c4", "c5", "kappa5"} <= lines.keys()


def test_mu_threshold():
    assert mu_threshold(-1.0, 0.5, 2.0, 2) == pytest.approx(-0.5 / 16)


def test_gs_ball():
    for form in FORMS:
        r = gs_bound_check(Ball(np.zeros(3), 1.5), 0, 2, form)
        assert abs(r.lhs) <= 1e-12 and r.rhs == 0.0
        assert r.status == VACUOUS


def test_gs_square_mean_radii(square):
    r = gs_bound_check(square, 0, 1, "mean_radii")
    z0, z1 = 2 / math.sqrt(math.pi), 4 / math.pi
    assert r.lhs == pytest.approx((z1**2 - z0**2) / z0**2, rel=1e-12)
    assert r.lhs == pytest.approx(4 / math.pi - 1, rel=1e-12)
    alpha = 1 - math.pi / 4
    assert r.rhs == pytest.approx(3 * beta(2) / (2 * math.pi) * alpha**2.5, rel=1e-10)
    assert r.rhs == pytest.approx(1.2901e-5, rel=1e-4)
    assert r.status == PASS


def test_gs_forms_ordering_on_square(square):
    full = gs_bound_check(square, 0, 1, "full")
    simp = gs_bound_check(square, 0, 1, "simplified")
    # W_{n-2} <= W_{n-1}^2 / omega_n makes the full bound the larger one
    assert full.rhs >= simp.rhs
    assert full.rhs == pytest.approx(1.6427e-5, rel=1e-4)
    assert simp.rhs == pytest.approx(1.2901e-5, rel=1e-4)
    assert full.lhs == pytest.approx(simp.lhs, rel=1e-14)
    assert full.status == simp.status == PASS


def test_gs_3d_ellipsoid():
    reports = gs_all(Ellipsoid(np.zeros(3), [1.3, 1.0, 0.6]))
    assert len(reports) == 3 * len(FORMS)
    assert all(r.status == PASS for r in reports)


def test_gs_worst(square):
    w = gs_worst(square)
    assert w.margin == min(r.margin for r in gs_all(square))


def test_gs_degenerate_segment():
    r = gs_bound_check(Polygon(np.array([[0.0, 0.0], [1.0, 0.0]])), 0, 1)
    assert r.status == VACUOUS
    assert "degenerate" in r.extra


def test_gs_index_validation(square):
    with pytest.raises(ValueError):
        gs_bound_check(square, 1, 1)
    with pytest.raises(ValueError):
        gs_bound_check(square, 0, 1, "bogus")


def test_propagation_identity(square):
    r = propagation_check(square, square)
    assert r.status == PASS
    assert r.lhs == pytest.approx(2 * r.rhs)


def test_propagation_shrunk_square(square):
    eps = 0.27324 / (8 * 2 * math.sqrt(2))
    inner = homothety(square, 1 - eps)
    r = propagation_check(square, inner)
    assert r.status == PASS
    assert r.extra["d_outer_inner"] <= r.extra["d_outer_ball"] / 8 + 1e-15


def test_propagation_hypothesis_not_met(square):
    r = propagation_check(square, homothety(square, 0.5))
    assert r.status == HYPOTHESIS_NOT_MET
    assert r.status != FAIL


def test_propagation_ball():
    b = Ball(np.zeros(2), 1.0)
    assert propagation_check(b, b).status == VACUOUS
    assert propagation_check(b, Ball(np.zeros(2), 0.9)).status == HYPOTHESIS_NOT_MET


def test_propagation_rejects_non_nested(square):
    with pytest.raises(ValueError):
        propagation_check(square, homothety(square, 1.1))


def test_half_power_examples():
    assert half_power_bound(0.7, 0.0) == (1.0, 1.0, True)
    assert half_power_bound(1.0, 1.0) == (2.0, 1.5, True)
    with pytest.raises(ValueError):
        half_power_bound(0.0, 0.5)
    with pytest.raises(ValueError):
        half_power_bound(1.0, 1.5)


def test_half_power_grid():
    a = np.linspace(5.0 / 100, 5.0, 100)
    x = np.linspace(0.0, 1.0, 100)
    results = [half_power_bound(ai, xi) for ai in a for xi in x]
    assert all(ok for _, _, ok in results)
    # equality only at x = 0
    assert all(lhs > rhs for (lhs, rhs, _), (ai, xi) in zip(results, [(ai, xi) for ai in a for xi in x]) if xi > 0)
