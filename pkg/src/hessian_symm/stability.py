"""Explicit constants and the quantitative Aleksandrov-Fenchel checks.

Constants are evaluated in 50-digit arithmetic (mpmath) and rounded once.
Where a theorem's stated constant and the constant reassembled from the
intermediate proof constants disagree, both are kept and the smaller one is
the one every report tests against.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from functools import lru_cache

import mpmath as mp
import numpy as np

from hessian_symm.geometry import Ball, ConvexBody, hausdorff_distance, shape_summary, sphere_grid, unit_ball_volume
from hessian_symm.quermass import quermassintegrals
from hessian_symm.report import FAIL, HYPOTHESIS_NOT_MET, PASS, VACUOUS, DeficitReport

_DPS = 50


class ExcludedCaseError(ValueError):
    """k = n (Monge-Ampere) and other index choices outside 1 <= k <= n-1."""


def _omega(n):
    return mp.pi ** (mp.mpf(n) / 2) / mp.gamma(mp.mpf(n) / 2 + 1)


def s_m(m: int, x: float, y: float) -> float:
    """s_m(x, y) = sum_{v=0}^{m-1} x^v y^(m-v-1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return float(sum(x**v * y ** (m - v - 1) for v in range(m)))


def _alpha_n(n, c):
    on1 = _omega(n - 1)
    first = 3 / (mp.pi**2 * n * (n + 2) * mp.mpf(2) ** n)
    second = 16 * (c + 2) ** (mp.mpf(n - 3) / 2) / (c - 1) ** (n - 2)
    return on1 / ((n + 1) * (n + 3)) * min(first, second), (0 if first <= second else 1)


@lru_cache(maxsize=None)
def beta(n: int) -> float:
    """beta_n = alpha_n(n omega_n / omega_{n-1})."""
    if n < 2:
        raise ValueError("n must be >= 2")
    with mp.workdps(_DPS):
        return float(_alpha_n(n, n * _omega(n) / _omega(n - 1))[0])


@dataclass(frozen=True)
class ConstantsTable:
    n: int
    k: int
    omega_n: float
    omega_nm1: float
    beta_n: float
    alpha_branch: int
    kappa1: float
    kappa2: float
    kappa3: float
    kappa4: float
    kappa5: float
    c1: float
    c4_stated: float
    c4_reassembled: float
    c5_stated: float
    c5_reassembled: float
    C2_stated: float
    C2_reassembled: float
    C3_stated: float
    C3_reassembled: float
    exp_gs: float
    exp_talenti: float
    exp_polya: float

    @property
    def c4(self) -> float:
        return min(self.c4_stated, self.c4_reassembled)

    @property
    def c5(self) -> float:
        return min(self.c5_stated, self.c5_reassembled)

    @property
    def C2(self) -> float:
        return min(self.C2_stated, self.C2_reassembled)

    @property
    def C3(self) -> float:
        return min(self.C3_stated, self.C3_reassembled)

    def C1(self, zeta_km1: float) -> float:
        return self.c1 * zeta_km1 ** (self.n - 2 * self.k)

    def C4(self, zeta_km1: float) -> float:
        return self.c4 * zeta_km1 ** (-2 * self.k)

    def C5(self, zeta_km1: float) -> float:
        return self.c5 * zeta_km1 ** (-self.k * (self.n + 2))

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@lru_cache(maxsize=None)
def constants_table(n: int, k: int) -> ConstantsTable:
    if n < 2:
        raise ValueError("n must be >= 2")
    if k == n:
        raise ExcludedCaseError("k = n (Monge-Ampere) is excluded")
    if not 1 <= k <= n - 1:
        raise ExcludedCaseError(f"k must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    with mp.workdps(_DPS):
        N, K = mp.mpf(n), mp.mpf(k)
        on, on1 = _omega(n), _omega(n - 1)
        b, branch = _alpha_n(n, N * on / on1)
        binom = mp.binomial(n - 1, k - 1)
        half_pow = mp.mpf(2) ** (-(N + 3) / 2)
        ratio = (2 * N + 3) / (2 * (N + 2))
        kappa1 = binom * half_pow * (K + 1) * (N + 1) * b / ((N - 1) * (N - K + 1))
        kappa2 = kappa1 / (K * (K + 1)) * ratio ** (n - k)
        kappa3 = (N + 1) * (K + 1) * b / (2 * N * (N - 1) * (N - K + 1) * on)
        kappa4 = kappa3 / (2 * K)
        kappa5 = kappa4 * half_pow
        c1 = (binom * (on1 / (N * on)) ** (k + 1) * (N + 1) * b
              / (mp.mpf(2) ** ((N + 3) / 2) * K * (N - 1) * (N - K + 1)) * ratio ** (n - k))
        c4_stated = (binom * (K + 1) * (N + 1) * b * on1 ** (k + 1)
                     / (mp.mpf(2) ** ((N + 3) / 2) * K * N ** (k + 1) * (N - 1) * (N - K + 1) * on ** (k + 2))
                     * ratio ** (n - k))
        c4_re = (K + 1) * c1 / on
        c5_stated = c1 * (K + 1) / N ** (k + 1) * on1 ** (k + 1) / on ** (2 * (k + 1))
        c5_re = (K + 1) / on ** (k + 1) * c1
        C2_stated = ((N + 1) * (K + 1) * b * on1
                     / (mp.mpf(2) ** ((N + 9) / 2) * N**2 * (N + 2) * (N - 1) * (N - K + 1) * on**2))
        C2_re = kappa5 / (2 * (N + 2)) * on1 / (N * on)
        C3_stated = (ratio**n * on1 * b / (N**2 * on**2) * (N + 1) * (K + 1) / (K * (N - 1) * (N - K + 1))
                     * mp.mpf(2) ** (-(N + 7) / 2))
        C3_re = kappa5 * ratio**n * on1 / (2 * N * (N + 2) * on)
        vals = dict(
            omega_n=on, omega_nm1=on1, beta_n=b, kappa1=kappa1, kappa2=kappa2, kappa3=kappa3,
            kappa4=kappa4, kappa5=kappa5, c1=c1, c4_stated=c4_stated, c4_reassembled=c4_re,
            c5_stated=c5_stated, c5_reassembled=c5_re, C2_stated=C2_stated, C2_reassembled=C2_re,
            C3_stated=C3_stated, C3_reassembled=C3_re,
        )
        vals = {key: float(v) for key, v in vals.items()}
    return ConstantsTable(
        n=n, k=k, alpha_branch=branch,
        exp_gs=(n + 3) / 2, exp_talenti=(n + 5) / 2, exp_polya=(n + 3) / 2 + k + 1,
        **vals,
    )


def mu_threshold(m: float, d_h: float, diameter: float, n: int) -> float:
    """mu_bar = m d_H(Omega, B_R) / (2 (n+2) D(Omega))."""
    return m / (2 * (n + 2)) * d_h / diameter


# ------------------------------------------------------------------ GS bounds

FORMS = ("full", "simplified", "mean_radii")


def _steiner_gap(body: ConvexBody) -> float:
    if isinstance(body, Ball):
        return 0.0
    return hausdorff_distance(body, shape_summary(body).steiner_ball)


def _gs_eval(q, d_h: float, i: int, j: int, form: str, label) -> DeficitReport:
    n = q.n
    on = unit_ball_volume(n)
    name = f"gs_{form}_{i}{j}"
    extra = {"i": i, "j": j, "form": form, "d_H": d_h}
    if q[i] <= 0.0:
        extra["degenerate"] = f"W_{i} = 0"
        return DeficitReport(name, 0.0, 0.0, VACUOUS, n=n, body_id=label, extra=extra)
    b = beta(n)
    p = (n + 3) / 2
    e = (n - j) * (n - i)
    if form == "mean_radii":
        zi, zj = q.mean_radius(i), q.mean_radius(j)
        lhs = (zj**e - zi**e) / zi**e
    else:
        lhs = (on ** (i - j) * q[j] ** (n - i) - q[i] ** (n - j)) / q[i] ** (n - j)
    if form == "full":
        rhs = ((n + 1) / (n * (n - 1)) * s_m(j - i, q[n - 1] ** 2 / on, q[n - 2]) * b / q[n - 2] ** (j - i)
               * (on / q[n - 1]) ** ((n - 1) / 2) * d_h**p)
    elif form == "simplified":
        rhs = (n + 1) * b / (n * (n - 1) * on) * (on * d_h / q[n - 1]) ** p
    else:
        rhs = (n + 1) * b / (n * (n - 1) * on) * (d_h / q.mean_radius(n - 1)) ** p
    alpha = d_h / q.mean_radius(n - 1)
    if alpha == 0.0 and abs(lhs) <= 1e-8 and rhs == 0.0:
        status = VACUOUS
    else:
        status = PASS if (lhs >= rhs - 1e-12 and lhs >= -1e-12) else FAIL
    return DeficitReport(name, float(lhs), float(rhs), status, n=n, alpha=float(alpha), body_id=label,
                         constants={"beta_n": b}, extra=extra)


def gs_bound_check(body: ConvexBody, i: int, j: int, form: str = "simplified") -> DeficitReport:
    """Quantitative Aleksandrov-Fenchel deficit between W_i and W_j.

    Passes iff lhs >= rhs - 1e-12 and lhs >= -1e-12 (the classical inequality).
    A vanishing W_i makes the inequality vacuous and is reported as such.
    """
    n = body.dim
    if not 0 <= i < j <= n - 1:
        raise ValueError(f"need 0 <= i < j <= {n - 1}")
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}")
    return _gs_eval(quermassintegrals(body), _steiner_gap(body), i, j, form, body.label)


def gs_all(body: ConvexBody) -> list[DeficitReport]:
    """Every admissible (i, j) pair in every form, sharing one W and d_H evaluation."""
    n = body.dim
    q, d_h = quermassintegrals(body), _steiner_gap(body)
    return [_gs_eval(q, d_h, i, j, f, body.label) for i in range(n) for j in range(i + 1, n) for f in FORMS]


# ------------------------------------------------------------ propagation lemma


def _nested(outer: ConvexBody, inner: ConvexBody, tol: float = 1e-10) -> bool:
    dirs, _ = sphere_grid(outer.dim, 4096 if outer.dim == 2 else 5810)
    return bool(np.all(inner.support(dirs) <= outer.support(dirs) + tol))


def propagation_check(outer: ConvexBody, inner: ConvexBody) -> DeficitReport:
    """Asymmetry propagation from a body to a nearby convex subset."""
    if outer.dim != inner.dim:
        raise ValueError("bodies live in different dimensions")
    if not _nested(outer, inner):
        raise ValueError("inner body is not contained in the outer body")
    n = outer.dim
    d_ou = hausdorff_distance(outer, inner)
    d_o = _steiner_gap(outer)
    d_u = _steiner_gap(inner)
    extra = {"d_outer_inner": d_ou, "d_outer_ball": d_o}
    lhs, rhs = d_u, 0.5 * d_o
    hypothesis = d_ou <= d_o / (2 * (n + 2)) + 1e-15
    if not hypothesis:
        status = HYPOTHESIS_NOT_MET
    elif d_o == 0.0:
        status = VACUOUS if lhs <= 1e-12 else PASS
    else:
        status = PASS if lhs >= rhs - 1e-12 else FAIL
    return DeficitReport("propagation", float(lhs), float(rhs), status, n=n, body_id=outer.label, extra=extra)


# ------------------------------------------------------------------ power bound


def half_power_bound(alpha: float, x: float) -> tuple[float, float, bool]:
    """(1 + x)^alpha >= 1 + alpha x / 2 for alpha > 0, 0 <= x <= 1."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    lhs = (1.0 + x) ** alpha
    rhs = 1.0 + alpha * x / 2.0
    return lhs, rhs, lhs >= rhs


def gs_worst(body: ConvexBody) -> DeficitReport:
    """The smallest-margin report over all admissible (i, j) and all forms."""
    reports = gs_all(body)
    if any(r.status == FAIL for r in reports):
        worst = min((r for r in reports if r.status == FAIL), key=lambda r: r.margin)
    else:
        worst = min(reports, key=lambda r: r.margin)
    return worst


def format_constants(table: ConstantsTable) -> str:
    lines = []
    for key, val in table.as_dict().items():
        lines.append(f"{key}={format(val, '.17g') if isinstance(val, float) else val}")
    for key in ("C2", "C3", "c4", "c5"):
        lines.append(f"{key}={format(getattr(table, key), '.17g')}")
    return "\n".join(lines)


__all__ = [
    "ConstantsTable",
    "ExcludedCaseError",
    "beta",
    "constants_table",
    "format_constants",
    "gs_all",
    "gs_bound_check",
    "gs_worst",
    "half_power_bound",
    "mu_threshold",
    "propagation_check",
    "s_m",
]
