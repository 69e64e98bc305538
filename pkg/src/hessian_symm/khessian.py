"""k-Hessian operator, H_k energy, radial solutions, eigenvalues and torsion.

Radial identities used throughout (r = |x|, C = binom(n-1, k-1)):

    S_k(D^2 u) r^(n-1) = (C/k) (r^(n-k) u'^k)'
    (k+1) H_k(u; B_R)  = n omega_n (C/k) int_0^R r^(n-k) u'^(k+1) dr

the second by parts, using u(R) = 0.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import splu
from scipy.special import comb

from hessian_symm.geometry import (
    Ball,
    ConvexBody,
    Ellipsoid,
    FourierBody2D,
    Polygon,
    Polytope3D,
    diameter,
    shape_summary,
    sphere_grid,
    unit_ball_volume,
)
from hessian_symm.quermass import quermassintegrals
from hessian_symm.symmetrize import (
    ConvexTestFunction,
    QuadraticOnEllipsoid,
    RadialOnBall,
    RadialProfile,
    UnsupportedFunctionError,
)


class NoExplicitSolutionError(TypeError):
    """The body/source pair has no closed-form or radial solution here."""


# ------------------------------------------------------------------- spectra


@dataclass(frozen=True)
class HessianSpectrum:
    eigenvalues: np.ndarray

    @classmethod
    def from_matrix(cls, h) -> "HessianSpectrum":
        h = np.asarray(h, dtype=float)
        return cls(np.linalg.eigvalsh(0.5 * (h + h.T)))

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def is_convex(self) -> bool:
        return bool(np.all(np.asarray(self.eigenvalues) >= -1e-12))


def elementary_symmetric(lam, k: int) -> np.ndarray:
    """e_k of the last axis of ``lam`` by the coefficient recursion of prod(1 + lam_i t)."""
    lam = np.asarray(lam, dtype=float)
    e = [np.ones(lam.shape[:-1])] + [np.zeros(lam.shape[:-1]) for _ in range(k)]
    for i in range(lam.shape[-1]):
        li = lam[..., i]
        for j in range(k, 0, -1):
            e[j] = e[j] + li * e[j - 1]
    return e[k]


def s_k_eval(spectrum, k: int) -> float:
    """S_k: k-th elementary symmetric polynomial of the Hessian eigenvalues."""
    lam = spectrum.eigenvalues if isinstance(spectrum, HessianSpectrum) else np.asarray(spectrum, dtype=float)
    n = len(lam)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    return float(elementary_symmetric(lam, k))


# ---------------------------------------------------------------- quadrature


def _gauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def panel_rule(breaks, order: int = 16):
    """Composite Gauss nodes and weights on consecutive intervals of ``breaks``."""
    breaks = np.asarray(breaks, dtype=float)
    x, w = _gauss(order)
    a, h = breaks[:-1, None], np.diff(breaks)[:, None]
    return (a + h * x).ravel(), (h * w).ravel()


def domain_quadrature(body: ConvexBody, order: int = 48) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights integrating over a body.

    Balls and ellipsoids: polar Gauss rule mapped from the unit ball.
    Polygons and polytopes: collapsed-cube Gauss rules on a triangle/tetrahedron fan.
    Fourier bodies: polar fan over the normal-angle boundary parametrization.
    """
    n = body.dim
    xg, wg = _gauss(order)
    if isinstance(body, (Ball, Ellipsoid)):
        axes = np.full(n, body.radius) if isinstance(body, Ball) else body.semi_axes
        dirs, wa = sphere_grid(n, 4 * order) if n == 2 else sphere_grid(n, min(5810, order * order // 2))
        pts = body.center + (xg[:, None, None] * dirs[None, :, :]) * axes
        wts = (wg * xg ** (n - 1))[:, None] * wa[None, :] * float(np.prod(axes))
        return pts.reshape(-1, n), wts.ravel()
    if isinstance(body, Polygon):
        if body.degenerate:
            return np.zeros((0, 2)), np.zeros(0)
        v = body.vertices
        v0, v1, v2 = v[0], v[1:-1], v[2:]
        X, Y = np.meshgrid(xg, xg, indexing="ij")
        W = np.outer(wg, wg) * X
        pts = v0 + X[None, :, :, None] * (v1 - v0)[:, None, None, :] + (X * Y)[None, :, :, None] * (v2 - v1)[:, None, None, :]
        e1, e2 = v1 - v0, v2 - v0
        jac = np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])
        return pts.reshape(-1, 2), (jac[:, None, None] * W[None]).ravel()
    if isinstance(body, Polytope3D):
        if body.degenerate:
            return np.zeros((0, 3)), np.zeros(0)
        c = body.vertices.mean(axis=0)
        t = body.triangles
        p1, p2, p3 = t[:, 0], t[:, 1], t[:, 2]
        X, Y, Z = np.meshgrid(xg, xg, xg, indexing="ij")
        W = np.einsum("i,j,k->ijk", wg, wg, wg) * X**2 * Y
        s = lambda a: a[:, None, None, None, :]  # noqa: E731
        pts = (c + X[None, ..., None] * s(p1 - c) + (X * Y)[None, ..., None] * s(p2 - p1)
               + (X * Y * Z)[None, ..., None] * s(p3 - p2))
        jac = np.abs(np.einsum("ij,ij->i", p1 - c, np.cross(p2 - c, p3 - c)))
        return pts.reshape(-1, 3), (jac[:, None, None, None] * W[None]).ravel()
    if isinstance(body, FourierBody2D):
        p = shape_summary(body).steiner_point
        m = 8 * order
        theta = 2.0 * np.pi * np.arange(m) / m
        xb = body.boundary(theta) - p
        rho = body.radius_of_curvature(theta)
        tang = np.column_stack([-np.sin(theta), np.cos(theta)]) * rho[:, None]
        jac = xb[:, 0] * tang[:, 1] - xb[:, 1] * tang[:, 0]
        pts = p + xg[:, None, None] * xb[None]
        wts = (wg * xg)[:, None] * (jac * 2.0 * np.pi / m)[None, :]
        return pts.reshape(-1, 2), wts.ravel()
    raise UnsupportedFunctionError(f"no domain quadrature for {type(body).__name__}")


def integrate(body: ConvexBody, fun: Callable, order: int = 48) -> float:
    x, w = domain_quadrature(body, order)
    return float(w @ fun(x))


# ---------------------------------------------------------------- H_k energy


def radial_hk_energy(dprofile: Callable, R: float, n: int, k: int, breaks=None, order: int = 16) -> float:
    """H_k of a radial u with u(R) = 0 on B_R, from u' alone."""
    breaks = np.linspace(0.0, R, 65) if breaks is None else breaks
    r, w = panel_rule(breaks, order)
    C = comb(n - 1, k - 1, exact=True)
    du = np.asarray(dprofile(r), dtype=float)
    integral = float(w @ (r ** (n - k) * du ** (k + 1)))
    return n * unit_ball_volume(n) * C / (k * (k + 1)) * integral


def hk_energy(u: ConvexTestFunction, k: int, quadrature: int = 48) -> float:
    """H_k(u; Omega) = (1/(k+1)) int_Omega (-u) S_k(D^2 u)."""
    n = u.dim
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}]")
    if u.family == "cone":
        raise UnsupportedFunctionError("the cone has only a distributional Hessian")
    if isinstance(u, RadialOnBall):
        prof = u.profile
        breaks = np.union1d(np.linspace(0.0, prof.R, quadrature + 1), prof.radius_grid) if prof.func is None else None
        return radial_hk_energy(prof.derivative, prof.R, n, k, breaks)
    x, w = domain_quadrature(u.domain, quadrature)
    if isinstance(u, QuadraticOnEllipsoid):
        # constant Hessian: one spectrum serves every node
        s_k = float(elementary_symmetric(np.linalg.eigvalsh(u.hessian(x[:1])[0]), k))
        return s_k * float(w @ -u(x)) / (k + 1)
    hess = u.hessian(x)
    if hess is None:
        raise UnsupportedFunctionError("no analytic Hessian for this function")
    lam = np.linalg.eigvalsh(hess)
    return float(w @ (-u(x) * elementary_symmetric(lam, k))) / (k + 1)


def quadratic_hk_closed_form(u: QuadraticOnEllipsoid, k: int) -> float:
    """(1/(k+1)) S_k c |E| 2/(n+2) with S_k = (2c)^k e_k(1/a^2)."""
    n = u.dim
    s_k = (2.0 * u.c) ** k * float(elementary_symmetric(1.0 / u.axes**2, k))
    vol = unit_ball_volume(n) * float(np.prod(u.axes))
    return s_k * u.c * vol * 2.0 / (n + 2) / (k + 1)


# ------------------------------------------------------------ source fields


@dataclass(frozen=True, eq=False)
class SourceField:
    """Positive source f on a domain: constant, radial about the ball center, or general."""

    domain: ConvexBody
    evaluator: Callable
    family: str = "general"
    value: float | None = None
    profile: Callable | None = None

    def __post_init__(self):
        x, _ = domain_quadrature(self.domain, 16)
        if len(x) and np.min(self(x)) <= 0.0:
            raise ValueError("source must be strictly positive")

    @classmethod
    def constant(cls, domain: ConvexBody, c: float) -> "SourceField":
        if not c > 0:
            raise ValueError("source must be strictly positive")
        return cls(domain, lambda x: np.full(len(np.atleast_2d(x)), float(c)), "constant", float(c))

    @classmethod
    def radial(cls, domain: Ball, g: Callable) -> "SourceField":
        if not isinstance(domain, Ball):
            raise TypeError("radial sources live on balls")
        c = domain.center
        return cls(domain, lambda x: np.asarray(g(np.linalg.norm(np.atleast_2d(x) - c, axis=1)), dtype=float),
                   "radial", profile=g)

    def __call__(self, x) -> np.ndarray:
        return np.asarray(self.evaluator(np.atleast_2d(x)), dtype=float)

    def l1_norm(self, order: int = 48) -> float:
        if self.family == "constant":
            return self.value * quermassintegrals(self.domain)[0]
        return integrate(self.domain, self, order)


def _rearranged_radius(body: ConvexBody) -> float:
    n = body.dim
    return (quermassintegrals(body)[0] / unit_ball_volume(n)) ** (1.0 / n)


def schwarz_rearrange(f: SourceField, r_grid: int = 513, order: int = 192) -> RadialProfile:
    """Decreasing radial rearrangement f0 on the ball with the volume of the domain.

    Constants and monotone radial sources are rearranged in closed form; other
    sources by sorting quadrature-node values weighted by their volume. f0 is
    extended by zero outside its ball.
    """
    n = f.domain.dim
    om = unit_ball_volume(n)
    Rs = _rearranged_radius(f.domain)
    r = np.linspace(0.0, Rs, r_grid)
    if f.family == "constant":
        c = f.value
        return RadialProfile(r, np.full_like(r, c), func=lambda s: np.full_like(np.asarray(s, dtype=float), c),
                             dfunc=lambda s: np.zeros_like(np.asarray(s, dtype=float)))
    if f.family == "radial":
        g = f.profile
        R = f.domain.radius
        probe = np.asarray(g(np.linspace(0.0, R, 257)), dtype=float)
        d = np.diff(probe)
        if np.all(d <= 0):
            return RadialProfile(r, np.asarray(g(r), dtype=float), func=lambda s: np.asarray(g(s), dtype=float))
        if np.all(d >= 0):
            def flipped(s):
                s = np.asarray(s, dtype=float)
                return np.asarray(g(np.maximum(R**n - s**n, 0.0) ** (1.0 / n)), dtype=float)
            return RadialProfile(r, flipped(r), func=flipped)
    x, w = domain_quadrature(f.domain, order)
    v = f(x)
    idx = np.argsort(-v, kind="stable")
    v, w = v[idx], w[idx]
    cum = np.cumsum(w)
    mid = (cum - 0.5 * w) * (quermassintegrals(f.domain)[0] / cum[-1])
    radii = (mid / om) ** (1.0 / n)
    vals = np.interp(r, radii, v)
    return RadialProfile(r, vals)


def level_volumes(f: SourceField, levels, order: int = 192) -> np.ndarray:
    """|{f > t}| for each t, by domain quadrature."""
    x, w = domain_quadrature(f.domain, order)
    v = f(x)
    return np.array([w[v > t].sum() for t in np.atleast_1d(levels)])


def profile_level_volumes(profile: RadialProfile, n: int, levels, samples: int = 200001) -> np.ndarray:
    """|{f0 > t}| for a decreasing radial profile."""
    r = np.linspace(0.0, profile.R, samples)
    v = profile(r)
    out = []
    for t in np.atleast_1d(levels):
        above = np.nonzero(v > t)[0]
        rt = 0.0 if len(above) == 0 else r[above[-1]]
        out.append(unit_ball_volume(n) * rt**n)
    return np.array(out)


# --------------------------------------------------------- radial solution


@dataclass(frozen=True, eq=False)
class RadialSolution:
    profile: RadialProfile
    f0: Callable
    R: float
    n: int
    k: int
    residual: float

    def to_csv(self, out=None, points: int = 257) -> str:
        r = np.linspace(0.0, self.R, points)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("r", "u0", "f0"))
        for ri, ui, fi in zip(r, self.profile(r), self.f0(r)):
            w.writerow([format(float(ri), ".17g"), format(float(ui), ".17g"), format(float(fi), ".17g")])
        text = buf.getvalue()
        if out is not None:
            with open(out, "w", newline="") as fh:
                fh.write(text)
        return text


class _NestedRadial:
    """Prefix-quadrature evaluation of F(t) = int_0^t f s^(n-1) ds and G(t) = int_0^t g."""

    def __init__(self, f0, R, n, k, panels, order):
        self.f0, self.n, self.k = f0, n, k
        fR = getattr(f0, "R", None)
        breaks = np.linspace(0.0, R, panels + 1)
        if fR is not None and 0.0 < fR < R:
            breaks = np.union1d(breaks, [fR])
        self.breaks = breaks
        self.xg, self.wg = _gauss(order)
        self.F_pre = np.concatenate([[0.0], np.cumsum(self._panel(self._f_int, breaks[:-1], breaks[1:]))])
        self.G_pre = np.concatenate([[0.0], np.cumsum(self._panel(self.g, breaks[:-1], breaks[1:]))])

    def _panel(self, fun, a, b):
        a, b = np.asarray(a, float), np.asarray(b, float)
        nodes = a[..., None] + (b - a)[..., None] * self.xg
        return (b - a) * (fun(nodes) @ self.wg)

    def _f_int(self, s):
        return np.asarray(self.f0(s), dtype=float) * s ** (self.n - 1)

    def _locate(self, t):
        j = np.clip(np.searchsorted(self.breaks, t, side="right") - 1, 0, len(self.breaks) - 2)
        return j, self.breaks[j]

    def F(self, t):
        t = np.asarray(t, dtype=float)
        j, a = self._locate(t)
        return self.F_pre[j] + self._panel(self._f_int, a, t)

    def g(self, t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        val = (np.maximum(self.F(t), 0.0) * safe ** (self.k - self.n)) ** (1.0 / self.k)
        return np.where(t > 0, val, 0.0)

    def G(self, t):
        t = np.asarray(t, dtype=float)
        j, a = self._locate(t)
        return self.G_pre[j] + self._panel(self.g, a, t)


def radial_solution(f0, R: float, n: int, k: int, panels: int = 128, order: int = 12) -> RadialSolution:
    """u0 = -(k/C)^(1/k) int_r^R (t^(k-n) int_0^t f0 s^(n-1) ds)^(1/k) dt on B_R.

    ``f0`` may be any nonnegative radial profile with f0(0) > 0 (a RadialProfile vanishes beyond
    its own radius). The residual is the largest relative mismatch between
    f0 and the radial k-Hessian of u0, taken by finite differences of
    r^(n-k) u0'^k at interior points.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}]")
    if not R > 0:
        raise ValueError("radius must be positive")
    fR = getattr(f0, "R", R)
    probe = np.linspace(0.0, min(R, fR), 1025)
    fp = np.asarray(f0(probe), dtype=float)
    # f0 may touch zero at the edge of its support (e.g. sqrt(1 - r^2)); it may not go negative
    if np.any(fp < 0.0) or fp[0] <= 0.0 or not np.all(np.isfinite(fp)):
        raise ValueError("f0 must be positive: negative inner integrand")
    C = comb(n - 1, k - 1, exact=True)
    K = (k / C) ** (1.0 / k)
    nest = _NestedRadial(f0, R, n, k, panels, order)
    G_R = float(nest.G_pre[-1])

    def u(r):
        r = np.clip(np.asarray(r, dtype=float), 0.0, R)
        return -K * (G_R - nest.G(r))

    def du(r):
        return K * nest.g(np.clip(np.asarray(r, dtype=float), 0.0, R))

    grid = nest.breaks
    prof = RadialProfile(grid, u(grid), func=u, dfunc=du)

    top = min(R, fR)
    h = 1e-3 * top
    rr = np.linspace(0.05 * top, 0.95 * top, 181)

    def flux(s):
        return s ** (n - k) * du(s) ** k

    dflux = (-flux(rr + 2 * h) + 8 * flux(rr + h) - 8 * flux(rr - h) + flux(rr - 2 * h)) / (12 * h)
    lhs = rr ** (1 - n) * C / k * dflux
    ref = np.asarray(f0(rr), dtype=float)
    live = ref > 0
    residual = float(np.max(np.abs(lhs - ref)[live] / ref[live])) if live.any() else 0.0
    return RadialSolution(prof, f0, float(R), n, k, residual)


# -------------------------------------------------------------- eigenvalues


class RadialEigen(NamedTuple):
    sigma: float
    profile: RadialProfile
    rayleigh: float


_R0 = 1e-4


def _eigen_rhs(n, k, C, sigma):
    def rhs(r, y):
        u, v = y
        up = (max(v, 0.0) * r ** (k - n)) ** (1.0 / k)
        vp = (k / C) * sigma * r ** (n - 1) * max(-u, 0.0) ** k
        return [up, vp]
    return rhs


def _eigen_start(n, k, C, sigma, r0=_R0):
    A = ((k / (n * C)) * sigma) ** (1.0 / k)
    u0 = -1.0 + 0.5 * A * r0**2
    v0 = (k / C) * sigma * (r0**n / n - k * A * r0 ** (n + 2) / (2 * (n + 2)))
    return u0, v0, A


def _shoot(n, k, C, sigma, dense=False):
    u0, v0, _ = _eigen_start(n, k, C, sigma)

    def hit(r, y):
        return y[0]
    hit.terminal = not dense
    hit.direction = 1
    return solve_ivp(_eigen_rhs(n, k, C, sigma), (_R0, 1.0), [u0, v0], method="DOP853", rtol=1e-12,
                     atol=1e-14, events=None if dense else hit, dense_output=dense)


def _objective(n, k, C):
    def phi(sigma):
        sol = _shoot(n, k, C, sigma)
        if sol.t_events[0].size:
            return 1.0 - float(sol.t_events[0][0])
        return float(sol.y[0, -1])
    return phi


def radial_eigen(n: int, k: int, R: float = 1.0) -> RadialEigen:
    """First eigenvalue of S_k(D^2 u) = sigma (-u)^k on B_R by shooting from the center.

    u(0) = -1, u'(0) = 0; sigma is bracketed by automatic doubling (at most 60
    steps) and located by Brent's method. The Rayleigh quotient of the computed
    profile is returned as a consistency value.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}]")
    if not R > 0:
        raise ValueError("radius must be positive")
    C = comb(n - 1, k - 1, exact=True)
    phi = _objective(n, k, C)
    lo, hi, steps = 1.0, 2.0, 0
    while phi(lo) > 0:
        lo *= 0.5
        steps += 1
        if steps > 60:
            raise RuntimeError("could not bracket the eigenvalue")
    hi = max(hi, 2.0 * lo)
    while phi(hi) < 0:
        lo, hi = hi, 2.0 * hi
        steps += 1
        if steps > 60:
            raise RuntimeError("could not bracket the eigenvalue")
    sigma1 = brentq(phi, lo, hi, xtol=1e-14, rtol=1e-15, maxiter=200)
    sol = _shoot(n, k, C, sigma1, dense=True).sol
    _, _, A = _eigen_start(n, k, C, sigma1)

    def u1(s):
        s = np.asarray(s, dtype=float)
        out = np.where(s < _R0, -1.0 + 0.5 * A * s**2, sol(np.clip(s, _R0, 1.0))[0])
        return np.minimum(out, 0.0)

    def du1(s):
        s = np.asarray(s, dtype=float)
        sc = np.clip(s, _R0, 1.0)
        v = np.maximum(sol(sc)[1], 0.0)
        return np.where(s < _R0, A * s, (v * sc ** (k - n)) ** (1.0 / k))

    r, w = panel_rule(np.linspace(0.0, 1.0, 65), 16)
    num = C / k * float(w @ (r ** (n - k) * du1(r) ** (k + 1)))
    den = float(w @ ((-u1(r)) ** (k + 1) * r ** (n - 1)))
    scale = R ** (-2 * k)
    grid = np.linspace(0.0, R, 257)
    prof = RadialProfile(grid, u1(grid / R), func=lambda s: u1(np.asarray(s) / R),
                         dfunc=lambda s: du1(np.asarray(s) / R) / R)
    return RadialEigen(float(sigma1 * scale), prof, float(num / den * scale))


def quadratic_trial_rayleigh(body: Ellipsoid | Ball, k: int, order: int = 48) -> float:
    """Variational upper bound (k+1) H_k(v) / int (-v)^(k+1) with v = q - 1."""
    u = QuadraticOnEllipsoid(body, 1.0)
    num = (k + 1) * hk_energy(u, k, order)
    den = integrate(body, lambda x: (-u(x)) ** (k + 1), order)
    return num / den


# ------------------------------------------------------------------ torsion


def torsion_function(body: Ellipsoid | Ball, k: int) -> QuadraticOnEllipsoid:
    """The quadratic solution of S_k(D^2 u) = 1, u = 0 on the boundary."""
    if not isinstance(body, (Ellipsoid, Ball)):
        raise NoExplicitSolutionError(f"no explicit solution on {type(body).__name__}")
    axes = np.full(body.dim, body.radius) if isinstance(body, Ball) else body.semi_axes
    c = float(elementary_symmetric(1.0 / axes**2, k)) ** (-1.0 / k)
    return QuadraticOnEllipsoid(body, c / 2.0)


def _torsion_quotient(u, k, order):
    mass = integrate(u.domain, lambda x: -u(x), order)
    return mass ** (k + 1) / ((k + 1) * hk_energy(u, k, order))


def torsional_rigidity(body: ConvexBody, n: int, k: int, order: int = 48) -> float:
    """T = (int -u)^(k+1) / int (-u) S_k(D^2 u) at the solution of S_k(D^2 u) = 1."""
    if body.dim != n:
        raise ValueError("dimension does not match the body")
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}]")
    u = torsion_function(body, k)
    t = _torsion_quotient(u, k, order)
    t2 = _torsion_quotient(QuadraticOnEllipsoid(body, 2.0 * u.c), k, order)
    if abs(t - t2) > 1e-10 * abs(t):
        raise ArithmeticError("torsion quotient is not scale invariant: quadrature failure")
    return t


# --------------------------------------------------------------- FD oracle


def _crossing(body, p, step, h, iters=52):
    """Distance from interior points p to the boundary along unit steps, within h."""
    lo = np.zeros(len(p))
    hi = np.full(len(p), h)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        inside = body.contains(p + mid[:, None] * step)
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return 0.5 * (lo + hi)


def _fd_eigen(body: ConvexBody, h: float) -> float:
    lo, hi = body.bounding_box()
    c = 0.5 * (lo + hi)
    half = np.ceil(0.5 * (hi - lo) / h).astype(int) + 1
    ix = np.arange(-half[0], half[0] + 1)
    iy = np.arange(-half[1], half[1] + 1)
    X, Y = np.meshgrid(c[0] + h * ix, c[1] + h * iy, indexing="ij")
    pts = np.column_stack([X.ravel(), Y.ravel()])
    inside = body.contains(pts).reshape(X.shape)
    steps = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    arms = np.full((4,) + X.shape, h)
    for s, (dx, dy) in enumerate(steps):
        nb = np.roll(inside, (-dx, -dy), axis=(0, 1))
        cut = inside & ~nb
        if cut.any():
            p = pts[cut.ravel()]
            arms[s][cut] = _crossing(body, p, np.array([dx, dy], float), h)
    # nodes sitting on the boundary are Dirichlet nodes
    inside &= arms.min(axis=0) > 1e-6 * h
    for s, (dx, dy) in enumerate(steps):
        nb = np.roll(inside, (-dx, -dy), axis=(0, 1))
        arms[s] = np.where(inside & ~nb, np.minimum(arms[s], h), arms[s])
    idx = -np.ones(X.shape, dtype=int)
    idx[inside] = np.arange(int(inside.sum()))
    he, hw, hn, hs = arms
    rows, cols, vals = [], [], []
    node = idx[inside]
    diag = (2.0 / (he * hw) + 2.0 / (hn * hs))[inside]
    rows.append(node)
    cols.append(node)
    vals.append(diag)
    for s, (dx, dy) in enumerate(steps):
        nb_idx = np.roll(idx, (-dx, -dy), axis=(0, 1))[inside]
        a, b = (he, hw) if s < 2 else (hn, hs)
        own = arms[s][inside]
        coef = -2.0 / (own * (a + b)[inside])
        ok = nb_idx >= 0
        rows.append(node[ok])
        cols.append(nb_idx[ok])
        vals.append(coef[ok])
    N = int(inside.sum())
    A = coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(N, N)).tocsc()
    lu = splu(A)
    x = np.ones(N) / math.sqrt(N)
    lam = 0.0
    for _ in range(1000):
        y = lu.solve(x)
        new = 1.0 / np.linalg.norm(y)
        x = y * new
        if abs(new - lam) <= 1e-14 * new:
            lam = new
            break
        lam = new
    return float(lam)


def fd_laplace_eigen(body: ConvexBody, h: float | None = None) -> float:
    """First Dirichlet eigenvalue of -Laplace by Shortley-Weller finite differences.

    Inverse power iteration on grids of spacing h and h/2, Richardson
    extrapolated as (4 lam_{h/2} - lam_h)/3. Default h = D/120.
    """
    if body.dim != 2:
        raise ValueError("the finite-difference oracle is planar")
    D = diameter(body)
    h = D / 120.0 if h is None else float(h)
    if D / h < 40:
        raise ValueError("grid too coarse: need at least 40 nodes across the diameter")
    return (4.0 * _fd_eigen(body, h / 2.0) - _fd_eigen(body, h)) / 3.0


__all__ = [
    "HessianSpectrum",
    "NoExplicitSolutionError",
    "RadialEigen",
    "RadialSolution",
    "SourceField",
    "domain_quadrature",
    "elementary_symmetric",
    "fd_laplace_eigen",
    "hk_energy",
    "integrate",
    "level_volumes",
    "panel_rule",
    "profile_level_volumes",
    "quadratic_hk_closed_form",
    "quadratic_trial_rayleigh",
    "radial_eigen",
    "radial_hk_energy",
    "radial_solution",
    "s_k_eval",
    "schwarz_rearrange",
    "torsion_function",
    "torsional_rigidity",
]
