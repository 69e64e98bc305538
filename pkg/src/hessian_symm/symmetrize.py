"""Convex test functions, their sublevel sets and the k-symmetrand.

Every supported family has sublevel sets that are homothets of the domain,
Omega(mu) = p + s(mu) (Omega - p), so zeta_k(Omega(mu)) = s(mu) zeta_k(Omega)
and the symmetrand is u*_k(r) = level_at_scale(r / zeta_k(Omega)) exactly.
The grid built from the sublevel bodies is kept alongside as the
independently computed check of that identity.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from hessian_symm.geometry import (
    Ball,
    ConvexBody,
    Ellipsoid,
    Polygon,
    Polytope3D,
    diameter,
    hausdorff_distance,
    homothety,
    sphere_grid,
)
from hessian_symm.quermass import quermassintegrals
from hessian_symm.report import FAIL, PASS, DeficitReport


class UnsupportedFunctionError(TypeError):
    """General sublevel extraction (outside the builtin families) is not supported."""


# ------------------------------------------------------------------ profiles


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Monotone radial function on [0, R].

    ``func``/``dfunc`` give exact values where a closed form is known;
    otherwise the grid is interpolated by a monotone piecewise cubic.
    Beyond R the profile takes the constant ``outside`` value.
    """

    radius_grid: np.ndarray
    values: np.ndarray
    func: Callable | None = None
    dfunc: Callable | None = None
    outside: float = 0.0
    regularized: bool = False

    def __post_init__(self):
        r = np.asarray(self.radius_grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if r.ndim != 1 or r.shape != v.shape or len(r) < 2:
            raise ValueError("radius grid and values must be matching 1-d arrays")
        if np.any(np.diff(r) <= 0) or r[0] < 0:
            raise ValueError("radius grid must be strictly increasing from r >= 0")
        object.__setattr__(self, "radius_grid", r)
        object.__setattr__(self, "values", v)

    @property
    def R(self) -> float:
        return float(self.radius_grid[-1])

    @property
    def _pchip(self) -> PchipInterpolator:
        p = self.__dict__.get("_pchip_cache")
        if p is None:
            p = PchipInterpolator(self.radius_grid, self.values, extrapolate=True)
            self.__dict__["_pchip_cache"] = p
        return p

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        inside = np.clip(r, 0.0, self.R)
        val = self.func(inside) if self.func is not None else self._pchip(inside)
        return np.where(r > self.R, self.outside, val)

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        inside = np.clip(r, 0.0, self.R)
        val = self.dfunc(inside) if self.dfunc is not None else self._pchip(inside, 1)
        return np.where(r > self.R, 0.0, val)

    @property
    def is_increasing(self) -> bool:
        return bool(np.all(np.diff(self.values) >= -1e-12 * max(1.0, np.abs(self.values).max())))

    @property
    def is_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.values) <= 1e-12 * max(1.0, np.abs(self.values).max())))

    def inverse(self, level: float) -> float:
        """Smallest r with profile(r) >= level, for an increasing profile."""
        lo, hi = float(self(0.0)), float(self(self.R))
        if level <= lo:
            return 0.0
        if level >= hi:
            return self.R
        i = int(np.searchsorted(self.values, level))
        a = self.radius_grid[max(i - 1, 0)] if 0 < i < len(self.values) and self.values[i - 1] <= level else 0.0
        b = self.radius_grid[i] if 0 < i < len(self.values) and self.values[i] >= level else self.R
        if float(self(a)) > level or float(self(b)) < level:
            a, b = 0.0, self.R
        return brentq(lambda r: float(self(r)) - level, a, b, xtol=1e-15)

    def to_csv(self, out=None, points: int = 257, columns=("r", "value")) -> str:
        r = np.linspace(0.0, self.R, points)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for ri, vi in zip(r, self(r)):
            w.writerow([format(float(ri), ".17g"), format(float(vi), ".17g")])
        text = buf.getvalue()
        if out is not None:
            with open(out, "w", newline="") as fh:
                fh.write(text)
        return text


# -------------------------------------------------------- convex test functions


def _gauge_polyhedral(normals, offsets, apex, pts):
    denom = offsets - normals @ apex
    if np.any(denom <= 0):
        raise ValueError("apex must lie in the interior of the body")
    return np.max(((pts - apex) @ normals.T) / denom, axis=1)


def _gauge_ellipsoid(center, axes, apex, pts):
    # smallest t with apex + (x - apex)/t on the boundary
    d = (pts - apex) / axes
    e = (apex - center) / axes
    a = np.sum(d * d, axis=1)
    b = 2.0 * d @ e
    c = float(e @ e) - 1.0
    if c >= 0:
        raise ValueError("apex must lie in the interior of the body")
    # positive root s of a s^2 + b s + c = 0, with t = 1/s; stable form t = (-b + sqrt(b^2 - 4ac)) / (-2c)
    return (b + np.sqrt(b * b - 4.0 * a * c)) / (-2.0 * c)


def gauge(body: ConvexBody, apex, pts) -> np.ndarray:
    """Minkowski gauge of ``body`` about ``apex``: 1 on the boundary, 0 at the apex."""
    apex = np.asarray(apex, dtype=float)
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if isinstance(body, Polygon):
        if body.degenerate:
            raise ValueError("gauge needs a body with interior")
        e = np.roll(body.vertices, -1, axis=0) - body.vertices
        normals = np.column_stack([e[:, 1], -e[:, 0]])
        normals /= np.linalg.norm(normals, axis=1)[:, None]
        offsets = np.einsum("ij,ij->i", normals, body.vertices)
        return _gauge_polyhedral(normals, offsets, apex, pts)
    if isinstance(body, Polytope3D):
        if body.degenerate:
            raise ValueError("gauge needs a body with interior")
        return _gauge_polyhedral(body.facet_normals, body.facet_offsets, apex, pts)
    if isinstance(body, Ball):
        return _gauge_ellipsoid(body.center, np.full(body.dim, body.radius), apex, pts)
    if isinstance(body, Ellipsoid):
        return _gauge_ellipsoid(body.center, body.semi_axes, apex, pts)
    # support-function formula: sup_u u.(x - a) / (h(u) - u.a)
    dirs, _ = sphere_grid(body.dim, 4096 if body.dim == 2 else 5810)
    denom = body.support(dirs) - dirs @ apex
    if np.any(denom <= 0):
        raise ValueError("apex must lie in the interior of the body")
    return np.max(((pts - apex) @ dirs.T) / denom, axis=1)


class ConvexTestFunction:
    """Convex u < 0 on a convex domain, vanishing on the boundary.

    Subclasses describe their sublevel sets by a homothety ratio
    ``scale(mu)`` about ``min_point`` and its inverse ``level_at_scale``.
    """

    domain: ConvexBody
    m: float
    min_point: np.ndarray
    family: str = "general"

    @property
    def dim(self) -> int:
        return self.domain.dim

    def __call__(self, x) -> np.ndarray:
        raise NotImplementedError

    def scale(self, mu):
        raise UnsupportedFunctionError("general sublevel extraction unsupported")

    def level_at_scale(self, s):
        raise UnsupportedFunctionError("general sublevel extraction unsupported")

    def dlevel_at_scale(self, s):
        raise UnsupportedFunctionError("general sublevel extraction unsupported")

    def hessian(self, x) -> np.ndarray | None:
        """Hessian matrices at points x (shape (M, n, n)); None if only distributional."""
        return None

    def sublevel(self, mu: float) -> ConvexBody | None:
        """Omega(mu) = {u < mu}; None for the degenerate level mu = m."""
        if not self.m <= mu <= 0:
            raise ValueError("level must lie in [m, 0]")
        s = float(self.scale(mu))
        if s <= 0.0:
            return None
        return homothety(self.domain, s, self.min_point)

    def boundary_points(self, count: int) -> np.ndarray:
        dirs, _ = sphere_grid(self.dim, count) if self.dim == 3 else (_circle(count), None)
        g = gauge(self.domain, self.min_point, self.min_point + dirs)
        return self.min_point + dirs / g[:, None]

    def interior_samples(self, count: int, seed: int = 0) -> np.ndarray:
        """Uniform points in the domain by rejection from its bounding box."""
        rng = np.random.default_rng(seed)
        lo, hi = self.domain.bounding_box()
        out = []
        total = 0
        while total < count:
            p = lo + (hi - lo) * rng.random((2 * count, self.dim))
            p = p[gauge(self.domain, self.min_point, p) < 1.0]
            out.append(p)
            total += len(p)
        return np.concatenate(out)[:count]

    def validate(self, samples: int = 512, seed: int = 0) -> dict[str, float]:
        """Boundary vanishing, midpoint convexity and the lower bound u >= m."""
        b = self.boundary_points(max(64, samples // 4))
        x = self.interior_samples(samples, seed)
        y = self.interior_samples(samples, seed + 1)
        ux, uy, um = self(x), self(y), self(0.5 * (x + y))
        res = {
            "boundary": float(np.abs(self(b)).max()),
            "convexity": float(np.max(um - 0.5 * (ux + uy))),
            "min_gap": float(np.min(ux) - self.m),
        }
        if res["boundary"] > 1e-8 or res["convexity"] > 1e-12 or res["min_gap"] < -1e-12:
            raise ValueError(f"not an admissible convex test function: {res}")
        return res


def _circle(count):
    t = 2.0 * np.pi * np.arange(count) / count
    return np.column_stack([np.cos(t), np.sin(t)])


def _axes(body: ConvexBody) -> np.ndarray:
    if isinstance(body, Ball):
        return np.full(body.dim, body.radius)
    return body.semi_axes


class QuadraticOnEllipsoid(ConvexTestFunction):
    """u = c (q - 1) with q the quadratic form of an ellipsoid (or ball)."""

    family = "quadratic"

    def __init__(self, domain: Ellipsoid | Ball, c: float):
        if not isinstance(domain, (Ellipsoid, Ball)):
            raise TypeError("quadratic family lives on an ellipsoid or a ball")
        if not c > 0:
            raise ValueError("coefficient must be positive")
        self.domain = domain
        self.c = float(c)
        self.m = -self.c
        self.min_point = np.asarray(domain.center, dtype=float)
        self.axes = _axes(domain)

    def __call__(self, x):
        y = (np.atleast_2d(x) - self.min_point) / self.axes
        return self.c * (np.sum(y * y, axis=1) - 1.0)

    def scale(self, mu):
        return np.sqrt(np.maximum(1.0 + np.asarray(mu) / self.c, 0.0))

    def level_at_scale(self, s):
        return self.c * (np.asarray(s) ** 2 - 1.0)

    def dlevel_at_scale(self, s):
        return 2.0 * self.c * np.asarray(s)

    def hessian(self, x):
        h = np.diag(2.0 * self.c / self.axes**2)
        return np.broadcast_to(h, (len(np.atleast_2d(x)), self.dim, self.dim))

    def boundary_points(self, count):
        dirs, _ = sphere_grid(self.dim, count) if self.dim == 3 else (_circle(count), None)
        return self.min_point + dirs * self.axes


class ConeOverBody(ConvexTestFunction):
    """The cone with base Omega and apex (p, m): u = m (1 - gauge_p(x))."""

    family = "cone"

    def __init__(self, domain: ConvexBody, apex, m: float):
        if not m < 0:
            raise ValueError("apex value must be negative")
        self.domain = domain
        self.min_point = np.asarray(apex, dtype=float)
        self.m = float(m)
        gauge(domain, self.min_point, self.min_point[None, :])

    def __call__(self, x):
        return self.m * (1.0 - gauge(self.domain, self.min_point, x))

    def scale(self, mu):
        return 1.0 - np.asarray(mu) / self.m

    def level_at_scale(self, s):
        return self.m * (1.0 - np.asarray(s))

    def dlevel_at_scale(self, s):
        return np.full_like(np.asarray(s, dtype=float), -self.m)


class RadialOnBall(ConvexTestFunction):
    """u(x) = profile(|x - center|) on the ball of radius profile.R."""

    family = "radial"

    def __init__(self, center, profile: RadialProfile):
        self.min_point = np.asarray(center, dtype=float)
        self.profile = profile
        self.domain = Ball(self.min_point, profile.R)
        self.m = float(profile(0.0))
        if not self.m < 0:
            raise ValueError("radial profile must be negative at the center")
        if not profile.is_increasing:
            raise ValueError("radial profile must be nondecreasing")

    @classmethod
    def quadratic(cls, center, R: float, c: float) -> "RadialOnBall":
        """c (r^2 - R^2), the radial member of the quadratic family."""
        grid = np.linspace(0.0, R, 65)
        prof = RadialProfile(grid, c * (grid**2 - R**2), func=lambda r: c * (r**2 - R**2), dfunc=lambda r: 2 * c * r)
        return cls(center, prof)

    def __call__(self, x):
        r = np.linalg.norm(np.atleast_2d(x) - self.min_point, axis=1)
        return self.profile(r)

    def scale(self, mu):
        mu = np.atleast_1d(np.asarray(mu, dtype=float))
        out = np.array([self.profile.inverse(float(v)) for v in mu]) / self.profile.R
        return out if out.size > 1 else float(out[0])

    def level_at_scale(self, s):
        return self.profile(np.asarray(s) * self.profile.R)

    def dlevel_at_scale(self, s):
        return self.profile.R * self.profile.derivative(np.asarray(s) * self.profile.R)

    def hessian(self, x):
        x = np.atleast_2d(x) - self.min_point
        r = np.linalg.norm(x, axis=1)
        d1 = self.profile.derivative(r)
        h = 1e-6 * self.profile.R
        d2 = (self.profile.derivative(np.minimum(r + h, self.profile.R)) - self.profile.derivative(np.maximum(r - h, 0)))
        d2 /= np.minimum(r + h, self.profile.R) - np.maximum(r - h, 0)
        safe = np.where(r > 0, r, 1.0)
        e = x / safe[:, None]
        tang = np.where(r > 0, d1 / safe, d2)
        eye = np.eye(self.dim)
        return tang[:, None, None] * (eye - e[:, :, None] * e[:, None, :]) + d2[:, None, None] * e[:, :, None] * e[:, None, :]

    def boundary_points(self, count):
        dirs, _ = sphere_grid(self.dim, count) if self.dim == 3 else (_circle(count), None)
        return self.min_point + dirs * self.profile.R


# -------------------------------------------------------------- sublevel sets


def mu_grid(m: float, size: int) -> np.ndarray:
    """Levels in [m, 0] uniform in sqrt(1 - mu/m)."""
    t = np.linspace(0.0, 1.0, size)
    mu = m * (1.0 - t * t)
    mu[-1] = 0.0
    return mu


@dataclass(frozen=True, eq=False)
class SublevelProfile:
    mu_grid: np.ndarray
    bodies: list
    zeta_k: np.ndarray
    k: int
    zeta_domain: float
    extra: dict = field(default_factory=dict)


def sublevel_profile(u: ConvexTestFunction, k: int, grid_size: int = 129) -> SublevelProfile:
    """Sublevel bodies Omega(mu) on a level grid and their mean radii zeta_k."""
    n = u.dim
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must be in [0, {n - 1}]")
    if grid_size < 64:
        raise ValueError("grid_size must be at least 64")
    if type(u).scale is ConvexTestFunction.scale:
        raise UnsupportedFunctionError("general sublevel extraction unsupported")
    mus = mu_grid(u.m, grid_size)
    bodies = [u.sublevel(float(mu)) for mu in mus]
    zeta = np.array([0.0 if b is None else quermassintegrals(b).mean_radius(k) for b in bodies])
    if isinstance(u.domain, Ball):
        zeta = np.array([0.0 if b is None else b.radius for b in bodies])
    return SublevelProfile(mus, bodies, zeta, k, float(zeta[-1]))


def symmetrand(u: ConvexTestFunction, k: int, grid_size: int = 129) -> RadialProfile:
    """The k-symmetrand u*_k on the ball of radius zeta_k(Omega).

    Exact evaluation through the homothety structure of the sublevel sets;
    the grid holds the (zeta_k(Omega(mu)), mu) pairs from the sublevel bodies.
    A nonmonotone grid is regularized by a running maximum and flagged.
    """
    prof = sublevel_profile(u, k, grid_size)
    Z = prof.zeta_domain
    r, v = prof.zeta_k.copy(), prof.mu_grid.copy()
    regularized = False
    if np.any(np.diff(r) < 0):
        r = np.maximum.accumulate(r)
        regularized = True
    keep = np.concatenate([[True], np.diff(r) > 1e-14 * Z])
    r, v = r[keep], v[keep]
    v[0] = u.m
    return RadialProfile(
        r, v,
        func=lambda rr: u.level_at_scale(np.asarray(rr) / Z),
        dfunc=lambda rr: u.dlevel_at_scale(np.asarray(rr) / Z) / Z,
        regularized=regularized,
    )


# ----------------------------------------------------------- cone comparison


def cone_minorant_check(u: ConvexTestFunction, k: int, grid_size: int = 256, samples: int = 2048,
                        seed: int = 0) -> DeficitReport:
    """Comparison of u with the cone of base Omega and height m.

    lhs is the smallest slack among: cone(x) - u(x) on interior samples,
    zeta_k(Omega(mu)) - (1 - mu/m) zeta_k(Omega) on the level grid, and
    (mu/m) D(Omega) - d_H(Omega, C(mu)) on a subgrid. rhs is 0.
    """
    n = u.dim
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must be in [0, {n - 1}]")
    cone = ConeOverBody(u.domain, u.min_point, u.m)
    x = u.interior_samples(samples, seed)
    pointwise = float(np.min(cone(x) - u(x)))
    prof = sublevel_profile(u, k, grid_size)
    scale = 1.0 - prof.mu_grid / u.m
    zeta_gap = float(np.min(prof.zeta_k - scale * prof.zeta_domain))
    D = diameter(u.domain)
    hd = []
    for mu in prof.mu_grid[1:-1:max(1, grid_size // 16)]:
        c_mu = homothety(u.domain, 1.0 - mu / u.m, u.min_point)
        hd.append(mu / u.m * D - hausdorff_distance(u.domain, c_mu))
    hd_gap = float(min(hd)) if hd else 0.0
    lhs = min(pointwise, zeta_gap, hd_gap)
    tol = 1e-9 * max(1.0, abs(u.m), prof.zeta_domain, D)
    status = PASS if lhs >= -tol else FAIL
    return DeficitReport("cone_minorant", lhs, 0.0, status, n=n, k=k, body_id=u.domain.label,
                         extra={"pointwise": pointwise, "zeta": zeta_gap, "hausdorff": hd_gap})


__all__ = [
    "ConeOverBody",
    "ConvexTestFunction",
    "QuadraticOnEllipsoid",
    "RadialOnBall",
    "RadialProfile",
    "SublevelProfile",
    "UnsupportedFunctionError",
    "cone_minorant_check",
    "gauge",
    "mu_grid",
    "sublevel_profile",
    "symmetrand",
]
