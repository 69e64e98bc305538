"""Quermassintegrals, mean radii and the Hausdorff asymmetry index.

The primary path is combinatorial for polytopes and a sphere quadrature for
smooth bodies. ``steiner_volume_check`` and ``steiner_fit`` are the
independent Monte-Carlo oracle: they only use point-to-body distances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import comb

from hessian_symm.geometry import (
    Ball,
    ConvexBody,
    Ellipsoid,
    FourierBody2D,
    ParallelBody,
    Polygon,
    Polytope3D,
    hausdorff_distance,
    shape_summary,
    sphere_grid,
    unit_ball_volume,
)


class UnsupportedBodyError(TypeError):
    """The body/dimension combination has no quermassintegral routine."""


class DegenerateBodyError(ValueError):
    """A quantity would divide by a vanishing quermassintegral."""


@dataclass(frozen=True)
class QuermassVector:
    n: int
    w: tuple[float, ...]

    def __post_init__(self):
        if len(self.w) != self.n + 1:
            raise ValueError("need W_0..W_n")

    def __getitem__(self, i):
        return self.w[i]

    def mean_radius(self, k: int) -> float:
        if not 0 <= k <= self.n - 1:
            raise ValueError(f"mean radius index must be in [0, {self.n - 1}]")
        wk = self.w[k]
        if wk <= 0.0:
            return 0.0
        return (wk / unit_ball_volume(self.n)) ** (1.0 / (self.n - k))

    @property
    def zeta(self) -> np.ndarray:
        return np.array([self.mean_radius(k) for k in range(self.n)])

    @property
    def volume(self) -> float:
        return self.w[0]

    @property
    def surface_area(self) -> float:
        return self.n * self.w[1]


def _shoelace(v):
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _polygon_w(poly: Polygon):
    v = poly.vertices
    if len(v) == 1:
        return 0.0, 0.0
    perim = float(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1).sum())
    area = 0.0 if poly.degenerate else _shoelace(v)
    return area, perim / 2.0


def _polytope_w(p: Polytope3D):
    if p.degenerate:
        vol = 0.0
    else:
        # divergence theorem: V = (1/3) sum_f (n_f . x_f) A_f
        n = p.facet_normals
        x = p.triangles[:, 0]
        vol = float(np.einsum("ij,ij->i", n, x) @ p.facet_areas / 3.0)
    surface = float(p.facet_areas.sum()) * (2.0 if p.degenerate else 1.0)
    w2 = float(p.edge_lengths @ p.edge_angles) / 6.0
    return vol, surface / 3.0, w2


SMOOTH_NODES_2D = 1024
SMOOTH_NODES_3D = 5810


def _fourier_w(body: FourierBody2D):
    theta = 2.0 * np.pi * np.arange(SMOOTH_NODES_2D) / SMOOTH_NODES_2D
    dt = 2.0 * np.pi / SMOOTH_NODES_2D
    h, dh = body.h(theta), body.h(theta, 1)
    return 0.5 * float(np.sum(h**2 - dh**2)) * dt, 0.5 * float(np.sum(h)) * dt


def _ellipsoid_w(e: Ellipsoid):
    a = e.semi_axes
    n = e.dim
    if n == 2:
        dirs, w = sphere_grid(2, SMOOTH_NODES_2D)
        h = np.sqrt((dirs**2) @ a**2)
        return [math.pi * a[0] * a[1], 0.5 * float(w @ h)]
    if n == 3:
        dirs, w = sphere_grid(3, SMOOTH_NODES_3D)
        h = np.sqrt((dirs**2) @ a**2)
        prod2 = float(np.prod(a) ** 2)
        # Gauss map Jacobian 1/K = (abc)^2 / h^4; mean radius of curvature integrates to int h
        surface = float(w @ (prod2 / h**4))
        return [4.0 * math.pi / 3.0 * float(np.prod(a)), surface / 3.0, float(w @ h) / 3.0]
    raise UnsupportedBodyError("ellipsoid quermassintegrals are implemented for n = 2, 3")


def quermassintegrals(body: ConvexBody) -> QuermassVector:
    """W_0..W_n of a body."""
    n = body.dim
    omega = unit_ball_volume(n)
    if isinstance(body, Ball):
        return QuermassVector(n, tuple(omega * body.radius ** (n - i) for i in range(n + 1)))
    if isinstance(body, ParallelBody):
        base = quermassintegrals(body.base)
        rho = body.rho
        w = tuple(
            sum(comb(n - j, i, exact=True) * base[j + i] * rho**i for i in range(n - j + 1))
            for j in range(n + 1)
        )
        return QuermassVector(n, w)
    if isinstance(body, Polygon):
        return QuermassVector(2, (*_polygon_w(body), math.pi))
    if isinstance(body, Polytope3D):
        return QuermassVector(3, (*_polytope_w(body), omega))
    if isinstance(body, FourierBody2D):
        return QuermassVector(2, (*_fourier_w(body), math.pi))
    if isinstance(body, Ellipsoid):
        return QuermassVector(n, (*_ellipsoid_w(body), omega))
    raise UnsupportedBodyError(f"no quermassintegrals for {type(body).__name__} in dimension {n}")


def steiner_polynomial(q: QuermassVector, rho: float) -> float:
    """|K + rho B| = sum_i C(n, i) W_i rho^i."""
    n = q.n
    return float(sum(comb(n, i, exact=True) * q[i] * rho**i for i in range(n + 1)))


def mean_radius(body: ConvexBody, k: int) -> float:
    """zeta_k = (W_k / omega_n)^(1/(n-k)), 0 <= k <= n-1."""
    if not 0 <= k <= body.dim - 1:
        raise ValueError(f"mean radius index must be in [0, {body.dim - 1}]")
    if isinstance(body, Ball):
        return body.radius
    return quermassintegrals(body).mean_radius(k)


# ----------------------------------------------------------- Monte-Carlo oracle


class SteinerCheck(NamedTuple):
    predicted: float
    estimated: float
    stderr: float

    @property
    def passed(self) -> bool:
        return abs(self.predicted - self.estimated) <= 4.0 * self.stderr


_BATCH = 1 << 16


def monte_carlo_parallel_volume(body: ConvexBody, rho: float, samples: int, seed: int) -> tuple[float, float]:
    """Volume of body + rho B by uniform membership sampling; returns (estimate, stderr)."""
    rng = np.random.default_rng(seed)
    lo, hi = body.bounding_box()
    lo, hi = np.asarray(lo) - rho, np.asarray(hi) + rho
    box = float(np.prod(hi - lo))
    hits = 0
    done = 0
    while done < samples:
        m = min(_BATCH, samples - done)
        pts = lo + (hi - lo) * rng.random((m, body.dim))
        hits += int(np.count_nonzero(body.distance(pts) <= rho))
        done += m
    p = hits / samples
    return box * p, box * math.sqrt(p * (1.0 - p) / samples)


def steiner_volume_check(body: ConvexBody, rho: float, samples: int = 10**5, seed: int = 0) -> SteinerCheck:
    """Steiner polynomial prediction of |body + rho B| against a Monte-Carlo estimate."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    if samples < 10**5:
        raise ValueError("at least 1e5 samples are required")
    predicted = steiner_polynomial(quermassintegrals(body), rho)
    est, err = monte_carlo_parallel_volume(body, rho, samples, seed)
    return SteinerCheck(predicted, est, err)


def steiner_fit(body: ConvexBody, rhos=(0.25, 0.5, 1.0, 1.5, 2.0), samples: int = 10**5, seed: int = 0):
    """Weighted least-squares fit of W_0..W_n to Monte-Carlo parallel volumes.

    Returns (W estimates, standard errors). Independent of ``quermassintegrals``.
    """
    n = body.dim
    rhos = np.asarray(rhos, dtype=float)
    vols, errs = zip(*(monte_carlo_parallel_volume(body, r, samples, seed + i) for i, r in enumerate(rhos)))
    vols, errs = np.array(vols), np.array(errs)
    A = np.array([[comb(n, i, exact=True) * r**i for i in range(n + 1)] for r in rhos])
    Aw = A / errs[:, None]
    coef, *_ = np.linalg.lstsq(Aw, vols / errs, rcond=None)
    cov = np.linalg.inv(Aw.T @ Aw)
    return coef, np.sqrt(np.diag(cov))


# ------------------------------------------------------------------ asymmetry


@dataclass(frozen=True)
class AsymmetryRecord:
    d_H_to_steiner_ball: float
    zeta_nm1: float
    alpha: float


def hausdorff_asymmetry(body: ConvexBody) -> AsymmetryRecord:
    """alpha_H = d_H(body, Steiner ball) / zeta_{n-1}(body), always in [0, 1]."""
    n = body.dim
    if isinstance(body, Ball):
        return AsymmetryRecord(0.0, body.radius, 0.0)
    zeta = quermassintegrals(body).mean_radius(n - 1)
    if zeta <= 0.0:
        raise DegenerateBodyError("zeta_{n-1} vanishes: asymmetry undefined")
    dist = hausdorff_distance(body, shape_summary(body).steiner_ball)
    return AsymmetryRecord(float(dist), float(zeta), float(dist / zeta))
