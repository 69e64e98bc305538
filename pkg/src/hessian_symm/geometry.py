"""Convex bodies and their elementary support-function functionals.

Five concrete representations are provided (``Polygon``, ``Polytope3D``,
``FourierBody2D``, ``Ball``, ``Ellipsoid``) plus ``ParallelBody``, the
support-function representation of ``K + rho B``. Bodies are immutable.

Suprema and integrals over the unit sphere use a uniform angular grid in the
plane and a Lebedev rule in space, except where a closed form is available
(polytopes, balls), in which case the closed form is used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.integrate import lebedev_rule
from scipy.optimize import minimize, minimize_scalar
from scipy.spatial import ConvexHull, QhullError
from scipy.spatial.distance import pdist
from scipy.special import gamma

from hessian_symm import kernels

GEOM_TOL = 1e-9

_LEBEDEV_ORDERS = {
    6: 3, 14: 5, 26: 7, 38: 9, 50: 11, 74: 13, 86: 15, 110: 17, 146: 19,
    170: 21, 194: 23, 230: 25, 266: 27, 302: 29, 350: 31, 434: 35, 590: 41,
    770: 47, 974: 53, 1202: 59, 1454: 65, 1730: 71, 2030: 77, 2354: 83,
    2702: 89, 3074: 95, 3470: 101, 3890: 107, 4334: 113, 4802: 119,
    5294: 125, 5810: 131,
}


def unit_ball_volume(n: int) -> float:
    """Volume of the unit ball in R^n (omega_n); omega_0 = 1, omega_1 = 2."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return math.pi ** (n / 2) / gamma(n / 2 + 1)


def sphere_grid(n: int, nodes: int):
    """Quadrature nodes and weights on S^{n-1}.

    In the plane: ``nodes`` equispaced angles (trapezoid rule). In R^3: the
    smallest Lebedev rule with at least ``nodes`` points. Weights sum to the
    sphere's surface measure.
    """
    if n == 2:
        theta = 2.0 * np.pi * np.arange(nodes) / nodes
        dirs = np.column_stack([np.cos(theta), np.sin(theta)])
        return dirs, np.full(nodes, 2.0 * np.pi / nodes)
    if n == 3:
        for count in sorted(_LEBEDEV_ORDERS):
            if count >= nodes:
                x, w = lebedev_rule(_LEBEDEV_ORDERS[count])
                return np.ascontiguousarray(x.T), w
        raise ValueError(f"no spherical rule with {nodes} nodes (max 5810)")
    raise ValueError("sphere grids are available for n = 2, 3 only")


def direction(components) -> np.ndarray:
    """Normalize a vector into a unit direction."""
    v = np.asarray(components, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("zero vector has no direction")
    return v / norm


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


class ConvexBody:
    """Common interface of every body representation."""

    dim: int
    label: str | None = None

    def support(self, dirs) -> np.ndarray:
        raise NotImplementedError

    def distance(self, pts) -> np.ndarray:
        """Euclidean distance of each point to the body (0 inside)."""
        raise NotImplementedError

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def contains(self, pts, tol: float = 1e-12) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return self.distance(pts) <= tol

    @property
    def symmetry_center(self) -> np.ndarray | None:
        """Center of symmetry when the representation guarantees one."""
        return None


# ---------------------------------------------------------------- polytopes


@dataclass(frozen=True, eq=False)
class Polygon(ConvexBody):
    """Convex polygon with counterclockwise vertices in convex position.

    Two vertices describe a segment and a single vertex a point; both are
    accepted and flagged as ``degenerate``.
    """

    vertices: np.ndarray
    label: str | None = None
    dim: int = field(default=2, init=False)

    def __post_init__(self):
        v = _frozen(self.vertices)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) == 0:
            raise ValueError("polygon needs a nonempty (N, 2) vertex array")
        if len(v) >= 3:
            e = np.roll(v, -1, axis=0) - v
            cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
            scale = max(np.ptp(v, axis=0).max(), 1e-300) ** 2
            if np.any(cross <= 1e-14 * scale):
                raise ValueError("vertices are not in strictly convex counterclockwise position")
        elif len(v) == 2 and np.allclose(v[0], v[1], rtol=0.0, atol=1e-15):
            raise ValueError("segment endpoints coincide")
        object.__setattr__(self, "vertices", v)

    @classmethod
    def hull(cls, points, label=None) -> "Polygon":
        """Convex hull of a planar point cloud (collinear clouds give a segment)."""
        p = np.asarray(points, dtype=float)
        if len(p) >= 3:
            try:
                h = ConvexHull(p)
                return cls(p[h.vertices], label=label)
            except QhullError:
                pass
        centered = p - p.mean(axis=0)
        axis = np.linalg.svd(centered, full_matrices=False)[2][0] if len(p) > 1 else np.array([1.0, 0.0])
        s = centered @ axis
        lo, hi = p[np.argmin(s)], p[np.argmax(s)]
        if np.allclose(lo, hi):
            return cls(lo[None, :], label=label)
        return cls(np.array([lo, hi]), label=label)

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    def support(self, dirs):
        d = np.asarray(dirs, dtype=float)
        return (d @ self.vertices.T).max(axis=-1)

    def distance(self, pts):
        pts = np.ascontiguousarray(np.atleast_2d(pts), dtype=float)
        if len(self.vertices) == 1:
            return np.linalg.norm(pts - self.vertices[0], axis=1)
        return kernels.polygon_distance(pts, np.ascontiguousarray(self.vertices))

    def bounding_box(self):
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    @cached_property
    def edge_normal_angles(self) -> np.ndarray:
        """Angle of the outward normal of edge i (from vertex i to i+1)."""
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        return np.arctan2(e[:, 1], e[:, 0]) - np.pi / 2

    @cached_property
    def exterior_angles(self) -> np.ndarray:
        """Normal-cone angle at each vertex; they sum to 2*pi."""
        if len(self.vertices) == 1:
            return np.array([2.0 * np.pi])
        phi = self.edge_normal_angles
        return np.mod(phi - np.roll(phi, 1), 2.0 * np.pi)


@dataclass(frozen=True, eq=False)
class Polytope3D(ConvexBody):
    """Convex polytope in R^3 with its face lattice built from the hull.

    A coplanar vertex set yields a flat polygon flagged ``degenerate``; its
    facet half-space list is empty and only the triangulation is kept.
    """

    vertices: np.ndarray
    label: str | None = None
    dim: int = field(default=3, init=False)

    def __post_init__(self):
        p = _frozen(self.vertices)
        if p.ndim != 2 or p.shape[1] != 3 or len(p) < 3:
            raise ValueError("polytope needs at least three (N, 3) vertices")
        centered = p - p.mean(axis=0)
        sv = np.linalg.svd(centered, compute_uv=False)
        if sv[1] <= 1e-12 * sv[0]:
            raise ValueError("collinear vertex set: polytope of dimension < 2")
        if sv[2] <= 1e-12 * sv[0]:
            self._build_flat(p)
        else:
            self._build_solid(p)

    def _set(self, **kw):
        for k, v in kw.items():
            if isinstance(v, np.ndarray):
                v = _frozen(v)
            object.__setattr__(self, k, v)

    def _build_solid(self, p):
        h = ConvexHull(p)
        keep = np.unique(h.vertices)
        remap = -np.ones(len(p), dtype=int)
        remap[keep] = np.arange(len(keep))
        verts = p[keep]
        simplices = remap[h.simplices]
        normals = h.equations[:, :3]
        offsets = -h.equations[:, 3]
        tris = verts[simplices]
        cross = np.cross(tris[:, 1] - tris[:, 0], tris[:, 2] - tris[:, 0])
        areas = 0.5 * np.linalg.norm(cross, axis=1)
        edges, lengths, angles = [], [], []
        for i, nbrs in enumerate(h.neighbors):
            for j, nb in enumerate(nbrs):
                if nb <= i:
                    continue
                a, b = np.delete(simplices[i], j)
                n1, n2 = normals[i], normals[nb]
                ang = math.atan2(np.linalg.norm(np.cross(n1, n2)), float(n1 @ n2))
                edges.append((a, b))
                lengths.append(np.linalg.norm(verts[a] - verts[b]))
                angles.append(ang)
        self._set(
            vertices=verts,
            simplices=simplices,
            triangles=np.ascontiguousarray(tris),
            facet_normals=np.ascontiguousarray(normals),
            facet_offsets=np.ascontiguousarray(offsets),
            facet_areas=areas,
            edges=np.array(edges, dtype=int),
            edge_lengths=np.array(lengths),
            edge_angles=np.array(angles),
            degenerate=False,
            plane_normal=None,
        )

    def _build_flat(self, p):
        centroid = p.mean(axis=0)
        basis = np.linalg.svd(p - centroid, full_matrices=False)[2]
        e1, e2, nrm = basis[0], basis[1], basis[2]
        poly = Polygon.hull(np.column_stack([(p - centroid) @ e1, (p - centroid) @ e2]))
        verts = centroid + poly.vertices[:, :1] * e1 + poly.vertices[:, 1:2] * e2
        m = len(verts)
        simplices = np.array([[0, i, i + 1] for i in range(1, m - 1)], dtype=int)
        tris = verts[simplices]
        areas = 0.5 * np.linalg.norm(np.cross(tris[:, 1] - tris[:, 0], tris[:, 2] - tris[:, 0]), axis=1)
        edges = np.array([(i, (i + 1) % m) for i in range(m)], dtype=int)
        lengths = np.linalg.norm(verts[edges[:, 1]] - verts[edges[:, 0]], axis=1)
        self._set(
            vertices=verts,
            simplices=simplices,
            triangles=np.ascontiguousarray(tris),
            facet_normals=np.zeros((0, 3)),
            facet_offsets=np.zeros(0),
            facet_areas=areas,
            edges=edges,
            edge_lengths=lengths,
            # both sides of a flat face meet at every boundary edge
            edge_angles=np.full(m, np.pi),
            degenerate=True,
            plane_normal=nrm,
            planar_polygon=poly,
        )

    def support(self, dirs):
        d = np.asarray(dirs, dtype=float)
        return (d @ self.vertices.T).max(axis=-1)

    def distance(self, pts):
        pts = np.ascontiguousarray(np.atleast_2d(pts), dtype=float)
        return kernels.mesh_distance(pts, self.triangles, self.facet_normals, self.facet_offsets)

    def bounding_box(self):
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    @cached_property
    def vertex_solid_angles(self) -> np.ndarray:
        """Solid angle of the normal cone at each vertex; they sum to 4*pi."""
        if self.degenerate:
            return 2.0 * self.planar_polygon.exterior_angles
        out = np.zeros(len(self.vertices))
        for v in range(len(self.vertices)):
            rows = np.flatnonzero((self.simplices == v).any(axis=1))
            nrm = _unique_rows(self.facet_normals[rows])
            out[v] = _spherical_polygon_area(nrm)
        return out


def _unique_rows(a, decimals=9):
    _, idx = np.unique(np.round(a, decimals), axis=0, return_index=True)
    return a[np.sort(idx)]


def _spherical_polygon_area(nrm: np.ndarray) -> float:
    """Area of the convex spherical polygon with the given unit vertices."""
    if len(nrm) < 3:
        return 0.0
    axis = direction(nrm.sum(axis=0))
    ref = np.eye(3)[np.argmin(np.abs(axis))]
    e1 = direction(ref - (ref @ axis) * axis)
    e2 = np.cross(axis, e1)
    order = np.argsort(np.arctan2(nrm @ e2, nrm @ e1))
    ring = nrm[order]
    total = 0.0
    for b, c in zip(ring, np.roll(ring, -1, axis=0)):
        num = abs(axis @ np.cross(b, c))
        den = 1.0 + axis @ b + b @ c + c @ axis
        total += 2.0 * math.atan2(num, den)
    return total


# ------------------------------------------------------------- smooth bodies


@dataclass(frozen=True, eq=False)
class FourierBody2D(ConvexBody):
    """Planar body with support function a0 + sum a_j cos(j t) + b_j sin(j t)."""

    a0: float
    a: np.ndarray
    b: np.ndarray
    label: str | None = None
    dim: int = field(default=2, init=False)

    CONVEXITY_GRID = 1024
    DISTANCE_GRID = 2048

    def __post_init__(self):
        a = _frozen(np.atleast_1d(self.a))
        b = _frozen(np.atleast_1d(self.b))
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("cosine and sine coefficient arrays must match")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a0", float(self.a0))
        theta = 2.0 * np.pi * np.arange(self.CONVEXITY_GRID) / self.CONVEXITY_GRID
        if self.radius_of_curvature(theta).min() <= 0.0:
            raise ValueError("h + h'' must be positive: coefficients do not describe a convex body")

    @property
    def orders(self) -> np.ndarray:
        return np.arange(1, len(self.a) + 1)

    def h(self, theta, deriv: int = 0) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        j = self.orders
        jt = np.multiply.outer(theta, j)
        c, s = np.cos(jt), np.sin(jt)
        if deriv == 0:
            return self.a0 + c @ self.a + s @ self.b
        if deriv == 1:
            return (-s * j) @ self.a + (c * j) @ self.b
        if deriv == 2:
            return (-c * j**2) @ self.a + (-s * j**2) @ self.b
        raise ValueError("deriv must be 0, 1 or 2")

    def radius_of_curvature(self, theta) -> np.ndarray:
        return self.h(theta) + self.h(theta, 2)

    def support(self, dirs):
        d = np.asarray(dirs, dtype=float)
        return self.h(np.arctan2(d[..., 1], d[..., 0])) * np.linalg.norm(d, axis=-1)

    def boundary(self, theta) -> np.ndarray:
        """Boundary point with outward normal at angle theta."""
        theta = np.asarray(theta, dtype=float)
        h, dh = self.h(theta), self.h(theta, 1)
        return np.stack([h * np.cos(theta) - dh * np.sin(theta), h * np.sin(theta) + dh * np.cos(theta)], axis=-1)

    @cached_property
    def _distance_grid(self):
        dirs, _ = sphere_grid(2, self.DISTANCE_GRID)
        return np.ascontiguousarray(dirs), np.ascontiguousarray(self.support(dirs))

    def distance(self, pts):
        # dist(x, K) = max(0, max_u x.u - h(u)); grid sup, error ~ |x| dtheta^2 / 2
        pts = np.ascontiguousarray(np.atleast_2d(pts), dtype=float)
        dirs, h = self._distance_grid
        return np.maximum(kernels.support_gap_max(pts, dirs, h), 0.0)

    def bounding_box(self):
        lo = np.array([-self.h(np.pi), -self.h(1.5 * np.pi)])
        hi = np.array([self.h(0.0), self.h(0.5 * np.pi)])
        return lo, hi


@dataclass(frozen=True, eq=False)
class Ball(ConvexBody):
    center: np.ndarray
    radius: float
    label: str | None = None

    def __post_init__(self):
        c = _frozen(np.atleast_1d(self.center))
        if not self.radius > 0:
            raise ValueError("ball radius must be strictly positive")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self) -> int:
        return len(self.center)

    def support(self, dirs):
        d = np.asarray(dirs, dtype=float)
        return d @ self.center + self.radius * np.linalg.norm(d, axis=-1)

    def distance(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return np.maximum(np.linalg.norm(pts - self.center, axis=1) - self.radius, 0.0)

    def bounding_box(self):
        return self.center - self.radius, self.center + self.radius

    @property
    def symmetry_center(self):
        return self.center


@dataclass(frozen=True, eq=False)
class Ellipsoid(ConvexBody):
    """Axis-aligned ellipsoid sum((x - c)_i^2 / a_i^2) <= 1."""

    center: np.ndarray
    semi_axes: np.ndarray
    label: str | None = None

    def __post_init__(self):
        c = _frozen(np.atleast_1d(self.center))
        a = _frozen(np.atleast_1d(self.semi_axes))
        if c.shape != a.shape:
            raise ValueError("center and semi-axes must have the same dimension")
        if np.any(a <= 0):
            raise ValueError("semi-axes must be strictly positive")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "semi_axes", a)

    @property
    def dim(self) -> int:
        return len(self.center)

    def support(self, dirs):
        d = np.asarray(dirs, dtype=float)
        return d @ self.center + np.sqrt((d**2) @ (self.semi_axes**2))

    def distance(self, pts):
        pts = np.ascontiguousarray(np.atleast_2d(pts) - self.center, dtype=float)
        return kernels.ellipsoid_distance(pts, np.ascontiguousarray(self.semi_axes))

    def bounding_box(self):
        return self.center - self.semi_axes, self.center + self.semi_axes

    @property
    def symmetry_center(self):
        return self.center

    def gauge(self, pts) -> np.ndarray:
        """sqrt of the quadratic form q(x); 1 on the boundary."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return np.sqrt(np.sum(((pts - self.center) / self.semi_axes) ** 2, axis=1))


@dataclass(frozen=True, eq=False)
class ParallelBody(ConvexBody):
    """The Minkowski sum ``base + rho * B`` in support representation."""

    base: ConvexBody
    rho: float
    label: str | None = None

    def __post_init__(self):
        if self.rho < 0:
            raise ValueError("rho must be nonnegative")

    @property
    def dim(self) -> int:
        return self.base.dim

    def support(self, dirs):
        d = np.asarray(dirs, dtype=float)
        return self.base.support(d) + self.rho * np.linalg.norm(d, axis=-1)

    def distance(self, pts):
        return np.maximum(self.base.distance(pts) - self.rho, 0.0)

    def bounding_box(self):
        lo, hi = self.base.bounding_box()
        return lo - self.rho, hi + self.rho

    @property
    def symmetry_center(self):
        return self.base.symmetry_center


# ----------------------------------------------------------------- operations


def support(body: ConvexBody, dir) -> float | np.ndarray:
    """Support function h(body, u) for unit direction(s) ``dir``."""
    u = np.asarray(dir, dtype=float)
    if u.shape[-1] != body.dim:
        raise ValueError("direction dimension does not match the body")
    if np.any(np.abs(np.linalg.norm(u, axis=-1) - 1.0) > 1e-12):
        raise ValueError("direction must be a unit vector")
    val = body.support(u)
    return float(val) if np.ndim(val) == 0 else val


@dataclass(frozen=True)
class ShapeSummary:
    diameter: float
    mean_width: float
    steiner_point: np.ndarray

    @property
    def steiner_ball(self) -> Ball:
        return Ball(self.steiner_point, self.mean_width / 2.0)


def _default_nodes(n):
    return 4096 if n == 2 else 5810


def _min_nodes(n):
    return 64 if n == 2 else 590


def diameter(body: ConvexBody, grid: int | None = None) -> float:
    if isinstance(body, (Polygon, Polytope3D)):
        v = body.vertices
        return float(pdist(v).max()) if len(v) > 1 else 0.0
    if isinstance(body, Ball):
        return 2.0 * body.radius
    if isinstance(body, Ellipsoid):
        return 2.0 * float(body.semi_axes.max())
    if isinstance(body, ParallelBody):
        return diameter(body.base, grid) + 2.0 * body.rho
    return _sup_on_sphere(lambda d: body.support(d) + body.support(-d), body.dim, grid)


def mean_width_quadrature(body: ConvexBody, grid: int | None = None) -> float:
    """(2 / (n omega_n)) * integral of h over the sphere, by plain quadrature."""
    n = body.dim
    dirs, w = sphere_grid(n, grid or _default_nodes(n))
    return float(2.0 / (n * unit_ball_volume(n)) * (w @ body.support(dirs)))


def steiner_point_quadrature(body: ConvexBody, grid: int | None = None) -> np.ndarray:
    n = body.dim
    dirs, w = sphere_grid(n, grid or _default_nodes(n))
    return (w * body.support(dirs)) @ dirs / unit_ball_volume(n)


def _polygon_mean_width(poly: Polygon) -> float:
    # exact arc-by-arc integral of the piecewise trigonometric support function
    if len(poly.vertices) == 1:
        return 0.0
    phi = poly.edge_normal_angles
    start = np.roll(phi, 1)
    stop = start + poly.exterior_angles
    v = poly.vertices
    integral = v[:, 0] * (np.sin(stop) - np.sin(start)) - v[:, 1] * (np.cos(stop) - np.cos(start))
    return float(integral.sum() / np.pi)


def shape_summary(body: ConvexBody, grid: int | None = None) -> ShapeSummary:
    """Diameter, mean width and Steiner point of a body.

    Polytopes use exact piecewise integration (arc-wise in the plane,
    external angles in space); smooth bodies use the sphere rule with
    ``grid`` nodes (at least 64 in the plane, 590 in space).
    """
    n = body.dim
    if grid is not None and grid < _min_nodes(n):
        raise ValueError(f"angular grid needs at least {_min_nodes(n)} nodes in dimension {n}")
    if isinstance(body, ParallelBody):
        base = shape_summary(body.base, grid)
        return ShapeSummary(base.diameter + 2 * body.rho, base.mean_width + 2 * body.rho, base.steiner_point)
    D = diameter(body, grid)
    if isinstance(body, Polygon):
        w = _polygon_mean_width(body)
        s = body.exterior_angles @ body.vertices / (2.0 * np.pi)
    elif isinstance(body, Polytope3D):
        w = float(body.edge_lengths @ body.edge_angles / (4.0 * np.pi))
        s = body.vertex_solid_angles @ body.vertices / (4.0 * np.pi)
    elif isinstance(body, Ball):
        w, s = 2.0 * body.radius, body.center.copy()
    else:
        w = mean_width_quadrature(body, grid)
        s = steiner_point_quadrature(body, grid)
        if body.symmetry_center is not None:
            s = body.symmetry_center.copy()
    return ShapeSummary(float(D), float(w), np.asarray(s, dtype=float))


def minkowski_add_ball(body: ConvexBody, rho: float) -> ConvexBody:
    """``body + rho * B`` with support function h_body + rho."""
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    if rho == 0:
        return body
    if isinstance(body, Ball):
        return Ball(body.center, body.radius + rho)
    if isinstance(body, ParallelBody):
        return ParallelBody(body.base, body.rho + rho)
    return ParallelBody(body, float(rho))


def homothety(body: ConvexBody, t: float, center=None) -> ConvexBody:
    """The image of ``body`` under x -> center + t (x - center)."""
    if not t > 0:
        raise ValueError("homothety ratio must be positive")
    c = np.zeros(body.dim) if center is None else np.asarray(center, dtype=float)
    if isinstance(body, Polygon):
        return Polygon(c + t * (body.vertices - c), label=body.label)
    if isinstance(body, Polytope3D):
        return Polytope3D(c + t * (body.vertices - c), label=body.label)
    if isinstance(body, Ball):
        return Ball(c + t * (body.center - c), t * body.radius, label=body.label)
    if isinstance(body, Ellipsoid):
        return Ellipsoid(c + t * (body.center - c), t * body.semi_axes, label=body.label)
    if isinstance(body, FourierBody2D):
        a, b = t * body.a, t * body.b
        if len(a) == 0:
            a, b = np.zeros(1), np.zeros(1)
        a = a.copy()
        b = b.copy()
        a[0] += (1 - t) * c[0]
        b[0] += (1 - t) * c[1]
        return FourierBody2D(t * body.a0, a, b, label=body.label)
    if isinstance(body, ParallelBody):
        return ParallelBody(homothety(body.base, t, c), t * body.rho, label=body.label)
    raise TypeError(f"unsupported body type {type(body).__name__}")


def translate(body: ConvexBody, v) -> ConvexBody:
    v = np.asarray(v, dtype=float)
    if isinstance(body, Polygon):
        return Polygon(body.vertices + v, label=body.label)
    if isinstance(body, Polytope3D):
        return Polytope3D(body.vertices + v, label=body.label)
    if isinstance(body, Ball):
        return Ball(body.center + v, body.radius, label=body.label)
    if isinstance(body, Ellipsoid):
        return Ellipsoid(body.center + v, body.semi_axes, label=body.label)
    if isinstance(body, FourierBody2D):
        a = body.a.copy() if len(body.a) else np.zeros(1)
        b = body.b.copy() if len(body.b) else np.zeros(1)
        a[0] += v[0]
        b[0] += v[1]
        return FourierBody2D(body.a0, a, b, label=body.label)
    if isinstance(body, ParallelBody):
        return ParallelBody(translate(body.base, v), body.rho, label=body.label)
    raise TypeError(f"unsupported body type {type(body).__name__}")


# ------------------------------------------------------------ Hausdorff metric


def _sup_on_sphere(fun, n, grid=None) -> float:
    """Grid supremum of ``fun`` over S^{n-1} followed by one local refinement."""
    nodes = max(grid or 0, _default_nodes(n))
    dirs, _ = sphere_grid(n, nodes)
    vals = fun(dirs)
    i = int(np.argmax(vals))
    best = float(vals[i])
    if n == 2:
        t0 = math.atan2(dirs[i, 1], dirs[i, 0])
        step = 2.0 * np.pi / len(dirs)
        res = minimize_scalar(
            lambda t: -float(fun(np.array([math.cos(t), math.sin(t)]))),
            bounds=(t0 - step, t0 + step),
            method="bounded",
            options={"xatol": 1e-13},
        )
        return max(best, -float(res.fun))

    def on_sphere(x):
        th, ph = x
        return np.array([math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)])

    d = dirs[i]
    x0 = np.array([math.acos(np.clip(d[2], -1, 1)), math.atan2(d[1], d[0])])
    res = minimize(lambda x: -float(fun(on_sphere(x))), x0, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-15, "initial_simplex": x0 + 0.02 * np.array([[0, 0], [1, 0], [0, 1]])})
    return max(best, -float(res.fun))


def _farthest_from(body: ConvexBody, c: np.ndarray) -> float | None:
    if isinstance(body, (Polygon, Polytope3D)):
        return float(np.linalg.norm(body.vertices - c, axis=1).max())
    return None


def _signed_boundary_distance(body: ConvexBody, c: np.ndarray) -> float | None:
    """min_u (h(u) - c.u): distance to the boundary inside, minus the distance outside."""
    if isinstance(body, Polygon) and not body.degenerate:
        out = float(body.distance(c[None, :])[0])
        if out > 0:
            return -out
        phi = body.edge_normal_angles
        nrm = np.column_stack([np.cos(phi), np.sin(phi)])
        return float(np.min(np.einsum("ij,ij->i", nrm, body.vertices) - nrm @ c))
    if isinstance(body, Polytope3D) and not body.degenerate:
        out = float(body.distance(c[None, :])[0])
        if out > 0:
            return -out
        return float(np.min(body.facet_offsets - body.facet_normals @ c))
    return None


def _hausdorff_to_ball(body: ConvexBody, ball: Ball) -> float | None:
    far = _farthest_from(body, ball.center)
    near = _signed_boundary_distance(body, ball.center)
    if far is None or near is None:
        return None
    return max(far - ball.radius, ball.radius - near)


def hausdorff_distance(a: ConvexBody, b: ConvexBody, grid: int | None = None) -> float:
    """d_H(a, b) = sup_u |h_a(u) - h_b(u)|.

    Closed forms are used for ball/ball, polytope/ball and polytope/polytope
    pairs; everything else is a grid supremum with local refinement.
    """
    if a.dim != b.dim:
        raise ValueError("bodies live in different dimensions")
    if isinstance(a, Ball) and isinstance(b, Ball):
        return float(np.linalg.norm(a.center - b.center) + abs(a.radius - b.radius))
    if isinstance(b, Ball):
        exact = _hausdorff_to_ball(a, b)
        if exact is not None:
            return exact
    if isinstance(a, Ball):
        exact = _hausdorff_to_ball(b, a)
        if exact is not None:
            return exact
    poly = (Polygon, Polytope3D)
    if isinstance(a, poly) and isinstance(b, poly):
        # dist(., K) is convex, so each one-sided excess peaks at a vertex
        return float(max(b.distance(a.vertices).max(), a.distance(b.vertices).max()))
    return hausdorff_distance_grid(a, b, grid)


def hausdorff_distance_grid(a: ConvexBody, b: ConvexBody, grid: int | None = None) -> float:
    if a.dim != b.dim:
        raise ValueError("bodies live in different dimensions")
    return _sup_on_sphere(lambda d: np.abs(a.support(d) - b.support(d)), a.dim, grid)


def steiner_ball(body: ConvexBody, grid: int | None = None) -> Ball:
    return shape_summary(body, grid).steiner_ball
