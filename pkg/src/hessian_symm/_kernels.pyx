# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled distance kernels for the Monte-Carlo parallel-body oracle.

Every function mirrors the NumPy version in ``_kernels_py`` exactly; the two
are interchangeable and compared in the test suite.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, INFINITY

cnp.import_array()


cdef inline double _seg_dist2_2d(double px, double py, double ax, double ay,
                                 double bx, double by) nogil:
    cdef double dx = bx - ax, dy = by - ay
    cdef double L2 = dx * dx + dy * dy
    cdef double t = 0.0
    if L2 > 0.0:
        t = ((px - ax) * dx + (py - ay) * dy) / L2
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    cdef double qx = ax + t * dx - px, qy = ay + t * dy - py
    return qx * qx + qy * qy


def polygon_distance(const double[:, ::1] pts, const double[:, ::1] verts):
    """Euclidean distance from each point to a convex CCW polygon (0 inside)."""
    cdef Py_ssize_t M = pts.shape[0], N = verts.shape[0]
    cdef Py_ssize_t i, j, jn
    cdef double px, py, ax, ay, bx, by, cr, d2, best
    cdef bint inside
    out = np.empty(M, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(M):
            px = pts[i, 0]
            py = pts[i, 1]
            inside = N >= 2
            for j in range(N):
                jn = j + 1 if j + 1 < N else 0
                ax = verts[j, 0]; ay = verts[j, 1]
                bx = verts[jn, 0]; by = verts[jn, 1]
                cr = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
                if cr < 0.0:
                    inside = False
                    break
            if inside:
                o[i] = 0.0
                continue
            best = INFINITY
            for j in range(N):
                jn = j + 1 if j + 1 < N else 0
                d2 = _seg_dist2_2d(px, py, verts[j, 0], verts[j, 1],
                                   verts[jn, 0], verts[jn, 1])
                if d2 < best:
                    best = d2
            o[i] = sqrt(best)
    return out


cdef inline double _seg_dist2_3d(double px, double py, double pz,
                                 double ax, double ay, double az,
                                 double bx, double by, double bz) nogil:
    cdef double dx = bx - ax, dy = by - ay, dz = bz - az
    cdef double L2 = dx * dx + dy * dy + dz * dz
    cdef double t = 0.0
    if L2 > 0.0:
        t = ((px - ax) * dx + (py - ay) * dy + (pz - az) * dz) / L2
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    cdef double qx = ax + t * dx - px
    cdef double qy = ay + t * dy - py
    cdef double qz = az + t * dz - pz
    return qx * qx + qy * qy + qz * qz


cdef double _tri_dist2(double px, double py, double pz,
                       const double[:, :, ::1] tris, Py_ssize_t t) nogil:
    cdef double ax = tris[t, 0, 0], ay = tris[t, 0, 1], az = tris[t, 0, 2]
    cdef double bx = tris[t, 1, 0], by = tris[t, 1, 1], bz = tris[t, 1, 2]
    cdef double cx = tris[t, 2, 0], cy = tris[t, 2, 1], cz = tris[t, 2, 2]
    cdef double e0x = bx - ax, e0y = by - ay, e0z = bz - az
    cdef double e1x = cx - ax, e1y = cy - ay, e1z = cz - az
    cdef double wx = px - ax, wy = py - ay, wz = pz - az
    cdef double d00 = e0x * e0x + e0y * e0y + e0z * e0z
    cdef double d01 = e0x * e1x + e0y * e1y + e0z * e1z
    cdef double d11 = e1x * e1x + e1y * e1y + e1z * e1z
    cdef double d20 = wx * e0x + wy * e0y + wz * e0z
    cdef double d21 = wx * e1x + wy * e1y + wz * e1z
    cdef double den = d00 * d11 - d01 * d01
    cdef double v, w, qx, qy, qz, best, d2
    if den > 0.0:
        v = (d11 * d20 - d01 * d21) / den
        w = (d00 * d21 - d01 * d20) / den
        if v >= 0.0 and w >= 0.0 and v + w <= 1.0:
            qx = ax + v * e0x + w * e1x - px
            qy = ay + v * e0y + w * e1y - py
            qz = az + v * e0z + w * e1z - pz
            return qx * qx + qy * qy + qz * qz
    best = _seg_dist2_3d(px, py, pz, ax, ay, az, bx, by, bz)
    d2 = _seg_dist2_3d(px, py, pz, bx, by, bz, cx, cy, cz)
    if d2 < best:
        best = d2
    d2 = _seg_dist2_3d(px, py, pz, cx, cy, cz, ax, ay, az)
    if d2 < best:
        best = d2
    return best


def mesh_distance(const double[:, ::1] pts, const double[:, :, ::1] tris,
                  const double[:, ::1] normals, const double[::1] offsets):
    """Distance from each point to a convex triangulated polytope.

    ``normals``/``offsets`` hold the facet half-spaces ``n.x <= b``; with no
    facets (a flat polytope) the distance to the triangles is returned as is.
    """
    cdef Py_ssize_t M = pts.shape[0], T = tris.shape[0], F = normals.shape[0]
    cdef Py_ssize_t i, t, f
    cdef double px, py, pz, best, d2
    cdef bint inside
    out = np.empty(M, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(M):
            px = pts[i, 0]
            py = pts[i, 1]
            pz = pts[i, 2]
            inside = F > 0
            for f in range(F):
                if normals[f, 0] * px + normals[f, 1] * py + normals[f, 2] * pz > offsets[f]:
                    inside = False
                    break
            if inside:
                o[i] = 0.0
                continue
            best = INFINITY
            for t in range(T):
                d2 = _tri_dist2(px, py, pz, tris, t)
                if d2 < best:
                    best = d2
            o[i] = sqrt(best)
    return out


def ellipsoid_distance(const double[:, ::1] pts, const double[::1] axes):
    """Distance to the centered axis-aligned ellipsoid sum(x_i^2/a_i^2) <= 1."""
    cdef Py_ssize_t M = pts.shape[0], d = pts.shape[1]
    cdef Py_ssize_t i, j, it
    cdef double q, t, F, dF, s, a2, y, dist2, x, step
    out = np.empty(M, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(M):
            q = 0.0
            for j in range(d):
                q += pts[i, j] * pts[i, j] / (axes[j] * axes[j])
            if q <= 1.0:
                o[i] = 0.0
                continue
            # F(t) = sum (a y / (a^2 + t))^2 - 1 is convex decreasing: Newton from 0 is monotone.
            t = 0.0
            for it in range(200):
                F = -1.0
                dF = 0.0
                for j in range(d):
                    a2 = axes[j] * axes[j]
                    y = pts[i, j]
                    s = axes[j] * y / (a2 + t)
                    F += s * s
                    dF -= 2.0 * s * s / (a2 + t)
                step = F / dF
                t -= step
                if fabs(step) <= 1e-15 * (1.0 + t):
                    break
            dist2 = 0.0
            for j in range(d):
                a2 = axes[j] * axes[j]
                y = pts[i, j]
                x = a2 * y / (a2 + t)
                dist2 += (y - x) * (y - x)
            o[i] = sqrt(dist2)
    return out


def support_gap_max(const double[:, ::1] pts, const double[:, ::1] dirs,
                    const double[::1] h):
    """max over directions g of (p . u_g - h_g) for every point p."""
    cdef Py_ssize_t M = pts.shape[0], G = dirs.shape[0], d = pts.shape[1]
    cdef Py_ssize_t i, g, j
    cdef double best, val
    out = np.empty(M, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(M):
            best = -INFINITY
            for g in range(G):
                val = -h[g]
                for j in range(d):
                    val += pts[i, j] * dirs[g, j]
                if val > best:
                    best = val
            o[i] = best
    return out
