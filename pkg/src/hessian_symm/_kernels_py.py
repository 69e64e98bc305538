"""NumPy implementations of the distance kernels.

Same contracts as the compiled ``_kernels`` module. Points are processed in
chunks so the pairwise temporaries stay small.
"""
import numpy as np

_CHUNK = 4096


def _chunks(m):
    for start in range(0, m, _CHUNK):
        yield slice(start, min(start + _CHUNK, m))


def _segment_dist2(p, a, b):
    # p: (M, 1, d); a, b: (E, d) -> (M, E)
    d = b - a
    L2 = np.einsum("ij,ij->i", d, d)
    safe = np.where(L2 > 0.0, L2, 1.0)
    t = np.einsum("mej,ej->me", p - a, d) / safe
    t = np.where(L2 > 0.0, np.clip(t, 0.0, 1.0), 0.0)
    q = a + t[..., None] * d - p
    return np.einsum("mej,mej->me", q, q)


def polygon_distance(pts, verts):
    pts = np.ascontiguousarray(pts, dtype=float)
    verts = np.ascontiguousarray(verts, dtype=float)
    nxt = np.roll(verts, -1, axis=0)
    out = np.empty(len(pts))
    for sl in _chunks(len(pts)):
        p = pts[sl][:, None, :]
        e = nxt - verts
        w = p - verts
        cross = e[:, 0] * w[..., 1] - e[:, 1] * w[..., 0]
        inside = np.all(cross >= 0.0, axis=1) & (len(verts) >= 2)
        d2 = _segment_dist2(p, verts, nxt).min(axis=1)
        out[sl] = np.where(inside, 0.0, np.sqrt(d2))
    return out


def _triangle_dist2(p, tris):
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    e0, e1 = b - a, c - a
    w = p - a
    d00 = np.einsum("ij,ij->i", e0, e0)
    d01 = np.einsum("ij,ij->i", e0, e1)
    d11 = np.einsum("ij,ij->i", e1, e1)
    d20 = np.einsum("mtj,tj->mt", w, e0)
    d21 = np.einsum("mtj,tj->mt", w, e1)
    den = d00 * d11 - d01 * d01
    safe = np.where(den > 0.0, den, 1.0)
    v = (d11 * d20 - d01 * d21) / safe
    u = (d00 * d21 - d01 * d20) / safe
    interior = (den > 0.0) & (v >= 0.0) & (u >= 0.0) & (v + u <= 1.0)
    q = a + v[..., None] * e0 + u[..., None] * e1 - p
    plane = np.einsum("mtj,mtj->mt", q, q)
    edge = np.minimum(
        np.minimum(_segment_dist2(p, a, b), _segment_dist2(p, b, c)),
        _segment_dist2(p, c, a),
    )
    return np.where(interior, plane, edge)


def mesh_distance(pts, tris, normals, offsets):
    pts = np.ascontiguousarray(pts, dtype=float)
    tris = np.ascontiguousarray(tris, dtype=float)
    normals = np.asarray(normals, dtype=float).reshape(-1, 3)
    offsets = np.asarray(offsets, dtype=float)
    out = np.empty(len(pts))
    for sl in _chunks(len(pts)):
        p = pts[sl]
        if len(normals):
            inside = np.all(p @ normals.T <= offsets, axis=1)
        else:
            inside = np.zeros(len(p), dtype=bool)
        d = np.zeros(len(p))
        outside = ~inside
        if outside.any():
            d[outside] = np.sqrt(_triangle_dist2(p[outside][:, None, :], tris).min(axis=1))
        out[sl] = d
    return out


def ellipsoid_distance(pts, axes):
    pts = np.asarray(pts, dtype=float)
    axes = np.asarray(axes, dtype=float)
    a2 = axes**2
    q = np.sum(pts**2 / a2, axis=1)
    out = np.zeros(len(pts))
    outside = q > 1.0
    y = pts[outside]
    t = np.zeros(len(y))
    active = np.ones(len(y), dtype=bool)
    for _ in range(200):
        if not active.any():
            break
        s = axes * y[active] / (a2 + t[active, None])
        F = np.sum(s * s, axis=1) - 1.0
        dF = -2.0 * np.sum(s * s / (a2 + t[active, None]), axis=1)
        step = F / dF
        t[active] -= step
        idx = np.flatnonzero(active)
        active[idx[np.abs(step) <= 1e-15 * (1.0 + t[active])]] = False
    x = a2 * y / (a2 + t[:, None])
    out[outside] = np.sqrt(np.sum((y - x) ** 2, axis=1))
    return out


def support_gap_max(pts, dirs, h):
    pts = np.asarray(pts, dtype=float)
    dirs = np.asarray(dirs, dtype=float)
    h = np.asarray(h, dtype=float)
    out = np.empty(len(pts))
    for sl in _chunks(len(pts)):
        out[sl] = (pts[sl] @ dirs.T - h).max(axis=1)
    return out
