"""Parity between the compiled distance kernels and the NumPy fallback."""
import os
import subprocess
import sys

import numpy as np
import pytest

from hessian_symm import _kernels_py, kernels
from hessian_symm.geometry import FourierBody2D, Polygon, Polytope3D, sphere_grid

ext = pytest.importorskip("hessian_symm._kernels")

RNG = np.random.default_rng(11)


def _polygon():
    return Polygon.hull(RNG.normal(size=(30, 2)))


def _polytope():
    return Polytope3D(RNG.normal(size=(40, 3)))


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_polygon_distance_parity():
    poly = _polygon()
    pts = np.ascontiguousarray(RNG.uniform(-3, 3, size=(5000, 2)))
    v = np.ascontiguousarray(poly.vertices)
    np.testing.assert_allclose(ext.polygon_distance(pts, v), _kernels_py.polygon_distance(pts, v), atol=1e-13)


def test_mesh_distance_parity():
    p = _polytope()
    pts = np.ascontiguousarray(RNG.uniform(-3, 3, size=(3000, 3)))
    a = ext.mesh_distance(pts, p.triangles, p.facet_normals, p.facet_offsets)
    b = _kernels_py.mesh_distance(pts, p.triangles, p.facet_normals, p.facet_offsets)
    np.testing.assert_allclose(a, b, atol=1e-13)


@pytest.mark.parametrize("axes", [(1.2, 1 / 1.2), (1.5, 1.0, 0.4), (1.0, 1.0)])
def test_ellipsoid_distance_parity(axes):
    axes = np.ascontiguousarray(axes, dtype=float)
    pts = np.ascontiguousarray(RNG.uniform(-3, 3, size=(3000, len(axes))))
    np.testing.assert_allclose(ext.ellipsoid_distance(pts, axes), _kernels_py.ellipsoid_distance(pts, axes), atol=1e-12)


def test_support_gap_parity():
    body = FourierBody2D(1.0, [0.0, 0.05, 0.02], [0.0, 0.0, 0.03])
    dirs, _ = sphere_grid(2, 512)
    dirs = np.ascontiguousarray(dirs)
    h = np.ascontiguousarray(body.support(dirs))
    pts = np.ascontiguousarray(RNG.uniform(-2, 2, size=(2000, 2)))
    np.testing.assert_allclose(ext.support_gap_max(pts, dirs, h), _kernels_py.support_gap_max(pts, dirs, h), atol=1e-13)


def test_pure_python_switch():
    env = dict(os.environ, HESSIAN_SYMM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from hessian_symm import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
