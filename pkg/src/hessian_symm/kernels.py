"""Backend selection for the hot distance kernels.

The compiled extension is used when it was built; otherwise the NumPy
fallback is loaded. Setting ``HESSIAN_SYMM_PURE_PYTHON=1`` forces the
fallback, which is how the benchmark and the parity tests reach it.
"""
import os

from hessian_symm import _kernels_py

if os.environ.get("HESSIAN_SYMM_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from hessian_symm import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

polygon_distance = _impl.polygon_distance
mesh_distance = _impl.mesh_distance
ellipsoid_distance = _impl.ellipsoid_distance
support_gap_max = _impl.support_gap_max

__all__ = [
    "BACKEND",
    "polygon_distance",
    "mesh_distance",
    "ellipsoid_distance",
    "support_gap_max",
]
