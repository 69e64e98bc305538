import os

import numpy as np
from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - pure-Python install
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("HESSIAN_SYMM_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "hessian_symm._kernels",
                ["src/hessian_symm/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
