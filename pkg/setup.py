"""Build script: compiles the optional accelerator extension when Cython is present.

The package is fully functional without the extension; nullcong._core falls
back to the pure-Python kernels at import time.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext = Extension(
        "nullcong._core._speedups",
        ["src/nullcong/_core/_speedups.pyx"],
        optional=True,
    )
    ext_modules = cythonize([ext], language_level="3")

setup(ext_modules=ext_modules)
