"""Builds the optional compiled elimination kernel; the package works without it."""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("JACOBI_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext = Extension(
            "jacobidiag._modelim",
            ["src/jacobidiag/_modelim.pyx"],
            language="c++",
            extra_compile_args=["-O3"],
        )
        ext_modules = cythonize([ext], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
