"""Build script for the optional compiled kernels.

Set PLUENNECKE_NO_EXT=1 to skip the extension; the package then runs on
its pure-Python kernels.
"""
import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("PLUENNECKE_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "pluennecke._kernels",
        ["src/pluennecke/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions())
