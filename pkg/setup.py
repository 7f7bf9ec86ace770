import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("KTGROUPS_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("ktgroups._ckernels", ["src/ktgroups/_ckernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        # No Cython: install pure-Python only, kernels fall back at import.
        ext_modules = []

setup(ext_modules=ext_modules)
