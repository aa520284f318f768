"""Builds the optional Cython kernel; the package still works without it."""

import os

import numpy
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CDMATURBO_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "cdmaturbo._ckernels",
                    ["src/cdmaturbo/_ckernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives=dict(language_level="3", boundscheck=False, wraparound=False),
        )

setup(ext_modules=ext_modules)
