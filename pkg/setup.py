"""Build script for the optional compiled sampling kernel.

The package works without the extension (a NumPy fallback is selected at
import time); building it just makes the Monte Carlo paths faster.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import os

    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/skewsum/_mckernel.pyx",
        language_level="3",
        compiler_directives={"boundscheck": False, "wraparound": False, "cdivision": True},
    )
    # The numpy.random C API lives in a static library shipped with numpy.
    npyrandom_dir = os.path.join(os.path.dirname(np.__file__), "random", "lib")
    for ext in ext_modules:
        ext.include_dirs = [np.get_include()]
        ext.library_dirs = [npyrandom_dir]
        ext.libraries = ["npyrandom"]
        ext.define_macros = [("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")]
except Exception as exc:  # pragma: no cover - build-environment dependent
    sys.stderr.write(f"skewsum: compiled kernel skipped ({exc}); using NumPy fallback\n")
    ext_modules = []

setup(ext_modules=ext_modules)
