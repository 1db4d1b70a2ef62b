"""Build script: compiles the optional kernel extension.

The package works without the extension (a pure-Python fallback is
selected at import time), so the extension is marked optional and any
build failure degrades to the slow path instead of aborting the install.
"""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "jellytopo._speedups",
                ["src/jellytopo/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
