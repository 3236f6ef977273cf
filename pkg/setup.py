"""Build script for the optional compiled kernel.

The package is fully functional without the extension: lieremark.kernels
falls back to the pure-Python twin when the compiled module is missing.
"""

import os

from setuptools import Extension, setup

_PYX = os.path.join("src", "lieremark", "_kernels_cy.pyx")

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    if os.path.exists(_PYX):
        ext_modules = cythonize(
            [Extension("lieremark._kernels_cy", [_PYX])],
            compiler_directives={"language_level": "3"},
        )
    else:
        ext_modules = []

setup(ext_modules=ext_modules)
