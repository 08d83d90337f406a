"""Build script for the optional compiled kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed compile is downgraded to a warning rather than
aborting the install.
"""

import os
import warnings

from setuptools import Extension, setup

PYX = os.path.join("src", "ctrltopo", "_speedups.pyx")

ext_modules = []
if os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize([Extension("ctrltopo._speedups", [PYX])], language_level=3)
    except ImportError:
        warnings.warn("Cython not available; installing with pure-Python kernels only")

setup(ext_modules=ext_modules)
