"""Build script: compiles the optional Cython kernel for m-form evaluation.

The package works without the extension (a numpy fallback is selected at
import time), so the extension is marked optional and a failed compile
only costs speed.
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "caliblab._formeval",
                ["src/caliblab/_formeval.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
