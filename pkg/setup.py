"""Build script: compiles the optional fixed-point series kernel.

The compiled module is a drop-in replacement for blockzeta._series_py;
if Cython or a C compiler is missing the install proceeds and the
package falls back to the pure-Python kernel at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "blockzeta._series_c",
                ["src/blockzeta/_series_c.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
