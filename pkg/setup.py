"""Build script.

The package is pure Python plus numpy.  If Cython and a C++ compiler are
available, a compiled kernel module (lzsix._kernels._speedups) is built for
the hot inner loops; otherwise the install silently falls back to the pure
implementations selected at import time.
"""

import os

from setuptools import setup

ext_modules = []
try:
    if not os.path.exists("src/lzsix/_kernels/_speedups.pyx"):
        raise ImportError
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "lzsix._kernels._speedups",
                sources=["src/lzsix/_kernels/_speedups.pyx"],
                language="c++",
                extra_compile_args=["-O3", "-std=c++17"],
                include_dirs=[numpy.get_include()],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
