# Builds the optional compiled kernel extension. If Cython (or a C compiler)
# is unavailable, the build falls back to a pure-Python package; the kernels
# package then selects its NumPy reference implementation at import time.
#
# In-place build for development:
#     python setup.py build_ext --inplace
import os

from setuptools import setup

ext_modules = []
if os.environ.get("MANOMA_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        include_dirs = []
        try:
            import numpy

            include_dirs.append(numpy.get_include())
        except ImportError:
            pass

        ext_modules = cythonize(
            [
                Extension(
                    "manoma._kernels._fast",
                    ["src/manoma/_kernels/_fast.pyx"],
                    include_dirs=include_dirs,
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
