"""Build script: compiles the accelerator extension when a toolchain is
available, otherwise installs with the pure NumPy backend only."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("CNMARKERS_SKIP_EXTENSION") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/cnmarkers/_accel/_kernels.pyx"],
            language_level=3,
        )
        for ext in ext_modules:
            ext.include_dirs = [numpy.get_include()]
            ext.define_macros = [("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")]
    except Exception as exc:  # missing Cython/compiler: fall back silently
        print(f"cnmarkers: building without compiled kernels ({exc})")
        ext_modules = []

setup(ext_modules=ext_modules)
