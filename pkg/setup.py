"""Build script: compiles the optional fast kernels when Cython is available.

The package is fully functional without the extension (a pure-Python lane is
selected at import time), so any failure here downgrades to a warning.
Set BURNSIDE_NO_EXT=1 to skip the extension build entirely.
"""

import os
import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            warnings.warn(f"skipping optional extension build: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping optional extension {ext.name}: {exc}")


ext_modules = []
if not os.environ.get("BURNSIDE_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "burnside._kernels._speedups",
                    ["src/burnside/_kernels/_speedups.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except Exception as exc:
        warnings.warn(f"Cython unavailable, building pure-Python only: {exc}")
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
