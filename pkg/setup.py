"""Build hook for the optional compiled kernels.

The Cython extension is optional: without Cython, or if compilation fails,
the package installs without it and falls back to the NumPy kernels at import.
"""
import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as e:  # no compiler, missing headers, ...
            print(f"warning: compiled kernels not built ({e}); using the NumPy fallback", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as e:
            print(f"warning: {ext.name} not built ({e}); using the NumPy fallback", file=sys.stderr)


ext_modules = []
if not os.environ.get("ELASTO_WAVES_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "elasto_waves.numerics._kernels",
                    ["src/elasto_waves/numerics/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    # no fused multiply-add, so results match the NumPy kernels bit for bit
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
