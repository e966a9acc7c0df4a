"""Build script for the optional compiled kernels.

The package works without the extension; ``mas_uniformity._backend`` falls
back to the numpy implementation when ``_core`` cannot be imported.
"""
import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext

ext_modules = []
if os.environ.get("MAS_UNIFORMITY_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "mas_uniformity._core",
                    ["src/mas_uniformity/_core.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    # no -ffast-math: compensated summation relies on strict IEEE ordering
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError as exc:
        print(f"mas_uniformity: building without compiled kernels ({exc})", file=sys.stderr)


class OptionalBuildExt(build_ext):
    """Treat a failed compile as a warning so the pure fallback still installs."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"mas_uniformity: extension build failed ({exc}); using pure fallback",
                  file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"mas_uniformity: could not compile {ext.name} ({exc})", file=sys.stderr)


setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
