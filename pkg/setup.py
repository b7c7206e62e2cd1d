"""Build script: compiles the batch-transform kernel when a toolchain is present.

The package is fully functional without the extension; morphplay.kernels falls
back to the vectorized numpy implementation at import time.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Treat extension build failures as non-fatal (pure fallback exists)."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or toolchain missing
            print(f"warning: skipping compiled kernels ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name} ({exc})")


def extensions():
    try:
        from Cython.Build import cythonize
        from setuptools.extension import Extension
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "morphplay.kernels._batch",
                sources=["src/morphplay/kernels/_batch.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
