"""Builds the optional compiled kernel.

The package is pure Python plus one accelerator extension
(contactsurgery._cfcore) for the continued-fraction and 2x2
matrix kernels.  If Cython or a C compiler is unavailable the
extension is skipped and the package falls back to the pure
implementation at import time.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to a pure-Python install on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"skipping compiled kernel build: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping compiled kernel {ext.name}: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not available; installing with pure-Python kernels")
        return []
    return cythonize(
        ["src/contactsurgery/_cfcore.pyx"],
        compiler_directives={"language_level": 3},
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
