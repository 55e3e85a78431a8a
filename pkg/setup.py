"""Build script.

The package is pure Python; a small Cython extension accelerating the sparse
multiplication kernel is built when Cython is available.  Failure to build the
extension is not fatal: the package falls back to the pure-Python kernel.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "loopyang._kernel._mulcore",
                ["src/loopyang/_kernel/_mulcore.pyx"],
            )
        ],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
