import os

from setuptools import Extension, setup

# The compiled tridiagonal kernels are optional: the package falls back to a
# pure-Python implementation when the extension is unavailable.  Set
# DRIFTEIG_NO_EXT=1 to skip the build entirely.
ext_modules = []
if os.environ.get("DRIFTEIG_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "drifteig._tridiag",
                    ["src/drifteig/_tridiag.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
