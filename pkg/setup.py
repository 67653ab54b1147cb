import os

from setuptools import Extension, setup

# The compiled kernels are an optimisation, not a requirement: if Cython is
# missing (or RADIALEIT_NO_EXT is set) we install the pure-Python package and
# radialeit.kernels falls back to the NumPy implementation at import time.
ext_modules = []
if not os.environ.get("RADIALEIT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "radialeit._kernels",
                    ["src/radialeit/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
