"""Builds the optional compiled kernels.

The package works without them (numpy fallback); to compile in place run:
    python setup.py build_ext --inplace
"""
from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "pqstancu._ckernels",
                ["src/pqstancu/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
