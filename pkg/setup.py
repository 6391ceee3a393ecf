"""Build the optional compiled kernels.

The package works without the extension: udeed._kernels falls back to the
pure-numpy implementation when the compiled module is missing, so the
extension is marked optional and a failed build does not fail the install.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "udeed._kernels._speedups",
                sources=["src/udeed/_kernels/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    # No Cython or numpy at build time: install as pure Python.
    pass

setup(ext_modules=ext_modules)
