"""Build hook for the optional compiled kernels.

The package is fully functional without the extension; set APMETRIC_NO_EXTENSION=1
to skip compilation entirely (the pure-Python kernels are used at runtime).
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("APMETRIC_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "apmetric._ckernels",
                    sources=["src/apmetric/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
