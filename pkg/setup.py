import os
import sys

from setuptools import Extension, setup


def extensions():
    if os.environ.get("PADECHEB_PURE_PYTHON"):
        return []
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        sys.stderr.write("Cython/numpy unavailable: installing the pure-Python kernels only\n")
        return []
    ext = Extension(
        "padecheb._ckernels",
        ["src/padecheb/_ckernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # no FMA contraction: the compiled kernels must round like the Python ones
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions())
