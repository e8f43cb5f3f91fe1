"""Build script for the optional compiled kernels.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    extensions = [
        Extension(
            "polytorus._kernels._core",
            ["src/polytorus/_kernels/_core.pyx"],
            include_dirs=[np.get_include()],
            extra_compile_args=["-O3"],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )
    ]
    ext_modules = cythonize(extensions, compiler_directives={"language_level": 3})
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"polytorus: skipping compiled kernels ({exc}); pure-python fallback will be used")

setup(ext_modules=ext_modules)
