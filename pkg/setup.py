"""Build script for the optional compiled kernels.

The extension is marked optional: if Cython or a C compiler is missing the
package still installs and ``anycast.kernels`` falls back to numpy.
"""
import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "anycast._kernels",
                ["src/anycast/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
