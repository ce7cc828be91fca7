"""Build script: compiles the optional grid-kernel extension.

If Cython or a C compiler is unavailable the build falls through and the
package runs on the numpy fallback selected at import time.
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "pmcurrents.oracle._gridkernels",
                ["src/pmcurrents/oracle/_gridkernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

for ext in extensions:
    ext.optional = True

setup(ext_modules=extensions)
