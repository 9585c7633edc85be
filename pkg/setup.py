"""Build the optional Cython shooting kernel.

If Cython or a C compiler is unavailable the build falls back to a pure-Python
package; ptgpe then selects the numpy kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "ptgpe._core._shoot",
                ["src/ptgpe/_core/_shoot.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - environment without Cython/cc
    print(f"ptgpe: building without the compiled kernel ({exc})")

setup(ext_modules=ext_modules)
