import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QGAME_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "qgame._kernels",
                    ["src/qgame/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )
    except ImportError:
        # No Cython at build time: ship the pure NumPy backend only.
        ext_modules = []

setup(ext_modules=ext_modules)
