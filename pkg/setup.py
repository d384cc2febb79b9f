import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("OCCURSAT_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("occursat._kernels", ["src/occursat/_kernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
