import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install; finsum.backend falls back to the numpy implementation.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "finsum._fastcore",
                ["src/finsum/_fastcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
