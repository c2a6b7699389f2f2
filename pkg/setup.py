from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # No Cython: install the pure-Python package; kraussim.backend falls back
    # to the numpy kernels at import time.
    cythonize = None

extensions = [
    Extension(
        "kraussim._kernels",
        ["src/kraussim/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"})
    if cythonize is not None
    else [],
)
