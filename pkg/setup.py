from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("mahler37._kernels", ["src/mahler37/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    # No Cython at build time: ship the pure-Python kernel fallback only.
    extensions = []

setup(ext_modules=extensions)
