import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CIRCWORDS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "circwords._speedups",
                    sources=["src/circwords/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except Exception as exc:
        print(f"circwords: compiled kernels skipped ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
