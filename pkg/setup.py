"""Build script: compiles the optional stage-evolution kernel.

The compiled extension is a pure speedup; the package falls back to
``cantorforge._stagekernel_py`` when it is missing.  Build in place with:

    python setup.py build_ext --inplace
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/cantorforge/_stagekernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
