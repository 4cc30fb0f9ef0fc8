"""Builds the optional Cython alignment kernel.

The package works without it: pegkit.evaluate.kernel falls back to the
pure-Python implementation when the extension is missing.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/pegkit/evaluate/_match_cy.pyx",
        compiler_directives={"language_level": 3, "embedsignature": True},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
