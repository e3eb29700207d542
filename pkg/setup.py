"""Build script for the optional compiled kernels.

The package is pure Python plus two Cython extension modules (the demand
event scan and the EDF simulator).  Both extensions are marked optional:
if Cython or a C compiler is missing the build still succeeds and the
package falls back to the Python kernel implementations at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "edfkit.kernels._demand_scan_c",
        ["src/edfkit/kernels/_demand_scan_c.pyx"],
        optional=True,
    ),
    Extension(
        "edfkit.kernels._edf_sim_c",
        ["src/edfkit/kernels/_edf_sim_c.pyx"],
        optional=True,
    ),
]

setup(
    ext_modules=cythonize(extensions, language_level=3) if cythonize else [],
)
