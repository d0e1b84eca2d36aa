import os

from setuptools import Extension, setup

# The Cython core is optional: without Cython or a C compiler the package
# still installs and runs on the pure-Python kernels.
try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

compile_args = ["-O3"]
if os.environ.get("KIMLOCI_PORTABLE", "") != "1":
    compile_args.append("-march=native")

ext_modules = []
if cythonize is not None and os.environ.get("KIMLOCI_NO_EXT", "") != "1":
    ext_modules = cythonize(
        [
            Extension(
                "kimloci._kernels",
                ["src/kimloci/_kernels.pyx"],
                extra_compile_args=compile_args,
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
