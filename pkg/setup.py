import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# The compiled jet kernels are optional at runtime; harmonic_ansatz falls back
# to numpy when the extension is missing.
extensions = [
    Extension(
        "harmonic_ansatz._jetcore",
        ["src/harmonic_ansatz/_jetcore.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
)
