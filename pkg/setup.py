import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the compiled kernels if possible; the package falls back to the
    pure-NumPy backend when the extension is unavailable."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, etc.
            print(f"warning: compiled backend not built ({exc}); "
                  "beliefchain will use the pure-Python backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "beliefchain will use the pure-Python backend")


extensions = [
    Extension(
        "beliefchain._backend._core",
        sources=["src/beliefchain/_backend/_core.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # -ffp-contract=off keeps the compiled kernels bit-identical to the
        # pure-NumPy backend (no FMA contraction of a*b+c).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    ),
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": 3}),
    cmdclass={"build_ext": optional_build_ext},
)
