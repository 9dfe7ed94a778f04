from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/subext/_kernels.pyx"],
        compiler_directives={"language_level": 3},
        quiet=True,
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        ext.define_macros.append(("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION"))
        # a failed compile leaves the numpy fallback in charge
        ext.optional = True
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
