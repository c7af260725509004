from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    # optional=True: a failed native build degrades to the pure-Python engine
    ext_modules = cythonize(
        [Extension("eqclus._bruteforce", ["src/eqclus/_bruteforce.pyx"], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
