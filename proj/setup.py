import glob
import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

include_dirs = ["include", "vendor"]
for eigen in ("/usr/include/eigen3", "/usr/local/include/eigen3"):
    if os.path.isdir(eigen):
        include_dirs.append(eigen)
        break

ext = Pybind11Extension(
    "fint._fint",
    sources=sorted(glob.glob("src/*.cpp")) + ["python/bindings.cpp"],
    include_dirs=include_dirs,
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
