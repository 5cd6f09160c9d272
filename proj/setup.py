import glob
import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = sorted(glob.glob("src/*.cpp")) + ["bindings/module.cpp"]

ext = Pybind11Extension(
    "phasewave._core",
    sources,
    include_dirs=[
        "include",
        "vendor",
        os.environ.get("EIGEN3_INCLUDE_DIR", "/usr/include/eigen3"),
    ],
    libraries=["fftw3"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
