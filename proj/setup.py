import os
import subprocess
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        extdir = os.path.abspath(os.path.dirname(self.get_ext_fullpath(ext.name)))
        build_dir = os.path.join(self.build_temp, "cmake")
        os.makedirs(build_dir, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                "-S", os.path.dirname(os.path.abspath(__file__)),
                "-B", build_dir,
                "-DCMAKE_BUILD_TYPE=Release",
                "-DDSEA_BUILD_PYTHON=ON",
                "-DSKBUILD=ON",
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={extdir}",
                f"-DPYTHON_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", build_dir, "--target", "_diracsea"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("diracsea._diracsea")],
    cmdclass={"build_ext": CMakeBuild},
)
