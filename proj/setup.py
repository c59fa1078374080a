"""Builds the _core extension by delegating to the project's CMake build."""

import pathlib
import subprocess
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source = pathlib.Path(__file__).resolve().parent
        out = pathlib.Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build = pathlib.Path(self.build_temp).resolve()
        build.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                str(source),
                "-DSPARSEDOM_BUILD_TESTS=OFF",
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython3_EXECUTABLE={sys.executable}",
                f"-DSPARSEDOM_MODULE_OUTPUT={out}",
            ],
            cwd=build,
            check=True,
        )
        subprocess.run(["cmake", "--build", str(build), "--target", "_core"], check=True)


setup(
    ext_modules=[CMakeExtension("sparsedom._core")],
    cmdclass={"build_ext": CMakeBuild},
)
