import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str, sourcedir: str = "") -> None:
        super().__init__(name, sources=[])
        self.sourcedir = os.fspath(Path(sourcedir).resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        ext_dir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_temp = Path(self.build_temp) / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)
        cfg = "Debug" if int(os.environ.get("DEBUG", "0")) else "Release"
        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython_EXECUTABLE={sys.executable}",
            f"-DTRIQED_PYTHON_OUTPUT_DIR={ext_dir}",
            "-DTRIQED_PYTHON=ON",
            "-DTRIQED_TESTS=OFF",
        ]
        subprocess.run(
            ["cmake", ext.sourcedir, *cmake_args], cwd=build_temp, check=True
        )
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_triqed",
             f"-j{os.cpu_count() or 2}"],
            cwd=build_temp,
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("triqed._triqed")],
    cmdclass={"build_ext": CMakeBuild},
)
