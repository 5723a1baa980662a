"""Run the twelve acceptance criteria and print one status line each."""

import pathlib
import runpy
import sys

if __name__ == "__main__":
    path = pathlib.Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"
    sys.argv = [str(path)]
    runpy.run_path(str(path), run_name="__main__")
