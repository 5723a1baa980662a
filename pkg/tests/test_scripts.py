import json
import pathlib
import subprocess
import sys

import pytest

SCRIPTS = pathlib.Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("name, args", [
    ("j_lambda_scan.py", ["--steps", "5", "--best-effort"]),
    ("relation_suite.py", ["--pairs", "50"]),
    ("level_table.py", ["--bound", "5"]),
    ("reduction_bench.py", ["--samples", "200"]),
])
def test_script_runs(name, args):
    proc = subprocess.run([sys.executable, str(SCRIPTS / name), *args],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    records = [json.loads(line) for line in proc.stdout.splitlines()]
    assert records


def test_scan_summary_is_small():
    proc = subprocess.run([sys.executable, str(SCRIPTS / "j_lambda_scan.py"), "--steps", "9"],
                          capture_output=True, text=True, check=True)
    summary = json.loads(proc.stdout.splitlines()[-1])
    assert summary["value"] < 1e-10
