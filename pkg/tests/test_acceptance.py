"""Acceptance suite: every structural criterion at full desk scale, plus the
command-line and rendering contract.  One pass/fail line is printed per
criterion; all tolerances are exact equality.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from moebius.checks import CRITERIA, CheckResult, run_all

GOLDEN = Path(__file__).parent / "golden"
DEPTH = 3

_results: dict[int, CheckResult] = {}


def _run(index: int) -> CheckResult:
    if index not in _results:
        import time
        name, fn = CRITERIA[index - 1]
        t0 = time.perf_counter()
        ok, detail = fn(DEPTH)
        r = CheckResult(index, name, ok, detail, time.perf_counter() - t0)
        _results[index] = r
        print(r.line())
    return _results[index]


@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1),
                         ids=[name for name, _ in CRITERIA])
def test_criterion(index):
    r = _run(index)
    assert r.ok, f"criterion {r.index} failed: {r.detail}"


def test_criterion_12_cli_check_exits_zero(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "moebius.cli", "check", "--depth", str(DEPTH)],
        capture_output=True, text=True, timeout=600)
    lines = [l for l in proc.stdout.strip().splitlines() if l]
    ok = proc.returncode == 0 and len(lines) == len(CRITERIA) and all("PASS" in l for l in lines)
    print(CheckResult(12, "command line suite and golden renders", ok,
                      f"check exited {proc.returncode} with {len(lines)} lines", 0.0).line())
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert len(lines) == len(CRITERIA)
    assert all("PASS" in l for l in lines)


@pytest.mark.parametrize("name,argv", [
    ("empty.svg", ["render"]),
    ("walk_quarter_threequarter.svg", ["render", "--walk", "M(1/4,3/4)", "--cluster-depth", "3"]),
    ("cluster_depth4.svg", ["render", "--cluster-depth", "4"]),
])
def test_criterion_12_golden_render(name, argv):
    proc = subprocess.run([sys.executable, "-m", "moebius.cli"] + argv,
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout == (GOLDEN / name).read_text(), f"render differs from golden {name}"
