"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Criteria 1-10 call the packaged checks directly (the same code the CLI
``selftest`` subcommand runs); criterion 11 exercises the CLI end to end
and compares artifacts byte for byte across repeated and multi-threaded
runs.  Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""

import filecmp
import subprocess
import sys
from pathlib import Path

from cylmaps import selftest


def _report(result):
    line = f"[{'PASS' if result.passed else 'FAIL'}] {result.name}: {result.detail}"
    print(line)
    assert result.passed, line


def test_c01_exponent_oracle():
    _report(selftest.check_exponent_oracle())


def test_c02_schwarzian_identities():
    _report(selftest.check_schwarzian_identities())


def test_c03_cross_ratio_monotonicity():
    _report(selftest.check_cross_ratio_monotonicity())


def test_c04_jacobian_branch_sum():
    _report(selftest.check_jacobian_branch_sum())


def test_c05_intermingled_basins():
    _report(selftest.check_intermingled_basins())


def test_c06_backward_orbit():
    _report(selftest.check_backward_orbit())


def test_c07_separator():
    _report(selftest.check_separator())


def test_c08_asymptotic_measure():
    _report(selftest.check_asymptotic_measure())


def test_c09_random_walk():
    _report(selftest.check_random_walk())


def test_c10_equidistribution():
    _report(selftest.check_equidistribution())


def _run_selftest_cli(out_dir: Path, threads: int) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "cylmaps", "selftest",
         "--threads", str(threads), "--out-dir", str(out_dir)],
        capture_output=True, text=True, timeout=600)


def test_c11_selftest_determinism(tmp_path):
    runs = {
        "first": (tmp_path / "first", 1),
        "second": (tmp_path / "second", 1),
        "threaded": (tmp_path / "threaded", 8),
    }
    for label, (out_dir, threads) in runs.items():
        proc = _run_selftest_cli(out_dir, threads)
        assert proc.returncode == 0, f"{label} selftest failed:\n{proc.stdout}\n{proc.stderr}"
    names = sorted(p.name for p in (tmp_path / "first").iterdir())
    assert names, "selftest produced no artifacts"
    for other in ("second", "threaded"):
        other_names = sorted(p.name for p in (tmp_path / other).iterdir())
        assert other_names == names
        match, mismatch, errors = filecmp.cmpfiles(
            tmp_path / "first", tmp_path / other, names, shallow=False)
        assert not mismatch and not errors, f"artifacts differ vs {other}: {mismatch or errors}"
    print(f"[PASS] selftest_determinism: {len(names)} artifacts byte-identical "
          f"across reruns and --threads 1 vs 8")
