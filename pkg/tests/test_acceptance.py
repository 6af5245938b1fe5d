"""One PASS/FAIL line per acceptance criterion (run with -s, or read the summary lines)."""

import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from ckforge import lyndon
from ckforge.cli import main
from ckforge.dimensions import dim_phi, dim_pl
from ckforge.theta import lyndon_variables_in_image
from ckforge.upper_bound import run_upper_bound

from advantage_rows import ADVANTAGE

HERE = Path(__file__).parent


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, detail, seconds):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}  {title}  ({detail}; {seconds:.1f}s)")
        assert ok, detail
    yield emit
    lyndon.set_cache_dir(None)


def _cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_1_table(report, capsys):
    t = time.perf_counter()
    code, out = _cli(capsys, "--format", "records", "scan", "--s", "2", "--d-min", "1", "--d-max", "30")
    rows = {r["d"]: r for r in map(json.loads, out.splitlines())}
    got = {d: (r["v"], r["dim_phi"], r["dim_pl"]) for d, r in rows.items() if r["v"] is not None}
    blanks = all(rows[d]["v"] is None for d in range(1, 6))
    dt = time.perf_counter() - t
    ok = code == 0 and got == ADVANTAGE and blanks and dt < 60
    report(1, "two-prime dimension advantage table", ok, f"{len(got)} rows exact, d<=5 blank={blanks}", dt)


def test_2_low_depth_sweep(report):
    t = time.perf_counter()
    bad = [(d, v) for d in range(1, 6) for v in range(1001) if dim_pl(d, v) > dim_phi(2, d, v)]
    dt = time.perf_counter() - t
    report(2, "dim_PL <= dim_Phi for s=2, d<=5, v<=1000", not bad and dt < 10, f"violations {bad[:3]}", dt)


def test_3_known(report, capsys):
    t = time.perf_counter()
    code, out = _cli(capsys, "verify-known")
    dt = time.perf_counter() - t
    lines = out.splitlines()
    ok = code == 0 and len(lines) == 7 and all(x.startswith("PASS") for x in lines) and dt < 5
    report(3, "one-prime kernels, displayed matrix, rank-1 kernel", ok, f"{len(lines)} checks", dt)


def test_4_spot_values(report):
    t = time.perf_counter()
    want = {(1, 2, 2): 1, (2, 2, 2): 0, (2, 4, 6): 0, (2, 6, 10): 0, (2, 6, 18): 1}
    got = {(k, seed): run_upper_bound(*k, seed=seed).r for k in want for seed in (1, 2)}
    bad = {k: r for k, r in got.items() if r != want[k[0]]}
    dt = time.perf_counter() - t
    report(4, "upper-bound spot values, seeds 1 and 2", not bad, f"mismatches {bad}", dt)


def test_5_lyndon_counts(report):
    t = time.perf_counter()
    a, b = len(lyndon_variables_in_image(2, 14)), len(lyndon_variables_in_image(2, 6))
    dt = time.perf_counter() - t
    report(5, "Lyndon variables in theta# images", (a, b) == (296, 30) and dt < 60, f"d=14: {a}, d=6: {b}", dt)


def test_6_f618(report, capsys, tmp_path):
    t = time.perf_counter()
    c1, out1 = _cli(capsys, "--format", "records", "construct-f618", "--out", str(tmp_path / "f618.txt"))
    c2, out2 = _cli(capsys, "--format", "records", "verify-f618", "--trials", "20", "--points", "3")
    checks = [json.loads(x) for x in out2.splitlines()]
    failed = [c["name"] for c in checks if not c["ok"]]
    rec = json.loads(out1)
    dt = time.perf_counter() - t
    ok = c1 == 0 and c2 == 0 and not failed and rec["degrees"] == [18] and rec["max_li"] == 6
    report(6, "construct-f618 + verify-f618", ok, f"{len(checks)} checks, failed {failed}", dt)


def test_7_property_suites(report):
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           str(HERE / "test_shuffle.py"), str(HERE / "test_linalg.py")],
                          capture_output=True, text=True, cwd=HERE.parent)
    dt = time.perf_counter() - t
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    report(7, "shuffle and linalg property suites", proc.returncode == 0 and dt < 300, summary, dt)
