import json
import subprocess
import sys

import pytest

from ckforge import lyndon
from ckforge.cli import main

from advantage_rows import ADVANTAGE


@pytest.fixture(autouse=True)
def _fresh_converter():
    yield
    lyndon.set_cache_dir(None)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_dims(capsys):
    assert run(capsys, "dims", "--s", "2", "--d", "8", "--v", "99") == (0, "21381332 21582623\n")


def test_scan_table(capsys):
    code, out = run(capsys, "--format", "records", "scan", "--s", "2", "--d-min", "1", "--d-max", "30")
    assert code == 0
    rows = {r["d"]: r for r in records(out)}
    assert all(rows[d]["v"] is None for d in range(1, 6))
    assert {d: (r["v"], r["dim_phi"], r["dim_pl"]) for d, r in rows.items() if r["v"]} == ADVANTAGE


def test_scan_grid(capsys):
    code, out = run(capsys, "scan", "--s", "2", "--d-max", "2", "--v-max", "3", "--seed", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["d", "v", "r"] and len(lines) == 7
    assert all(line.split()[2] == "0" for line in lines[1:])


def test_upper_bound_text(capsys):
    code, out = run(capsys, "upper-bound", "--s", "1", "--d", "2", "--v", "2", "--seed", "1")
    assert code == 0
    assert out.splitlines()[0] == "r=1"
    assert "x_hash:" in out and "primes:" in out


def test_upper_bound_exact_records(capsys):
    code, out = run(capsys, "upper-bound", "--s", "1", "--d", "4", "--v", "4", "--exact", "--format", "records")
    rec = records(out)[0]
    assert code == 0 and rec["r"] == 5 and rec["strategy"] == "exact"
    assert "seconds" not in rec


def test_flag_position_irrelevant(capsys):
    a = run(capsys, "--format", "records", "--seed", "3", "upper-bound", "--s", "1", "--d", "2", "--v", "2")
    b = run(capsys, "upper-bound", "--s", "1", "--d", "2", "--v", "2", "--seed", "3", "--format", "records")
    assert a == b and records(a[1])[0]["seed"] == 3


def test_matrix_export(capsys, tmp_path):
    out_file = tmp_path / "m122.txt"
    code, out = run(capsys, "matrix", "--s", "1", "--d", "2", "--v", "2", "--out", str(out_file))
    assert code == 0 and out.startswith("3x4 matrix")
    assert out_file.read_text().startswith("%%CKMatrix s=1 d=2 v=2 rows=3 cols=4")


def test_verify_known(capsys):
    code, out = run(capsys, "verify-known")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 7 and all(line.startswith("PASS") for line in lines)


def test_construct_f618(capsys, tmp_path):
    f1, f2 = tmp_path / "a.txt", tmp_path / "b.txt"
    code, out = run(capsys, "--format", "records", "construct-f618", "--out", str(f1), "--seed", "2")
    rec = records(out)[0]
    assert code == 0 and rec["degrees"] == [18] and rec["max_li"] == 6
    text = f1.read_text().splitlines()
    assert text[0].startswith("# ckforge F618 v1 point_seed=2")
    assert len(text) == 1 + rec["terms"]
    # warm cache gives the same file
    cache = tmp_path / "cache"
    assert run(capsys, "--cache-dir", str(cache), "cache", "warm")[0] == 0
    assert run(capsys, "--cache-dir", str(cache), "construct-f618", "--out", str(f2), "--seed", "2")[0] == 0
    assert f1.read_text() == f2.read_text()


def test_verify_f618_small(capsys):
    code, out = run(capsys, "verify-f618", "--trials", "2", "--points", "1")
    assert code == 0 and "FAIL" not in out


def test_cache_commands(capsys, tmp_path):
    d = str(tmp_path)
    assert run(capsys, "cache", "info", "--cache-dir", d) == (0, f"{d}: empty\n")
    code, out = run(capsys, "cache", "warm", "--s", "1", "--d", "4", "--cache-dir", d)
    assert code == 0 and "lyndon-s1-d4.tsv" in out
    code, out = run(capsys, "--format", "records", "cache", "info", "--cache-dir", d)
    assert records(out)[0]["entries"] > 0
    assert run(capsys, "cache", "clear", "--cache-dir", d) == (0, "removed 1 cache files\n")


def test_cache_needs_directory(capsys):
    assert run(capsys, "cache", "info")[0] == 2


@pytest.mark.parametrize("argv", [["bogus"], ["dims", "--s", "2"], ["dims", "--s", "x", "--d", "1", "--v", "1"],
                                  ["upper-bound", "--s", "1", "--d", "2", "--v", "2", "--nope"], []])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2
    assert "usage" in capsys.readouterr().err


def test_invalid_values(capsys):
    assert main(["dims", "--s", "0", "--d", "1", "--v", "1"]) == 2
    assert "error" in capsys.readouterr().err


def test_subprocess_determinism(tmp_path):
    argv = [sys.executable, "-m", "ckforge.cli", "--format", "records", "upper-bound",
            "--s", "2", "--d", "4", "--v", "6", "--seed", "7"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["r"] == 0


def test_console_script():
    out = subprocess.run(["ckforge", "dims", "--s", "1", "--d", "2", "--v", "2"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "3 4\n"
