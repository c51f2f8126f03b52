"""Command-line interface: exit codes, report schema, determinism."""

from __future__ import annotations

import io
import json

import pytest

from dpk import cli
from dpk.dataset import DISCRIMINANT_TEXT, EXAMPLE_TEXT

FAST_SKIP = ["--skip", "deformation", "--skip", "B_I", "--skip", "scan",
             "--skip", "trisection", "--skip", "elimination"]


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_lattice_delta():
    assert run("lattice", "delta", "-a", "1", "-b", "1") == (0, "9\n")


def test_lattice_enum():
    code, text = run("lattice", "enum", "--max", "50")
    assert code == 0
    rows = [l.split()[0] for l in text.splitlines() if not l.startswith("#")]
    assert rows == ["9", "21", "33", "45"]
    assert "a=1 b=1" in text.splitlines()[0]


def test_lattice_euler():
    assert run("lattice", "euler", "--dI", "6", "--dII", "6", "--bIV", "9") == (0, "27\n")


def test_lattice_snf_and_discgroup():
    code, text = run("lattice", "snf", "--matrix", "2 4;6 8")
    assert code == 0 and text.splitlines()[0] == "2 4"
    code, text = run("lattice", "discgroup")
    assert code == 0 and text.splitlines()[0] == "Z/3 + Z/6"
    assert run("lattice", "discgroup", "--gram", "2 1;1 2") == (0, "Z/3\n")


@pytest.mark.parametrize("argv", [
    ("lattice", "delta", "-a", "x", "-b", "1"),
    ("lattice", "snf", "--matrix", "1 2;3"),
    ("lattice", "discgroup", "--gram", "1 2;3 4"),
    ("lattice", "euler", "--dI", "6", "--dII", "3", "--bIV", "5"),
    ("search", "--prime", "4", "--seed", "1", "--trials", "1"),
    ("search", "--prime", "7", "--trials", "0"),
    ("scan", "--input", "x.txt", "--ext", "4"),
    ("verify-example", "--skip", "nonsense"),
    ("frobnicate",),
    (),
])
def test_bad_arguments_exit_64(argv):
    assert run(*argv)[0] == 64


def test_missing_input_exit_66(tmp_path):
    assert run("scan", "--input", str(tmp_path / "absent.txt"))[0] == 66
    good = tmp_path / "in.txt"
    good.write_text(EXAMPLE_TEXT)
    assert run("scan", "--input", str(good), "--curves", str(tmp_path / "absent.txt"))[0] == 66


def test_malformed_input_exit_64(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("p=5 vars=x0\nQ1 = x0 +\n")
    assert run("scan", "--input", str(bad))[0] == 64


def test_verify_example_json_schema(tmp_path):
    path = tmp_path / "out.json"
    code, text = run("verify-example", *FAST_SKIP, "--json", str(path), "--threads", "1")
    assert code == 0
    rep = json.loads(path.read_text())
    assert list(rep) == ["command", "schema", "inputs", "checks", "timings"]
    assert rep["command"] == "verify-example" and rep["schema"] == 1
    assert all(set(c) == {"name", "status", "details"} for c in rep["checks"])
    status = {c["name"]: c["status"] for c in rep["checks"]}
    assert status["elimination-B_I"] == "skipped"
    assert sum(s == "pass" for s in status.values()) >= 10
    assert "timestamp" in rep["timings"]
    assert "pass" in text


def test_reports_byte_identical():
    a = run("verify-example", *FAST_SKIP, "--reproducible", "--threads", "1")
    b = run("verify-example", *FAST_SKIP, "--reproducible", "--threads", "1")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["timings"] == {}


def test_threads_env_fallback(monkeypatch):
    from dpk.pipeline import default_threads

    monkeypatch.setenv("DPK_THREADS", "3")
    assert default_threads() == 3
    monkeypatch.setenv("DPK_THREADS", "junk")
    assert default_threads() >= 1


def _inconsistent_curves(tmp_path):
    # a B_I missing the singular fiber over (1:0:1)
    lines = [l for l in DISCRIMINANT_TEXT.splitlines() if l.strip() and not l.startswith("#")]
    head = lines[0]
    b2 = next(i for i, l in enumerate(lines) if l.startswith("B_II"))
    text = "\n".join([head, "B_I = x^6 + y^6 + z^6"] + lines[b2:]) + "\n"
    path = tmp_path / "wrong.txt"
    path.write_text(text)
    return path


def test_scan_inconsistent_exit_1(tmp_path, monkeypatch):
    from dpk import pipeline

    inp = tmp_path / "in.txt"
    inp.write_text(EXAMPLE_TEXT)
    monkeypatch.setattr(pipeline, "projective_points", lambda F, n=3: [(1, 0, 1), (1, 2, 3)])
    code, text = run("scan", "--input", str(inp), "--curves", str(_inconsistent_curves(tmp_path)),
                     "--threads", "1", "--reproducible")
    assert code == 1
    rep = json.loads(text)
    assert rep["scan"]["verdict"] is False
