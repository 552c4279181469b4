from __future__ import annotations

import json
import subprocess
import sys

import pytest

from recollift import cli
from recollift.report import CheckRecord, Report


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_analyze_dual_numbers(capsys):
    code, out = run(capsys, "analyze", "--preset", "dualnumbers")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "pass"
    assert d["info"]["profile_B"]["d"] == 0
    assert {"version", "verdict", "checks", "input_digest"} <= set(d)
    assert {"name", "mode", "samples", "pass", "witnesses"} <= set(d["checks"][0])


def test_reports_are_byte_stable(capsys):
    _, a = run(capsys, "recollement", "verify", "--preset", "kA2", "--seed", "3")
    _, b = run(capsys, "recollement", "verify", "--preset", "kA2", "--seed", "3")
    assert a == b


def test_seed_flag_beats_environment(capsys, monkeypatch):
    monkeypatch.setenv("RECOLLIFT_SEED", "11")
    _, out = run(capsys, "analyze", "--preset", "kA2")
    assert json.loads(out)["input"]["run"]["seed"] == 11
    _, out = run(capsys, "analyze", "--preset", "kA2", "--seed", "4")
    assert json.loads(out)["input"]["run"]["seed"] == 4


def test_module_commands(capsys):
    code, out = run(capsys, "ext", "S(e1)", "S(e2)", "1", "--preset", "kA2")
    assert code == 0 and json.loads(out)["info"]["ext_dim"] == 1
    code, out = run(capsys, "stable-hom", "k", "k", "--preset", "dualnumbers")
    assert code == 0 and json.loads(out)["info"]["stable_hom_dim"] == 1
    code, out = run(capsys, "gp", "P(e1)", "--preset", "morn:2:dualnumbers")
    d = json.loads(out)
    assert code == 0 and d["info"]["is_gp"] is True and d["info"]["structural"] is True
    code, out = run(capsys, "approx", "S(e1)", "--preset", "kA2")
    assert code == 0 and json.loads(out)["info"]["cofibrant"]["replaced_dim"] == 2


def test_cps_pass_and_fail(capsys):
    code, out = run(capsys, "cps", "--preset", "kA2", "--idempotent", "e2", "--degree", "3", "--mode", "thorough")
    assert code == 0
    assert json.loads(out)["info"]["conclusion"].startswith("There is a recollement of derived categories")
    code, out = run(capsys, "cps", "--preset", "nonstrat", "--degree", "3")
    assert code == 1 and json.loads(out)["verdict"] == "fail"


def test_corrupt_instance_exit_code_and_replay(capsys, tmp_path):
    path = tmp_path / "bad.json"
    code, _ = run(capsys, "recollement", "verify", "--preset", "kA2", "--corrupt", "--out", str(path))
    assert code == 1
    d = json.loads(path.read_text())
    assert d["verdict"] == "fail"
    assert any(c["witnesses"] for c in d["checks"] if not c["pass"])
    code, out = run(capsys, "replay", str(path), "--preset", "kA2")
    rep = json.loads(out)
    assert code == 0 and rep["checks"] and all(c["details"]["reproduced_failure"] for c in rep["checks"])


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--preset", "nope"],
        ["analyze"],
        ["ext", "S(e1)", "--preset", "kA2"],
        ["gp", "S(e9)", "--preset", "kA2"],
        ["recollement", "verify", "--preset", "kA2", "--idempotent", "e5"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    assert json.loads(out)["verdict"] == "error"


def test_bad_spec_file_reports_position(capsys, tmp_path):
    f = tmp_path / "bad.spec"
    f.write_text("[algebra]\ncharacteristic = 4\nvertices = 1\n")
    code, out = run(capsys, "analyze", "--spec", str(f))
    assert code == 2 and "line 2, column 18" in json.loads(out)["error"]


def test_markdown_output(capsys):
    code, out = run(capsys, "analyze", "--preset", "kA2", "--format", "md")
    assert code == 0 and out.startswith("# analyze") and "| check |" in out


def test_no_checks_report_exit_2():
    rep = Report("x", {})
    assert rep.verdict == "no-checks" and rep.exit_code == 2
    rep.add(CheckRecord("c", True))
    assert rep.exit_code == 0 and json.loads(rep.to_json())["verdict"] == "pass"


def test_console_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "recollift.cli", "analyze", "--preset", "kA2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["info"]["profile_B"]["d"] == 1
