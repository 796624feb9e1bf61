from __future__ import annotations

import json
import os
from pathlib import Path

import pytest

from mixmult import cli
from mixmult.cli import EXIT_ERROR, EXIT_FALSE, EXIT_OK, jsonable, main
from mixmult.reductions import JointReductionCertificate

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

# (golden name, argv); inputs live in tests/data
CASES = [
    ("verify_xyz_1_2", ["verify", "xyz.txt", "--type", "1;2", "--seed", "1"]),
    ("mixed_xyz_all", ["mixed-mult", "xyz.txt"]),
    ("multiplicity_local", ["multiplicity", "local.txt"]),
    ("multiplicity_m_squared", ["multiplicity", "plane_rees.txt", "--ideal", "J"]),
    ("rees_m_m2", ["verify-rees", "plane_rees.txt", "--type", "1,1", "--seed", "3"]),
    ("verify_module", ["verify", "module.txt", "--type", "0;2", "--seed", "2"]),
    ("superficial_xyz", ["superficial", "xyz.txt", "--type", "1;2", "--seed", "1"]),
    ("joint_reduction_xyz", ["joint-reduction", "xyz.txt", "--type", "1;2", "--seed", "1"]),
    ("fuzz_plane", ["fuzz", "--trials", "2", "--nvars", "2", "--seed", "4"]),
]


def _run(argv, capsys):
    argv = [str(DATA / a) if a.endswith(".txt") else a for a in argv]
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _records(text):
    return [json.loads(line) for line in text.splitlines()]


@pytest.mark.parametrize("name, argv", CASES, ids=[c[0] for c in CASES])
def test_golden_json(name, argv, capsys):
    code, out, _ = _run(argv + ["--json"], capsys)
    assert code == EXIT_OK
    path = GOLDEN / f"{name}.jsonl"
    if os.environ.get("MIXMULT_REGEN_GOLDEN"):
        path.write_text(out)
    assert _records(out) == _records(path.read_text())


def test_verify_values(capsys):
    code, out, _ = _run(["verify", "xyz.txt", "--type", "1;2", "--json"], capsys)
    (rec,) = _records(out)
    assert code == EXIT_OK and rec["mixed"] == rec["reduction"] == 1 and rec["status"] == "verified"


def test_mixed_mult_single_type(capsys):
    code, out, _ = _run(["mixed-mult", "xyz.txt", "--type", "2;1", "--json"], capsys)
    (rec,) = _records(out)
    assert code == EXIT_OK and rec["value"] == 0


def test_rationals_rendered_as_fractions(capsys):
    _, out, _ = _run(["mixed-mult", "xyz.txt", "--type", "1;2", "--json"], capsys)
    (rec,) = _records(out)
    assert rec["polynomial"]["n0"] == "3/2" and rec["polynomial"]["n0*n1"] == 1


def test_human_output(capsys):
    code, out, _ = _run(["mixed-mult", "xyz.txt"], capsys)
    assert code == EXIT_OK
    assert out.splitlines()[1].startswith("e(type 1;2) = 1")


def test_bad_flag_exits_with_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", str(DATA / "xyz.txt"), "--bogus"])
    assert exc.value.code == EXIT_ERROR
    assert "usage:" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["verify", "xyz.txt", "--seed", "-1"],
    ["verify", "xyz.txt", "--window", "-2"],
    ["verify"],
])
def test_invalid_arguments(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        _run(argv, capsys)
    assert exc.value.code == EXIT_ERROR


def test_hypothesis_violation_is_an_error(capsys):
    code, out, err = _run(["verify", "xyz.txt", "--type", "2;1"], capsys)
    assert code == EXIT_ERROR and "HypothesisViolated" in err
    code, out, _ = _run(["verify", "xyz.txt", "--type", "2;1", "--force", "--json"], capsys)
    (rec,) = _records(out)
    assert code == EXIT_ERROR and rec["reduction"] == 1 and rec["equal"] is False


@pytest.mark.parametrize("text, kind", [
    ("ring x y\nideal J = x\nmodule H = 0\ntype ;2\n", "NotMPrimary"),
    ("ring x y\nideal J = x, y\n", "Error"),
    ("ring x y\nideal J = x, w\n", "ParseError"),
    ("ring x y\nideal J = x, y\nideal I = x + y^2\ntype 1;1\n", "UnsupportedInput"),
])
def test_errors_emit_json_record(tmp_path, capsys, text, kind):
    f = tmp_path / "in.txt"
    f.write_text(text)
    code = main(["verify", str(f), "--json"])
    rec = json.loads(capsys.readouterr().out)
    assert code == EXIT_ERROR and rec["status"] == kind


def test_missing_file(capsys):
    code, out, err = _run(["multiplicity", "/nonexistent/file.txt", "--json"], capsys)
    assert code == EXIT_ERROR and json.loads(out)["status"] == "Error"


def test_stdin_input(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO((DATA / "plane_rees.txt").read_text()))
    code = main(["multiplicity", "-", "--ideal", "I", "--json"])
    assert code == EXIT_OK and json.loads(capsys.readouterr().out)["value"] == 1


def test_false_result_exits_one(monkeypatch, capsys):
    def fake(R, J, I_list, H, window, expected=None):
        return JointReductionCertificate(R, expected, window, False, False, [tuple(window[0])])
    monkeypatch.setattr(cli, "check_joint_reduction", fake)
    code, out, _ = _run(["joint-reduction", "xyz.txt", "--type", "1;2", "--json"], capsys)
    assert code == EXIT_FALSE and _records(out)[0]["verified"] is False


def test_jsonable():
    from fractions import Fraction
    assert jsonable({1: Fraction(6, 4), "a": [Fraction(2, 1)]}) == {"1": "3/2", "a": [2]}
