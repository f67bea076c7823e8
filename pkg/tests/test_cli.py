import json
from pathlib import Path

import pytest

from mkoszul.cli import analyze, main, render_json
from mkoszul.parser import parse_file

INPUTS = Path(__file__).resolve().parent.parent / "demos" / "inputs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cubic_report(capsys):
    code, out, _ = run(capsys, INPUTS / "cubic.pot")
    assert code == 0
    d = json.loads(out)
    assert d["profile"] == {"n": 2, "m": 3, "ell": 4, "d": 3}
    assert d["nakayama"]["calabi_yau"] is True
    assert d["nakayama"]["nu"] == [["1", "0"], ["0", "1"]]
    assert d["koszul"]["certificate"] == "verified_up_to(8)"
    assert d["koszul"]["hilbert"][:5] == [1, 2, 4, 6, 9]
    assert d["all_passed"]


def test_quantum_plane_report(capsys):
    code, out, _ = run(capsys, INPUTS / "quantum_plane.pot", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["nakayama"]["nu"] == [["1/2", "0"], ["0", "2"]]
    assert d["nakayama"]["Q"] == [["-2", "0"], ["0", "-1/2"]]
    assert d["nakayama"]["calabi_yau"] is False


def test_symmetric_three_twists(capsys):
    code, out, _ = run(capsys, INPUTS / "symmetric3.pot", "--twist")
    d = json.loads(out)
    assert code == 0
    assert d["automorphisms"]["s1"]["hdet"] == "1" and d["automorphisms"]["s1"]["det"] == "-1"
    assert d["twists"]["s1"]["calabi_yau"] is False
    assert d["twists"]["s2"]["calabi_yau"] is True
    assert d["twists"]["s2"]["w"] == "x*x*x + x*y*z + y*y*y + y*z*x + z*x*y + z*z*z"
    assert d["dim3"]["obstruction"] == "possible"


def test_json_is_deterministic(capsys):
    _, first, _ = run(capsys, INPUTS / "symmetric3.pot", "--twist")
    _, second, _ = run(capsys, INPUTS / "symmetric3.pot", "--twist")
    assert first == second


def test_relations_mode(capsys):
    code, out, _ = run(capsys, INPUTS / "cubic_relations.rel", "--relations")
    d = json.loads(out)
    assert code == 0
    assert d["profile"]["ell"] == 4


def test_text_output(capsys):
    code, out, _ = run(capsys, INPUTS / "cubic.pot", "--text", "--koszul-depth", "5")
    assert code == 0
    assert "[checks]" in out and "FAIL" not in out
    assert "verified_up_to(5)" in out


def test_field_override(capsys):
    code, out, _ = run(capsys, INPUTS / "quantum_plane.pot", "--field", "7")
    d = json.loads(out)
    assert d["input"]["field"] == "F_7"
    # 1/2 = 4 mod 7
    assert d["nakayama"]["nu"] == [["4", "0"], ["0", "2"]]


def test_side_file_twist(tmp_path, capsys):
    side = tmp_path / "extra.aut"
    side.write_text("vars x y z;\naut r = [[0,0,1],[1,0,0],[0,1,0]];\n")
    code, out, _ = run(capsys, INPUTS / "symmetric3.pot", "--twist", side)
    d = json.loads(out)
    assert code == 0
    assert set(d["twists"]) == {"s1", "s2", "r"}


def test_input_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.pot"
    bad.write_text("vars x y;\nw = x*y + x;\n")
    code, _, err = run(capsys, bad)
    assert code == 2
    assert "line 2" in err
    code, _, _ = run(capsys, tmp_path / "missing.pot")
    assert code == 2


def test_failed_check_exits_1(tmp_path, capsys):
    # relations xy with no superpotential behind them
    f = tmp_path / "xy.rel"
    f.write_text("vars x y;\nrel = x*y;\n")
    code, out, _ = run(capsys, f, "--ell", "3")
    assert code == 1
    d = json.loads(out)
    assert not d["all_passed"]
    assert any("dimension 0" in c.get("error", "") for c in d["checks"])


def test_analyze_api_matches_cli(capsys):
    parsed = parse_file((INPUTS / "cubic.pot").read_text())
    _, out, _ = run(capsys, INPUTS / "cubic.pot")
    assert render_json(analyze(parsed)) == out


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "0.1.0" in capsys.readouterr().out
