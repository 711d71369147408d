import json
import subprocess
import sys
from pathlib import Path

import pytest

from tautknot import io
from tautknot.cli import main
from tautknot.errors import InputError
from tautknot.geometry import LatticePoint, Polyline
from tautknot.paramcode import ParamSequence, reconstruct
from tautknot.render import RenderStyle, render_svg
from tautknot.satellite import SatelliteSpec
from tautknot.tauten import simplify

GOLDEN = Path(__file__).parent / "golden"
POLY = {"eps": 0.1, "start": [1, 1], "end": [3, 1], "vertices": [[0.6, 0.5], [1.4, 0.5]]}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- serialization -------------------------------------------------------------

def test_json_round_trips():
    poly = reconstruct(ParamSequence.parse("(1,1,2,1,-1)"))
    path = simplify(poly).path
    for kind, obj in [("polyline", poly), ("sequence", ParamSequence.parse("(1,1,2,1,-1)")),
                      ("satellite", SatelliteSpec(12, 5, 2, 3)), ("satellite", SatelliteSpec(6766, -817)),
                      ("taut_path", path)]:
        doc = io.to_json(obj)
        assert doc["format"] == 1
        assert io.from_json(kind, json.loads(json.dumps(doc))) == obj
        assert io.loads(kind, io.dumps(obj)) == obj


@pytest.mark.parametrize("kind, doc, field", [
    ("polyline", {**POLY, "eps": 0.7}, "eps"),
    ("polyline", {**POLY, "vertices": [[0.6, "x"], [1.4, 0.5]]}, "vertices/0/1"),
    ("polyline", {k: v for k, v in POLY.items() if k != "start"}, "<root>"),
    ("sequence", {"triples": [[1, 2]], "tail": [1, 0]}, "triples/0"),
    ("satellite", {"alpha": 12, "beta": 5, "p": "x", "q": 3}, "p"),
])
def test_schema_errors_name_the_field(kind, doc, field):
    with pytest.raises(InputError, match=f"at {field}"):
        io.from_json(kind, doc)


def test_malformed_json():
    with pytest.raises(InputError, match="malformed"):
        io.loads("polyline", "{not json")


# -- commands ------------------------------------------------------------------

def test_taut_prints_sequence(capsys, tmp_path):
    out_file = tmp_path / "path.json"
    code, out, _ = run(capsys, "taut", json.dumps(POLY), "--out", str(out_file))
    assert code == 0 and out.strip() == "(1,0)"
    path = io.loads("taut_path", out_file.read_text())
    assert path.n == 0


def test_taut_from_reconstructed_file(capsys, tmp_path):
    f = tmp_path / "poly.json"
    f.write_text(io.dumps(reconstruct(ParamSequence.parse("(1,1,2,1,-1,1,0,1)"))))
    code, out, _ = run(capsys, "taut", str(f))
    assert code == 0 and out.strip() == "(1,1,2,1,-1,1,0,1)"


def test_taut_bad_json_exit_2(capsys):
    code, _, err = run(capsys, "taut", '{"eps": 0.1, "start": [1, 1], "end": [3, 1], "vertices": [[0.6, 0.5]]}')
    assert code == 2 and "vertices" in err


def test_taut_computation_error_exit_3(capsys):
    bad = {"eps": 0.1, "start": [1, 1], "end": [7, 1], "vertices": [[0.6, 0.5], [3.4, 0.5]]}
    code, _, err = run(capsys, "taut", json.dumps(bad))
    assert code == 3 and "NonConvergence" in err


def test_figure2_text_rejected(capsys):
    code, _, err = run(capsys, "taut", "(2,1,1,1,1,1,0,1,1,-1,1,-1,-1,3,3,-1,-1,-2,-1,1,1,0,1,-3,1)")
    assert code == 2 and "3n+2" in err


def test_reconstruct_command(capsys):
    code, out, err = run(capsys, "reconstruct", "(1,0)")
    assert code == 0 and "eps used: 0.1" in err
    poly = io.loads("polyline", out)
    assert poly.start == LatticePoint(1, 1) and poly.end == LatticePoint(3, 1)


def test_validate_command(capsys):
    assert run(capsys, "validate", "(1,0)")[:2] == (0, "valid\n")
    code, out, _ = run(capsys, "validate", "(2,4)", "--format", "json")
    assert code == 2 and json.loads(out)["violations"] == ["coprimality at 1"]


def test_cf_commands(capsys):
    assert run(capsys, "cf-eval", "-8", "-4", "2", "4", "4", "-2", "4")[1] == "-6766/817\n"
    assert run(capsys, "cf-eval", "[2,2]")[1] == "5/2\n"
    assert run(capsys, "cf-expand", "12/5")[1] == "[2,2,2]\n"
    assert run(capsys, "cf-expand", "6766", "-817")[1] == "[-8,-4,2,4,4,-2,4]\n"
    assert run(capsys, "cf-expand", "3/2")[0] == 2
    assert run(capsys, "cf-eval", "3", "1", "-1")[0] == 3
    code, out, _ = run(capsys, "palindrome", "2", "4", "-k", "2")
    assert code == 0 and out == "k=2 reversed=9/2 holds\n"


def test_assoc_command(capsys):
    out = run(capsys, "assoc", "(-8,-4,2,4,4,-2,4)")[1]
    assert out == "(2,-2,2,-2,2,-2,2,-4,-2,6,-2,2,-4,2,-2)\n"


def test_satellite_symbolic(capsys):
    code, out, _ = run(capsys, "satellite", "6766", "-817", "--symbolic")
    lines = out.splitlines()
    assert code == 0
    assert lines[1] == "A_e    = (-2,0,-2,0,-2,0,-2,-4,2,4,2,0,2,-2,2,0,2)"
    assert lines[2] == "f(A_e) = (2,-2,2,-2,2,-2,2,-4,-2,6,-2,2,-2,0,-2,2,-2)"
    assert lines[3] == "A'     = (2,-2,2,-2,2,-2,2,-4,-2,6,-2,2,-4,2,-2)"
    assert lines[4:6] == ["[A]    = -6766/817", "[A']   = 6766/5949"]
    assert lines[6] == "(-p,-q,-1,-p,-q,0,-p,-q,0,-p,-q,-4,p,q,5,p,q,1,p,q,-1,p,q,1,p,q)"
    assert lines[7] == "(p,q,-1,p,q,0,p,q,0,p,q,-4,-p,-q,5,-p,-q,1,-p,-q,-1,-p,-q,1,-p,-q)"


def test_satellite_bound_and_errors(capsys):
    code, out, _ = run(capsys, "satellite", "12", "5", "2", "3", "--format", "json")
    assert code == 0 and json.loads(out)["tight"] == ["(2,3,3,2,3)", "(-2,-3,3,-2,-3)"]
    assert run(capsys, "satellite", "9", "2", "2", "3")[0] == 2
    assert run(capsys, "satellite", "12", "5", "2")[0] == 2


# -- rendering -----------------------------------------------------------------

def test_render_is_deterministic_and_classed(capsys):
    first = run(capsys, "render", "(1,0)")[1]
    second = run(capsys, "render", "(1,0)")[1]
    assert first == second
    assert first.count('class="segment"') == 1 and first.count('class="arc"') == 0
    assert 'class="disk"' in first and 'class="grid"' in first


def test_render_golden(capsys):
    out = run(capsys, "render", "(1,1,2,1,-1)")[1]
    assert out == (GOLDEN / "arc_m2.svg").read_text()


def test_render_style_checks():
    path = simplify(Polyline(((0.6, 0.5), (1.4, 0.5)), LatticePoint(1, 1), LatticePoint(3, 1), 0.1)).path
    with pytest.raises(InputError):
        RenderStyle(per_radian=8)
    wide = render_svg(path, RenderStyle(viewport=(-5, -5, 5, 5)))
    assert 'width="1000"' in wide


def test_batch_jobs(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "(1,0)", "(1,1,2,1,-1)", "--jobs", "2", "--out", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["job0.svg", "job1.svg"]
    assert (tmp_path / "job1.svg").read_text() == (GOLDEN / "arc_m2.svg").read_text()


def test_console_script_exit_codes():
    ok = subprocess.run([sys.executable, "-m", "tautknot.cli", "cf-eval", "[2,2]"], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stdout == "5/2\n"
    bad = subprocess.run([sys.executable, "-m", "tautknot.cli", "satellite", "9", "2"], capture_output=True, text=True)
    assert bad.returncode == 2
