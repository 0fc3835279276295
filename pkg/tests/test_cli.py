import io
import json
import subprocess
import sys

import pytest

from ratsurf.cli import main, parse_map_expr, run
from ratsurf.catalog import sigma0
from ratsurf.errors import GrammarError, SurfaceMismatch, UnknownName
from ratsurf.polyrat import RationalMap


def call(request, *args, monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(request)))
    code = main(list(args))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_verify_example(monkeypatch, capsys):
    req = {"command": "verify", "payload": {"lhs": "compose(sigma1,sigma1)", "rhs": "id:P2"}}
    code, out, _ = call(req, monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0 and out == {"equal": True, "factor": "x*(y^2+z^2)"}


def test_verify_not_equal_exit_2(monkeypatch, capsys):
    req = {"command": "verify", "payload": {"lhs": "sigma0", "rhs": "sigma1"}}
    code, out, _ = call(req, monkeypatch=monkeypatch, capsys=capsys)
    assert code == 2 and out["equal"] is False and out["witness"] == ["1", "2", "3"]


def test_apply_example(monkeypatch, capsys):
    req = {"command": "apply", "payload": {"map": "pi_N", "point": [2, 1, 0, 1]}}
    code, out, _ = call(req, monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0 and out == {"point": ["1", "0", "1"]}


def test_apply_checked_rejects_off_surface(monkeypatch, capsys):
    req = {"command": "apply", "payload": {"map": "pi_N", "point": [2, 1, 0, 1], "check": True}}
    code, out, _ = call(req, monkeypatch=monkeypatch, capsys=capsys)
    assert code == 3 and out["error"] == "PointNotOnSurface"


def test_solve_example(monkeypatch, capsys):
    req = {"command": "solve", "payload": {"P": [[1, 0, 0]], "Q": [[0, 1, 0]]}}
    code, out, _ = call(req, monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0
    assert len(out["stages"]) == 1
    assert out["certificates"] == {"hits": True, "involutions": True}


def test_solve_stages_replay(monkeypatch, capsys):
    P = [[1, 0, 0], ["3/5", "4/5", 0]]
    Q = [[0, 1, 0], ["-3/5", "4/5", 0]]
    code, out, _ = call({"command": "solve", "payload": {"P": P, "Q": Q}},
                        monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0
    point = P[0]
    for stage in out["stages"]:
        code, res, _ = call({"command": "apply", "payload": {"twist": stage, "point": point}},
                            monkeypatch=monkeypatch, capsys=capsys)
        assert code == 0
        point = res["point"]
    assert point == ["0", "1", "0"]


def test_payload_mode_and_outfile(tmp_path, monkeypatch, capsys):
    src = tmp_path / "payload.json"
    src.write_text(json.dumps({"lhs": "compose(e,e)", "rhs": "id:P1xP1"}))
    dst = tmp_path / "out.json"
    code = main(["verify", "--in", str(src), "--out", str(dst)])
    assert code == 0
    assert json.loads(dst.read_text()) == {"equal": True, "factor": ["1", "x0*x1"]}


def test_regulous_flags(capsys):
    assert main(["regulous-eval", "--fn", "cartan_canopy", "--point", "0,0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["result"] == "value" and out["value"] == "0" and out["certified"] == "pencil"
    assert main(["regulous-eval", "--fn", "cartan_canopy", "--point", "0,0", "--k", "1"]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["k_regulous"]["pass"] is False and out["k_regulous"]["fail_order"] == 1
    assert main(["regulous-eval", "--fn", "k_family(2)", "--point", "0,0", "--k", "2"]) == 0
    capsys.readouterr()
    fn = json.dumps({"vars": ["x", "y"], "num": "x", "den": "x^2+y^2"})
    assert main(["regulous-eval", "--fn", fn, "--point", "0,0"]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["result"] == "not-continuous" and out["witness"]["value1"] == "infinite"
    assert main(["regulous-eval", "--fn", "horn_splitter", "--point", "0,0,1/2"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "1/4"


@pytest.mark.parametrize("request_doc,code", [
    ({"command": "nope"}, "InvalidInput"),
    ({"command": "verify", "payload": {"lhs": "sigma9", "rhs": "id:P2"}}, "UnknownName"),
    ({"command": "verify", "payload": {"lhs": "compose(sigma0", "rhs": "id:P2"}}, "GrammarError"),
    ({"command": "verify", "payload": {"lhs": "sigma0"}}, "InvalidInput"),
    ({"command": "apply", "payload": {"map": "sigma0", "point": [0, 0, 1]}}, "Indeterminate"),
    ({"command": "solve", "payload": {"P": [[1, 0, 0], [1, 0, 0]], "Q": [[0, 1, 0], [0, 0, 1]]}},
     "DuplicateInput"),
    ({"command": "dehn", "payload": {"eps": "2", "tol": "1/10"}}, "InvalidEps"),
    ({"command": "interp-circle", "payload": {"nodes": [{"z": 0, "rho": [1, 1]}]}},
     "TargetNotOnCircle"),
])
def test_errors_exit_3(request_doc, code):
    status, out = run(request_doc)
    assert status == 3 and out["error"] == code and out["detail"]


def test_bad_json(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("{not json"))
    assert main([]) == 3
    assert json.loads(capsys.readouterr().out)["error"] == "ParseError"


def test_other_commands():
    status, out = run({"command": "catalog", "payload": {}})
    assert status == 0 and "sigma0" in out["names"]
    status, out = run({"command": "catalog", "payload": {"name": "monomial:[1,1,0,1]"}})
    assert status == 0 and out["map"]["source"] == "P1xP1"
    status, out = run({"command": "compose", "payload": {"g": "sigma0", "f": "sigma0"}})
    assert status == 0 and RationalMap.from_json(out["map"]).coords[0].degree == 4
    status, out = run({"command": "interp-circle", "payload": {"nodes": [
        {"z": 0, "rho": [0, 1]}, {"z": "1/2", "rho": [1, 0]}]}})
    assert status == 0 and out["profile"]["num"] == ["1", "-2"]
    assert all(out["certificates"].values())
    status, out = run({"command": "dehn", "payload": {
        "fixed_levels": ["1/2", "-1/2", "3/4", "-3/4"], "eps": "1/4", "tol": "1/20"}})
    assert status == 0 and out["winding_number"] == 1
    status, out = run({"command": "invert-twist", "payload": {"profile": {"num": ["1", "-2"]}}})
    assert status == 0 and out["certificate"] == {"equal": True}
    assert out["twist"]["profile"]["num"] == ["-1", "2"]


def test_parse_map_expr():
    assert parse_map_expr("sigma0").coords == sigma0().coords
    assert parse_map_expr("compose(sigma0, sigma0)").coords[0].degree == 4
    assert parse_map_expr("id:Sphere").source == "Sphere"
    inline = json.dumps(sigma0().to_json())
    assert parse_map_expr(inline).coords == sigma0().coords
    with pytest.raises(GrammarError):
        parse_map_expr("sigma0)")
    with pytest.raises(UnknownName):
        parse_map_expr("id:Torus")
    with pytest.raises(SurfaceMismatch):
        parse_map_expr("compose(sigma0,pi_N_inv)")


def test_no_floats_and_sorted_keys():
    status, out = run({"command": "solve", "payload": {"P": [[1, 0, 0], [0, 0, 1]],
                                                      "Q": [[0, 0, 1], ["3/5", 0, "4/5"]]}})
    text = json.dumps(out, sort_keys=True)
    assert status == 0 and "." not in text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ratsurf", "regulous-eval", "--fn", "cartan_canopy", "--point", "1,1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == "1/2"
