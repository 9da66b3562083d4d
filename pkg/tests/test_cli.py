"""명령행 인터페이스: 종료 코드와 JSON/텍스트 출력."""
import json

import pytest

from app.cli import EXIT_FALSE, EXIT_INPUT, EXIT_OK, run

C_TEXT = "1,1,1,0,0,0,-3,0"


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_validate_builtin(capsys):
    assert run(["validate", "--fan", "paper-example"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "ok: true" in out
    assert "num_max_cones: 12" in out


def test_validate_invalid_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"rank": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[0, 1]]}))
    assert run(["validate", "--fan", str(path), "--json"]) == EXIT_FALSE
    assert _json(capsys)["error"] == "invalid fan"


def test_input_errors(tmp_path, capsys):
    assert run(["classes"]) == EXIT_INPUT
    assert run(["classes", "--fan", "no-such-fan"]) == EXIT_INPUT
    assert run(["amp", "--fan", "p2"]) == EXIT_INPUT  # --k 누락
    assert run(["polytope", "--fan", "p2", "--divisor", "1,x,0"]) == EXIT_INPUT
    assert run(["amp", "--fan", "p2", "--k", "7"]) == EXIT_INPUT

    path = tmp_path / "broken.json"
    path.write_text("{\n  \"rank\": 2,\n")
    assert run(["classes", "--fan", str(path), "--json"]) == EXIT_INPUT
    assert "malformed JSON" in _json(capsys)["message"]


def test_strict_flag(tmp_path):
    path = tmp_path / "scaled.json"
    doc = {"rank": 1, "rays": [[2], [-1]], "max_cones": [[0], [1]]}
    path.write_text(json.dumps(doc))
    assert run(["validate", "--fan", str(path)]) == EXIT_OK
    assert run(["validate", "--fan", str(path), "--strict"]) == EXIT_INPUT


def test_examples(capsys):
    assert run(["examples", "--json"]) == EXIT_OK
    names = [f["name"] for f in _json(capsys)["fans"]]
    assert {"p2", "p1p1", "p1p1p1", "f1", "paper-example"} <= set(names)


def test_classes_one_based_labels(capsys):
    assert run(["classes", "--fan", "paper-example", "--json"]) == EXIT_OK
    data = _json(capsys)
    assert data["picard_rank"] == 5
    assert data["basis_one_based"] == [1, 2, 3, 7, 8]
    assert data["projective"] is True
    assert len(data["walls"]) == 18


def test_mov_and_amp_dual(capsys):
    assert run(["ampdual", "--fan", "paper-example", "--k", "1", "--json"]) == EXIT_OK
    rays = _json(capsys)["rays"]
    assert C_TEXT.split(",") in rays
    assert run(["mov", "--fan", "paper-example", "--k", "2", "--json"]) == EXIT_OK
    assert C_TEXT.split(",") not in _json(capsys)["rays"]


def test_base_locus(capsys):
    assert run(["sbl", "--fan", "p2", "--divisor", "1,0,0"]) == EXIT_OK
    assert "dimension: -inf" in capsys.readouterr().out

    assert run(["sbl", "--fan", "f1", "--divisor", "0,0,0,1", "--json"]) == EXIT_OK
    data = _json(capsys)
    assert data["member_cones"] == [[3]]
    assert data["dimension"] == 1


def test_base_locus_dimension_test(capsys):
    assert run(["sbl", "--fan", "f1", "--divisor", "0,0,0,1", "--k", "1", "--json"]) == EXIT_FALSE
    data = _json(capsys)
    assert data["dimension_less_than_k"] is False
    assert data["subvariety_cone"] == [3]
    assert data["swept_cone"] == [3]
    assert data["negative_curve"] == ["1", "1", "0", "-1"]
    assert data["intersection"] == "-1"


def test_polytope(capsys):
    assert run(["polytope", "--fan", "p2", "--divisor", "1,0,0", "--json"]) == EXIT_OK
    data = _json(capsys)
    assert data["dimension"] == 2
    assert sorted(data["lattice_points"]) == [[-1, 0], [-1, 1], [0, 0]]

    assert run(["polytope", "--fan", "p2", "--divisor", "1/2,0,0", "--json"]) == EXIT_OK
    assert _json(capsys)["lattice_points"] is None


def test_witness(capsys):
    assert run(["witness", "--fan", "p2", "--class", "1,1,1", "--json"]) == EXIT_OK
    data = _json(capsys)
    assert data["class_matches_target"] is True
    assert data["steps"][0]["kind"] == "sweep"

    assert run(["witness", "--fan", "paper-example", "--tau", "6", "--class", C_TEXT, "--json"]) == EXIT_FALSE
    data = _json(capsys)
    assert data["error"] == "false"
    assert "condition (2)" in data["message"]


def test_small_modification(capsys):
    assert run(["smallmod", "--fan", "paper-example", "--tau", "6", "--rays", "6,0,1,2", "--json"]) == EXIT_OK
    data = _json(capsys)
    assert data["problems"] == []
    assert data["trivial"] is False
    assert data["certificate"]["verified"] is True
    assert [1, 4, 7] in data["target_one_based"]

    assert run(["smallmod", "--fan", "paper-example", "--tau", "6", "--rays", "6,0,3"]) == EXIT_FALSE


def test_decompose(capsys):
    assert run(["decompose", "--fan", "paper-example", "--ell", "1", "--class", C_TEXT, "--json"]) == EXIT_OK
    data = _json(capsys)
    assert data["tau"] == [6]
    assert data["tau_one_based"] == [7]
    assert data["swept_dimension"] == 2
    assert data["modification"]["trivial"] is False

    assert run(["decompose", "--fan", "paper-example", "--ell", "1", "--class", "1,0,0,0,0,0,0,0"]) == EXIT_FALSE


@pytest.mark.parametrize("fan, k", [("p2", 1), ("f1", 1), ("paper-example", 2)])
def test_theorem(capsys, fan, k):
    assert run(["theorem", "--fan", fan, "--k", str(k)]) == EXIT_OK
    assert "verdict: verified" in capsys.readouterr().out
