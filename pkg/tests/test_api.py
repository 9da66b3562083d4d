"""HTTP 라우터 테스트 (TestClient)."""
import pytest
from fastapi.testclient import TestClient

from app.main import app

C_EXAMPLE = ["1", "1", "1", "0", "0", "0", "-3", "0"]


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_examples(client):
    res = client.get("/fans/examples")
    assert res.status_code == 200
    assert "paper-example" in [f["name"] for f in res.json()["fans"]]


def test_validate(client):
    res = client.post("/fans/validate", json={"fan": "p1p1p1"})
    assert res.status_code == 200
    body = res.json()
    assert body["ok"] is True
    assert body["num_max_cones"] == 8


def test_validate_inline_document(client):
    doc = {"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [0, 2], [1, 2]]}
    res = client.post("/fans/validate", json={"document": doc})
    assert res.status_code == 200
    assert res.json()["ok"] is True

    doc["max_cones"] = [[0, 1]]
    assert client.post("/fans/validate", json={"document": doc}).status_code == 400


def test_paths_are_not_loaded(client):
    res = client.post("/fans/validate", json={"fan": "/etc/hostname"})
    assert res.status_code == 400
    assert "unknown builtin fan" in res.json()["detail"]


def test_missing_fields(client):
    assert client.post("/classes/amp", json={"fan": "p2"}).status_code == 422
    assert client.post("/fans/validate", json={}).status_code == 400


def test_classes_summary(client):
    res = client.post("/classes/summary", json={"fan": "paper-example"})
    assert res.status_code == 200
    body = res.json()
    assert body["picard_rank"] == 5
    assert body["basis_indices"] == [0, 1, 2, 6, 7]


def test_cones(client):
    res = client.post("/classes/ampdual", json={"fan": "paper-example", "k": 1})
    assert res.status_code == 200
    assert res.json()["coordinates"] == "R^r"
    assert C_EXAMPLE in res.json()["rays"]

    res = client.post("/classes/amp", json={"fan": "p2", "k": 1})
    assert res.json()["coordinates"] == "N1"

    assert client.post("/classes/mov", json={"fan": "p2", "k": 5}).status_code == 400


def test_base_locus(client):
    res = client.post("/classes/sbl", json={"fan": "f1", "divisor": ["0", "0", "0", "1"], "k": 1})
    assert res.status_code == 200
    body = res.json()
    assert body["dimension_less_than_k"] is False
    assert body["intersection"] == "-1"

    res = client.post("/classes/sbl", json={"fan": "p2", "divisor": ["1", "0", "0"]})
    assert res.json()["dimension"] is None


def test_polytope(client):
    res = client.post("/classes/polytope", json={"fan": "p1p1", "divisor": ["1", "1", "0", "0"]})
    assert res.status_code == 200
    assert len(res.json()["lattice_points"]) == 4


def test_witness(client):
    res = client.post("/construct/witness", json={"fan": "f1", "tau": [3], "curve_class": ["1", "1", "0", "-1"]})
    assert res.status_code == 200
    body = res.json()
    assert body["depth"] == 1
    assert [s["kind"] for s in body["steps"]] == ["subvariety", "sweep"]

    res = client.post("/construct/witness", json={"fan": "paper-example", "tau": [6], "curve_class": C_EXAMPLE})
    assert res.status_code == 400
    assert "condition (2)" in res.json()["detail"]


def test_small_modification(client):
    res = client.post("/construct/smallmod", json={"fan": "f1", "tau": [3], "rays": [3, 0, 1]})
    assert res.status_code == 200
    assert res.json()["trivial"] is True

    res = client.post("/construct/smallmod", json={"fan": "paper-example", "tau": [6], "rays": [6, 0]})
    assert res.status_code == 400
    assert "s > k+1" in res.json()["detail"]


def test_decompose(client):
    res = client.post("/theorem/decompose", json={"fan": "paper-example", "ell": 1, "curve_class": C_EXAMPLE})
    assert res.status_code == 200
    assert res.json()["tau_one_based"] == [7]


def test_verify(client):
    res = client.post("/theorem/verify", json={"fan": "p1p1", "k": 1})
    assert res.status_code == 200
    body = res.json()
    assert body["verdict"] == "verified"
    assert body["natural_inclusions"] is True
