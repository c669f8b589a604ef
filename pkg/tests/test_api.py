import json

import pytest
from fastapi.testclient import TestClient

from app.main import app
from src.documents import resolve_path


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def zoo_document():
    return json.loads(resolve_path("fx-zoo", ".json").read_text())


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "healthy"
    assert body["fixtures_loaded"] == 11


def test_info(client):
    body = client.get("/info").json()
    assert "fx-zoo" in body["fixtures"]
    assert body["tboxes"] == ["example1", "example2"]
    assert "rule-extrapolation" in body["propositions"]


class TestQueries:
    def test_validate_inline_document(self, client, zoo_document):
        response = client.post("/validate", json={"interpretation": zoo_document})
        assert response.status_code == 200
        assert response.json()["valid"] is True

    def test_validate_reports_violations(self, client, zoo_document):
        document = dict(zoo_document, forbidden=["ALL"])
        body = client.post("/validate", json={"interpretation": document}).json()
        assert body["valid"] is False
        assert "domain-exclusivity" in {v["condition"] for v in body["violations"]}

    def test_check(self, client):
        body = client.post("/check", json={"interpretation": "fx-zoo", "tbox": "example1"}).json()
        assert body["holds"] is True

    def test_check_inline_tbox(self, client):
        body = client.post("/check", json={"interpretation": "fx-zoo", "tbox": "natural Cat, Dog\nci Cat <= Dog\n"}).json()
        assert body["holds"] is False

    def test_mu(self, client):
        body = client.post("/mu", json={"interpretation": "fx-zoo", "source": "Dog", "target": "Wolf"}).json()
        assert body["labels"] == ["σ_{(1,2)}"]

    def test_ana_strong(self, client):
        body = client.post("/ana", json={"interpretation": "fx-zoo", "assertion": "Cat : WildCat :: Dog : Wolf",
                                         "strong": True}).json()
        assert body["strong"] is True
        assert body["assertion"].startswith("sana ")

    def test_ap_levels(self, client):
        arguments = ["(and Young Cat)", "(and Adult Cat)", "(and Young Dog)", "(and Adult Dog)"]
        features = client.post("/ap", json={"arguments": arguments, "interpretation": "fx-zoo", "level": "features"})
        both = client.post("/ap", json={"arguments": arguments, "interpretation": "fx-zoo"})
        assert features.json()["holds"] is True
        assert both.json()["holds"] is False

    def test_infer(self, client):
        body = client.post("/infer", json={"tbox": "example1", "witness": "fx-zoo"}).json()
        conclusions = {f["conclusion"]: f for f in body["facts"]}
        fact = conclusions["ci (and Adult Wolf) <= Dangerous"]
        assert fact["rule"] == "rule_extrapolation"
        assert body["derived"] > 0

    def test_countermodel(self, client):
        body = client.post("/countermodel", json={
            "tbox": "natural A, B\nci A <= B\n", "query": "ci B <= A", "max_features": 2,
        }).json()
        assert body["status"] == "countermodel"
        assert body["interpretation"]["natural_atoms"].keys() == {"A", "B"}


class TestErrors:
    def test_unknown_fixture_is_a_bad_request(self, client):
        response = client.post("/validate", json={"interpretation": "fx-nowhere"})
        assert response.status_code == 400

    def test_syntax_error_is_a_bad_request(self, client):
        response = client.post("/mu", json={"interpretation": "fx-zoo", "source": "(and Cat", "target": "Dog"})
        assert response.status_code == 400

    def test_schema_violation(self, client):
        response = client.post("/ap", json={"arguments": ["{a}", "{b}"]})
        assert response.status_code == 422
