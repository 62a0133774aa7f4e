import json

import pytest
from fastapi.testclient import TestClient

from covchain.api import create_app
from covchain.orchestrator import ScenarioConfig, Simulation


def ev(at, kind, a, b, duration_s=600):
    return {"at": at, "kind": kind, "a": a, "b": b, "duration_s": duration_s}


def jsonl(*objs):
    return "\n".join(json.dumps(o) for o in objs)


@pytest.fixture
def client():
    sim = Simulation(
        persons=["c1", "c2", "x", "y", "z"],
        places=["mall", "park"],
        config=ScenarioConfig(block_capacity=1, difficulty=4, num_miners=3),
        seed=7,
    )
    sim.ingest_contacts_jsonl(
        jsonl(
            ev(100, "pp", "c1", "x"),
            ev(200, "pp", "c2", "x"),
            ev(300, "pp", "c2", "y"),
            ev(400, "pl", "c1", "mall"),
        )
    )
    return TestClient(create_app(sim))


class TestHealthAndChain:
    def test_health(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json()["status"] == "ok"

    def test_fresh_chain_empty(self, client):
        resp = client.get("/chain")
        assert resp.status_code == 200
        assert resp.json() == []

    def test_block_after_case(self, client):
        assert client.post("/cases", json={"case_id": "c1"}).status_code == 200
        resp = client.get("/blocks/0")
        assert resp.status_code == 200
        body = resp.json()
        assert len(body["patterns"]) == 1
        assert body["header"]["prev_hash"] == "0" * 64

    def test_missing_block_404(self, client):
        resp = client.get("/blocks/5")
        assert resp.status_code == 404
        assert resp.json()["error"] == "UnknownBlock"


class TestCases:
    def test_register_returns_pipeline_record(self, client):
        resp = client.post("/cases", json={"case_id": "c1"})
        body = resp.json()
        assert body["case_id"] == "c1"
        assert body["block_height"] == 0
        assert body["n_contacts"] == 1
        assert body["mining"]["winning_code"]

    def test_duplicate_409(self, client):
        client.post("/cases", json={"case_id": "c1"})
        resp = client.post("/cases", json={"case_id": "c1"})
        assert resp.status_code == 409
        assert resp.json()["error"] == "DuplicateCase"

    def test_unknown_person_404(self, client):
        resp = client.post("/cases", json={"case_id": "ghost"})
        assert resp.status_code == 404
        assert resp.json()["error"] == "UnknownPerson"

    def test_empty_case_id_422(self, client):
        assert client.post("/cases", json={"case_id": ""}).status_code == 422


class TestVerify:
    def test_garbage_code_is_200_invalid(self, client):
        resp = client.post("/verify", json={"code": "Pzzzz"})
        assert resp.status_code == 200
        assert resp.json()["valid"] is False

    def test_dispatched_code_valid(self, client):
        client.post("/cases", json={"case_id": "c1"})
        code = client.get("/clients/x/inbox").json()["messages"][0]["code"]
        body = client.post("/verify", json={"code": code}).json()
        assert body["valid"] is True
        assert body["case_id"] == "c1"
        assert body["undispatched"] is False


class TestClients:
    def test_inbox_and_risk(self, client):
        client.post("/cases", json={"case_id": "c1"})
        client.post("/cases", json={"case_id": "c2"})
        inbox = client.get("/clients/x/inbox").json()
        assert len(inbox["messages"]) == 2
        risk = client.get("/clients/x/risk").json()
        assert risk["n_codes"] == 2
        assert risk["risk"] == pytest.approx(1 - 0.9**2)
        assert risk["pmf"][0] == pytest.approx(0.9**2)

    def test_unknown_client_404(self, client):
        assert client.get("/clients/ghost/inbox").status_code == 404
        assert client.get("/clients/ghost/risk").status_code == 404


class TestSuspects:
    def test_ranked_by_risk(self, client):
        client.post("/cases", json={"case_id": "c1"})
        client.post("/cases", json={"case_id": "c2"})
        out = client.get("/authority/suspects", params={"k": 2}).json()
        assert [s["client_id"] for s in out] == ["x", "y"]

    def test_threshold_mode(self, client):
        client.post("/cases", json={"case_id": "c1"})
        out = client.get("/authority/suspects", params={"threshold": 0.05}).json()
        assert all(s["risk"] >= 0.05 for s in out)

    def test_both_modes_rejected(self, client):
        resp = client.get("/authority/suspects", params={"threshold": 0.5, "k": 2})
        assert resp.status_code == 400


class TestClusters:
    def test_exchange(self, client):
        client.post("/cases", json={"case_id": "c1"})
        client.post("/cases", json={"case_id": "c2"})
        body = client.post(
            "/clusters", json={"member_ids": ["x", "y", "z"]}
        ).json()
        assert [w["sender_id"] for w in body["z"]] == ["x", "y"]
        assert "z" not in [w["sender_id"] for w in body["z"]]

    def test_too_small_422(self, client):
        resp = client.post("/clusters", json={"member_ids": ["x"]})
        assert resp.status_code == 422
        assert resp.json()["error"] == "ClusterTooSmall"

    def test_unknown_member_404(self, client):
        resp = client.post("/clusters", json={"member_ids": ["x", "ghost"]})
        assert resp.status_code == 404


class TestIngest:
    def test_accepts_jsonl_body(self, client):
        payload = jsonl(ev(900, "pp", "y", "z"))
        resp = client.post("/ingest/contacts", content=payload.encode())
        assert resp.status_code == 200
        assert resp.json()["accepted"] == 1

    def test_schema_error_400(self, client):
        resp = client.post("/ingest/contacts", content=b"not json\n")
        assert resp.status_code == 400
        assert resp.json()["error"] == "SchemaError"
