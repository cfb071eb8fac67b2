"""HTTP facade contract tests."""

from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from aap.service import create_app
from aap.store import _instruments_to_doc

from conftest import bundle_for

STEP10 = {"pi": 0.8, "u": 0.8, "f": 0.8, "pri": 0.9, "iu": 0.8, "gq": 0.8}
STEP3A = {"pi": 0.8, "u": 0.3, "f": 0.8, "pri": 0.9, "iu": 0.8, "gq": 0.8}


@pytest.fixture
def client(tmp_path):
    # dashboard_dir points nowhere so these tests see the no-bundle behavior
    app = create_app(store_dir=tmp_path / "store", dashboard_dir=tmp_path / "no-dashboard")
    with TestClient(app) as c:
        yield c


def test_decide_step10_region(client):
    response = client.post("/api/v1/decide", json={"snapshot": STEP10})
    assert response.status_code == 200
    body = response.json()
    assert body["recommendation"]["outcome"] == "ReadyForDesign"
    assert body["recommendation"]["fired_step"] == "10"
    assert body["trace"] == body["recommendation"]["trace"]


def test_decide_out_of_range_snapshot(client):
    response = client.post("/api/v1/decide", json={"snapshot": {**STEP10, "pi": 1.5}})
    assert response.status_code == 400
    body = response.json()
    assert body["code"] == "range_violation"
    assert set(body) == {"code", "message", "field_path"}


def test_decide_defaults_to_pragmatic_mode(client):
    pragmatic = client.post("/api/v1/decide", json={"snapshot": STEP10}).json()
    assert pragmatic["recommendation"]["outcome"] == "ReadyForDesign"
    literal = client.post(
        "/api/v1/decide", json={"snapshot": STEP10, "config": {"pri_mode": "literal"}}
    ).json()
    assert literal["recommendation"]["outcome"] == "ContinueProcessAnalysis"


def test_decide_is_referentially_transparent(client):
    payload = {"snapshot": STEP10}
    first = client.post("/api/v1/decide", json=payload)
    for _ in range(19):
        again = client.post("/api/v1/decide", json=payload)
        assert again.content == first.content


def test_decide_rejects_malformed_bodies(client):
    response = client.post(
        "/api/v1/decide",
        content=b"{not json",
        headers={"content-type": "application/json"},
    )
    assert response.status_code == 400
    assert response.json()["code"] == "malformed"

    response = client.post("/api/v1/decide", json={"snapshot": STEP10, "grid": [1]})
    assert response.status_code == 400
    assert response.json()["code"] == "malformed"


def test_project_lifecycle_with_instruments(client):
    created = client.post("/api/v1/projects", json={"id": "alpha", "name": "Alpha"})
    assert created.status_code == 201
    assert created.json()["revision"] == 0

    bundle_doc = _instruments_to_doc(bundle_for(0.8, 0.8, 0.8, 0.9, 0.8, 0.8))
    appended = client.post(
        "/api/v1/projects/alpha/iterations",
        json={"revision": 0, "instruments": bundle_doc},
    )
    assert appended.status_code == 201
    body = appended.json()
    assert body["revision"] == 1
    assert body["iteration"]["seq"] == 1
    assert body["iteration"]["recommendation"]["outcome"] == "ReadyForDesign"

    history = client.get("/api/v1/projects/alpha/history")
    assert history.status_code == 200
    iterations = history.json()["iterations"]
    assert len(iterations) == 1
    # snapshot is recomputable from the stored instruments
    assert iterations[0]["snapshot"]["pi"] == pytest.approx(0.8)
    assert iterations[0]["instruments"] == bundle_doc

    listed = client.get("/api/v1/projects").json()["projects"]
    assert [p["id"] for p in listed] == ["alpha"]
    assert listed[0]["iterations"] == 1


def test_stale_revision_append_is_409(client):
    client.post("/api/v1/projects", json={"id": "beta", "name": "Beta"})
    ok = client.post(
        "/api/v1/projects/beta/iterations", json={"revision": 0, "snapshot": STEP10}
    )
    assert ok.status_code == 201
    stale = client.post(
        "/api/v1/projects/beta/iterations", json={"revision": 0, "snapshot": STEP10}
    )
    assert stale.status_code == 409
    assert stale.json()["code"] == "revision_conflict"


def test_duplicate_project_id_conflicts(client):
    assert client.post("/api/v1/projects", json={"id": "dup", "name": "Dup"}).status_code == 201
    again = client.post("/api/v1/projects", json={"id": "dup", "name": "Dup"})
    assert again.status_code == 409


def test_missing_project_is_404(client):
    for url in (
        "/api/v1/projects/ghost",
        "/api/v1/projects/ghost/history",
        "/api/v1/projects/ghost/paralysis",
    ):
        response = client.get(url)
        assert response.status_code == 404
        assert response.json()["code"] == "not_found"


def test_whatif_flips_outcome_and_writes_nothing(client, tmp_path):
    client.post("/api/v1/projects", json={"id": "gamma", "name": "Gamma"})
    client.post("/api/v1/projects/gamma/iterations", json={"revision": 0, "snapshot": STEP3A})
    store_file = tmp_path / "store" / "gamma.json"
    before = store_file.read_bytes()

    response = client.post(
        "/api/v1/whatif", json={"snapshot": STEP3A, "overrides": {"u": 0.9}}
    )
    assert response.status_code == 200
    assert response.json()["recommendation"]["outcome"] == "ReadyForDesign"

    assert store_file.read_bytes() == before
    assert client.get("/api/v1/projects/gamma").json()["revision"] == 1


def test_whatif_supports_unmeasured_override(client):
    response = client.post(
        "/api/v1/whatif",
        json={"snapshot": {**STEP3A, "pi": 0.3, "u": 0.8}, "overrides": {"f": "unmeasured"}},
    )
    assert response.status_code == 200
    assert response.json()["recommendation"]["outcome"] == "CheckFutureUsefulness"


def test_whatif_unknown_index_is_malformed(client):
    response = client.post(
        "/api/v1/whatif", json={"snapshot": STEP10, "overrides": {"speed": 0.9}}
    )
    assert response.status_code == 400
    assert response.json()["code"] == "malformed"


def test_instrument_invalid_maps_to_400(client):
    client.post("/api/v1/projects", json={"id": "delta", "name": "Delta"})
    bundle_doc = _instruments_to_doc(bundle_for(0.8, 0.8, 0.8, 0.9, 0.8, 0.8))
    bundle_doc["pi_questionnaire"]["weights"] = [0.0, 0.0]
    response = client.post(
        "/api/v1/projects/delta/iterations",
        json={"revision": 0, "instruments": bundle_doc},
    )
    assert response.status_code == 400
    assert response.json()["code"] == "instrument_invalid"


def test_paralysis_endpoint_reports_threshold_chasing(client):
    client.post(
        "/api/v1/projects",
        json={"id": "trap", "name": "Trap", "config": {"pri_mode": "literal"}},
    )
    high = {"pi": 0.9, "u": 0.9, "f": 0.9, "pri": 0.9, "iu": 0.9, "gq": 0.9}
    for revision in range(3):
        client.post(
            "/api/v1/projects/trap/iterations", json={"revision": revision, "snapshot": high}
        )
    report = client.get("/api/v1/projects/trap/paralysis").json()
    assert report == {"triggered": True, "kind": "ThresholdChasing", "window": [1, 2, 3]}


def test_non_write_endpoints_leave_the_store_alone(client, tmp_path):
    client.post("/api/v1/projects", json={"id": "epsilon", "name": "Eps"})
    client.post("/api/v1/projects/epsilon/iterations", json={"revision": 0, "snapshot": STEP10})
    store_dir = tmp_path / "store"
    before = {p.name: p.read_bytes() for p in store_dir.glob("*.json")}

    client.post("/api/v1/decide", json={"snapshot": STEP10})
    client.post("/api/v1/whatif", json={"snapshot": STEP10, "overrides": {}})
    client.get("/api/v1/projects")
    client.get("/api/v1/projects/epsilon")
    client.get("/api/v1/projects/epsilon/history")
    client.get("/api/v1/projects/epsilon/paralysis")

    after = {p.name: p.read_bytes() for p in store_dir.glob("*.json")}
    assert after == before


def test_placeholder_page_served_without_dashboard(client):
    response = client.get("/")
    assert response.status_code == 200
    assert "api/v1" in response.text
