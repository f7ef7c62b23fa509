import pytest
from fastapi.testclient import TestClient

from urword.service.app import create_app

from conftest import MINI3_TABLES, TINY_TABLES


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


PAPER_BODY = {"kind": "paper_star"}


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"


def test_hypothesis_endpoint(client):
    resp = client.post(
        "/hypothesis", json={"family": PAPER_BODY, "max_level": 3}
    )
    assert resp.status_code == 200
    levels = resp.json()["levels"]
    assert len(levels) == 4
    assert all(
        lv["structural_ok"] and lv["ratio_growth_ok"] and lv["vector_lemma_ok"]
        for lv in levels
    )


def test_verify_selected_checks(client):
    resp = client.post(
        "/verify",
        json={
            "family": PAPER_BODY,
            "checks": ["hypothesis", "closed_form", "length_chain"],
            "params": {"max_rank": 5, "ordering_rank": 4},
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["ok"] is True
    assert [c["name"] for c in body["checks"]] == [
        "hypothesis",
        "closed_form",
        "length_chain",
    ]
    assert body["counts"]["fail"] == 0
    assert body["checks"][1]["details"]["validated_convention"] == "displayed"


def test_verify_unknown_check_is_config_error(client):
    resp = client.post(
        "/verify", json={"family": PAPER_BODY, "checks": ["nonsense"]}
    )
    assert resp.status_code == 422


def test_verify_invalid_family(client):
    resp = client.post(
        "/verify",
        json={"family": {"kind": "custom", "l": [8], "m": [2], "n": [32]}},
    )
    assert resp.status_code == 400
    assert resp.json()["kind"] == "config"


def test_generate_u_rank1(client):
    resp = client.post(
        "/generate",
        json={"family": PAPER_BODY, "which": "u", "rank": 1},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["length"] == 320
    assert body["parikh"] == {"zeros": "256", "ones": "64"}
    assert body["word01"] == "0" * 256 + "1" * 64


def test_generate_prefix_zero(client):
    resp = client.post(
        "/generate",
        json={"family": PAPER_BODY, "which": "prefix", "length": 0},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["length"] == 0
    assert body["word01"] == ""


def test_generate_needs_rank(client):
    resp = client.post("/generate", json={"family": PAPER_BODY, "which": "u"})
    assert resp.status_code == 422


def test_generate_over_cap_is_resource_error(client):
    resp = client.post(
        "/generate", json={"family": PAPER_BODY, "which": "u", "rank": 3}
    )
    assert resp.status_code == 413
    assert resp.json()["kind"] == "resource"


def test_generate_custom_family(client):
    resp = client.post(
        "/generate",
        json={
            "family": {"kind": "custom", **MINI3_TABLES},
            "which": "v",
            "rank": 2,
        },
    )
    assert resp.status_code == 200
    assert resp.json()["length"] == 82560


def test_report_csv_deterministic(client):
    req = {"family": PAPER_BODY, "kind": "bispecial", "rank_max": 3}
    first = client.post("/report", json=req)
    second = client.post("/report", json=req)
    assert first.status_code == 200
    assert first.headers["content-type"].startswith("text/csv")
    assert first.content == second.content
    lines = first.text.splitlines()
    assert lines[0] == "rank,len_b,len_c,len_a_next,len_d"
    assert lines[1] == "0,64,255,384,1023"


def test_report_frequency_tiny(client):
    resp = client.post(
        "/report",
        json={
            "family": {"kind": "custom", **TINY_TABLES},
            "kind": "frequency",
            "rank_max": 3,
        },
    )
    assert resp.status_code == 200
    header = resp.text.splitlines()[0].split(",")
    assert header[0] == "rank" and "excess_ge_3_2" in header


def test_verify_depth_limited_custom(client):
    resp = client.post(
        "/verify",
        json={
            "family": {"kind": "custom", **MINI3_TABLES},
            "checks": ["hypothesis", "ordering_chain"],
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["ok"] is True
