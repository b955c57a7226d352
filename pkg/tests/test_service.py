import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from mfgap.service.app import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    r = client.get("/v1/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_orbit_endpoint(client):
    r = client.post("/v1/orbit", json={"base": "0/1", "radius": 3})
    assert r.status_code == 200
    body = r.json()
    assert body["report"]["passed"]
    assert body["report"]["size"] == 53
    assert body["wall_clock_seconds"] >= 0


def test_schottky_endpoint_default_pair(client):
    r = client.post("/v1/schottky-verify", json={"scan_len": 6})
    assert r.status_code == 200
    rep = r.json()["report"]
    assert rep["passed"]
    assert rep["certificate"]["ok"]
    assert rep["scan"]["min_abs_trace"] == 4


def test_schottky_endpoint_custom_bad_pair(client):
    pair = {
        "gen_a": [["3", "1"], ["2", "1"]],
        "gen_b": [["3", "1"], ["2", "1"]],
        "ia_plus": {"lo": "41/20", "hi": "51/50"},
        "ia_minus": {"lo": "1/15", "hi": "-31/32"},
        "ib_plus": {"lo": "41/20", "hi": "51/50"},
        "ib_minus": {"lo": "1/15", "hi": "-31/32"},
    }
    r = client.post("/v1/schottky-verify", json={"pair": pair, "scan_len": 3})
    assert r.status_code == 200
    rep = r.json()["report"]
    assert not rep["passed"]
    assert rep["certificate"]["violation"]


def test_gap_test_endpoint(client):
    r = client.post(
        "/v1/gap-test", json={"samples": 25, "seed": 5, "radius": 4}
    )
    assert r.status_code == 200
    rep = r.json()["report"]
    assert rep["passed"]
    assert rep["gap_report"]["violations"] == 0
    assert "csv" in rep


def test_gap_test_validation(client):
    r = client.post("/v1/gap-test", json={"samples": 0})
    assert r.status_code == 422


def test_spectral_radius_endpoint(client):
    r = client.post("/v1/spectral-radius", json={"radius": 6})
    assert r.status_code == 200
    rep = r.json()["report"]
    assert rep["passed"]
    assert len(rep["values"]) == 6


def test_l2_tail_endpoint(client):
    r = client.post("/v1/l2-tail", json={"n_points": 2, "seed": 1, "max_depth": 25})
    assert r.status_code == 200
    assert r.json()["report"]["passed"]


def test_cor43_endpoint_explicit_point(client):
    r = client.post(
        "/v1/cor43",
        json={
            "n_points": 0,
            "depth": 8,
            "include_near_degenerate": False,
            "cross_validate": 1,
            "explicit_points": [[3.0, 3.0, 3.0]],
        },
    )
    assert r.status_code == 200
    rep = r.json()["report"]
    assert rep["passed"]
    assert len(rep["points"]) == 1


def test_cover_build_endpoint(client):
    r = client.post("/v1/cover-build", json={"n_regions": 4, "seed": 2})
    assert r.status_code == 200
    assert r.json()["report"]["passed"]


def test_cont_gap_endpoint(client):
    r = client.post(
        "/v1/cont-gap", json={"samples": 10, "seed": 3, "chain_checks": 1}
    )
    assert r.status_code == 200
    assert r.json()["report"]["passed"]


def test_decompose_endpoint(client):
    r = client.post("/v1/decompose", json={"radius": 4, "samples": 40, "seed": 4})
    assert r.status_code == 200
    assert r.json()["report"]["passed"]


def test_all_endpoint_smoke(client):
    r = client.post("/v1/all", json={"seed": 1, "scale": "smoke"})
    assert r.status_code == 200
    rep = r.json()["report"]
    assert rep["passed"]
    assert len(rep["suites"]) == 10


def test_all_endpoint_rejects_bad_scale(client):
    r = client.post("/v1/all", json={"seed": 1, "scale": "huge"})
    assert r.status_code == 422


def test_custom_pair_roundtrip(client):
    # a valid custom pair built from the shipped one survives the JSON trip
    from mfgap.schottky import DEFAULT_PAIR
    from mfgap.suites import _pair_from_json

    blob = DEFAULT_PAIR.to_json()
    assert _pair_from_json(blob).to_json() == blob
    r = client.post("/v1/schottky-verify", json={"pair": blob, "scan_len": 3})
    assert r.status_code == 200
    assert r.json()["report"]["passed"]
