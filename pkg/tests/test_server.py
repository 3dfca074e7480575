"""HTTP API: envelopes, published values, parity with the library, statelessness."""

import json
import re

import pytest
from fastapi.testclient import TestClient

from skewsum.meta import load_vitamin_d, meta_analyze
from skewsum.server import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=False)


def dataset_payload(client):
    return client.get("/api/dataset/vitamind").json()["result"]["studies"]


class TestHealth:
    def test_healthz(self, client):
        resp = client.get("/healthz")
        assert resp.status_code == 200
        assert resp.text == "ok"


class TestEnvelope:
    def test_success_has_only_result(self, client):
        body = client.get("/api/critical-value",
                          params={"scenario": "s2", "n": 5}).json()
        assert body["ok"] is True
        assert "result" in body and "error" not in body

    def test_error_has_only_error(self, client):
        body = client.post("/api/test", json={"scenario": "s1", "n": 40}).json()
        assert body["ok"] is False
        assert "error" in body and "result" not in body
        assert set(body["error"]) == {"code", "message", "field"}

    def test_malformed_body_is_400(self, client):
        resp = client.post("/api/test", json={"scenario": "s1", "a": "x", "n": 40})
        assert resp.status_code == 400
        assert resp.json()["error"]["code"] == "validation_error"
        assert resp.json()["error"]["field"] == "a"

    def test_domain_error_is_400_with_code(self, client):
        resp = client.post("/api/test",
                           json={"scenario": "s1", "a": 5, "m": 5, "b": 5, "n": 9})
        assert resp.status_code == 400
        assert resp.json()["error"]["code"] == "DegenerateRangeError"


class TestTestEndpoint:
    def test_published_case(self, client):
        resp = client.post("/api/test",
                           json={"scenario": "s1", "a": 2.25, "m": 16,
                                 "b": 74.25, "n": 40})
        assert resp.status_code == 200
        result = resp.json()["result"]
        assert result["statistic"] == pytest.approx(0.618, abs=0.001)
        assert result["critical"] == pytest.approx(0.319, abs=0.001)
        assert result["reject"] is True
        assert result["verdict"] == "Reject"

    def test_numbers_serialized_at_full_precision(self, client):
        resp = client.post("/api/test",
                           json={"scenario": "s1", "a": 2.25, "m": 16,
                                 "b": 74.25, "n": 40})
        digits = re.search(r'"statistic":([0-9.]+)', resp.text).group(1)
        assert len(digits.replace(".", "").lstrip("0")) >= 6


class TestCriticalValueEndpoint:
    def test_table_row(self, client):
        resp = client.get("/api/critical-value", params={"scenario": "s2", "n": 5})
        assert resp.json()["result"]["value"] == 0.9463

    def test_monte_carlo_source_with_seed(self, client):
        params = {"scenario": "s1", "n": 9, "source": "mc", "mc_reps": 20000,
                  "mc_seed": 4}
        a = client.get("/api/critical-value", params=params).json()
        b = client.get("/api/critical-value", params=params).json()
        assert a == b


class TestEstimateEndpoint:
    def test_known_values(self, client):
        resp = client.post("/api/estimate",
                           json={"scenario": "s1", "a": 16.75, "m": 39.75,
                                 "b": 89.25, "n": 15})
        result = resp.json()["result"]
        assert result["mean"] == pytest.approx(44.31, abs=0.05)
        assert result["sd"] == pytest.approx(20.84, abs=0.05)


class TestDatasetEndpoint:
    def test_matches_bundled_data(self, client):
        studies = dataset_payload(client)
        assert [s["id"] for s in studies] == [s.id for s in load_vitamin_d()]
        davies = studies[0]
        assert davies["cases"]["a"] == 2.25 and davies["cases"]["n"] == 40


class TestMetaEndpoint:
    def test_matches_library_exactly(self, client):
        studies = dataset_payload(client)
        resp = client.post("/api/meta", json={"studies": studies})
        assert resp.status_code == 200
        result = resp.json()["result"]
        direct = meta_analyze(load_vitamin_d())
        assert result["fixed"]["pooled_md"] == direct.fixed.pooled_md
        assert result["random"]["pooled_md"] == direct.random.pooled_md
        assert result["fixed"]["ci_low"] == direct.fixed.ci_low
        assert len(result["forest"]) == 6
        assert [d["study_id"] for d in result["decisions"] if not d["included"]] == [
            "davies-1985", "grange-1985"]

    def test_force_include_list(self, client):
        studies = dataset_payload(client)
        resp = client.post("/api/meta", json={
            "studies": studies,
            "force_include": ["davies-1985", "grange-1985"]})
        result = resp.json()["result"]
        assert all(d["included"] for d in result["decisions"])
        direct = meta_analyze(load_vitamin_d(),
                              force_include=("davies-1985", "grange-1985"))
        assert result["fixed"]["pooled_md"] == direct.fixed.pooled_md

    def test_empty_study_list_rejected(self, client):
        resp = client.post("/api/meta", json={"studies": []})
        assert resp.status_code == 400

    def test_stateless_across_request_order(self, client):
        studies = dataset_payload(client)
        test_body = {"scenario": "s1", "a": 2.25, "m": 16, "b": 74.25, "n": 40}
        first_test = client.post("/api/test", json=test_body).json()
        first_meta = client.post("/api/meta", json={"studies": studies}).json()
        # interleave other calls, then repeat
        client.get("/api/critical-value", params={"scenario": "s3", "n": 21})
        client.post("/api/estimate", json={"scenario": "s2", "q1": 1, "m": 2,
                                           "q3": 3, "n": 21})
        again_meta = client.post("/api/meta", json={"studies": studies}).json()
        again_test = client.post("/api/test", json=test_body).json()
        assert first_test == again_test
        assert first_meta == again_meta
