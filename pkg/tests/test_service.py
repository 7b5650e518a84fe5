import threading

import pytest
from fastapi.testclient import TestClient

from evograph.egml import parse_egml, write_egml
from evograph.generators import example_eg
from evograph.service import create_app


@pytest.fixture
def client(tmp_path):
    write_egml(example_eg(2, p=4), tmp_path / "demo.egml")
    app = create_app(tmp_path)
    with TestClient(app) as client:
        yield client


def revision_of(client, doc_id="demo"):
    return client.get(f"/api/docs/{doc_id}").json()["revision"]


class TestReads:
    def test_listing(self, client):
        docs = client.get("/api/docs").json()
        assert [d["id"] for d in docs] == ["demo"]
        assert docs[0]["instances"] == 4
        assert docs[0]["revision"] == 1

    def test_document_payload_mirrors_model(self, client):
        doc = client.get("/api/docs/demo").json()
        assert len(doc["instances"]) == 4
        inst = doc["instances"][0]
        assert set(inst["vertices"]) == {f"v{i}" for i in range(1, 54)}
        assert inst["edges"][0].keys() == {"source", "target", "weight", "attributes"}

    def test_unknown_id_404(self, client):
        assert client.get("/api/docs/nope").status_code == 404


class TestWrites:
    def test_read_your_write_position(self, client):
        r = client.put("/api/docs/demo/instances/0/vertices/v1/position",
                       json={"x": 10.0, "y": 20.0, "revision": 1})
        assert r.status_code == 200
        assert r.json()["revision"] == 2
        doc = client.get("/api/docs/demo").json()
        assert doc["instances"][0]["vertices"]["v1"] == {
            "x": 10.0, "y": 20.0, "attributes": {}}
        assert doc["revision"] == 2

    def test_revision_conflict_409(self, client):
        body = {"x": 1.0, "y": 2.0, "revision": 1}
        assert client.put("/api/docs/demo/instances/0/vertices/v1/position",
                          json=body).status_code == 200
        assert client.put("/api/docs/demo/instances/0/vertices/v2/position",
                          json=body).status_code == 409

    def test_exactly_one_concurrent_write_wins(self, client):
        results = []
        barrier = threading.Barrier(2)

        def write(vid):
            barrier.wait()
            r = client.put(f"/api/docs/demo/instances/0/vertices/{vid}/position",
                           json={"x": 5.0, "y": 5.0, "revision": 1})
            results.append(r.status_code)

        threads = [threading.Thread(target=write, args=(vid,)) for vid in ("v1", "v2")]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert sorted(results) == [200, 409]

    def test_add_vertex_edge_instance(self, client):
        rev = 1
        r = client.post("/api/docs/demo/vertices",
                        json={"instance": 0, "id": "zz", "x": 1.0, "y": 2.0, "revision": rev})
        rev = r.json()["revision"]
        r = client.post("/api/docs/demo/edges",
                        json={"instance": 0, "source": "zz", "target": "v1",
                              "weight": 3.0, "revision": rev})
        rev = r.json()["revision"]
        r = client.post("/api/docs/demo/instances", json={"timestamp": 99, "revision": rev})
        assert r.json()["instances"] == 5
        doc = client.get("/api/docs/demo").json()
        assert "zz" in doc["instances"][0]["vertices"]
        assert doc["instances"][4]["timestamp"] == 99

    def test_invalid_edge_400(self, client):
        r = client.post("/api/docs/demo/edges",
                        json={"instance": 0, "source": "v1", "target": "v1", "revision": 1})
        assert r.status_code == 400

    def test_bad_body_422_names_field(self, client):
        r = client.put("/api/docs/demo/instances/0/vertices/v1/position",
                       json={"x": "wide", "revision": 1})
        assert r.status_code == 422
        assert any("x" in str(item.get("loc")) for item in r.json()["detail"])


class TestLayoutJob:
    def test_layout_updates_all_instances_one_revision(self, client):
        before = client.get("/api/docs/demo").json()
        r = client.post("/api/docs/demo/layout",
                        json={"algorithm": "vertex-opt",
                              "config": {"window_size": 2, "iterations": 20, "seed": 1},
                              "revision": 1})
        assert r.status_code == 200
        body = r.json()
        assert body["revision"] == 2
        assert len(body["positions"]) == 4
        after = client.get("/api/docs/demo").json()
        assert after["revision"] == 2
        moved = sum(1 for i in range(4)
                    if after["instances"][i]["vertices"] != before["instances"][i]["vertices"])
        assert moved == 4

    def test_unknown_algorithm_400(self, client):
        r = client.post("/api/docs/demo/layout",
                        json={"algorithm": "magic", "config": {}, "revision": 1})
        assert r.status_code == 400

    def test_unknown_config_field_400(self, client):
        r = client.post("/api/docs/demo/layout",
                        json={"algorithm": "fr", "config": {"warp": 9}, "revision": 1})
        assert r.status_code == 400

    def test_stale_revision_409(self, client):
        client.put("/api/docs/demo/instances/0/vertices/v1/position",
                   json={"x": 1.0, "y": 1.0, "revision": 1})
        r = client.post("/api/docs/demo/layout",
                        json={"algorithm": "fr", "config": {"iterations": 5}, "revision": 1})
        assert r.status_code == 409


class TestFramesAndMetrics:
    def test_frames_shape(self, client):
        r = client.get("/api/docs/demo/frames", params={"from": 0, "steps": 6})
        assert r.status_code == 200
        body = r.json()
        assert body["steps"] == 6
        assert len(body["frames"]) == 6

    def test_frames_default_steps(self, client):
        body = client.get("/api/docs/demo/frames", params={"from": 1}).json()
        assert len(body["frames"]) == 30

    def test_frames_out_of_range_404(self, client):
        assert client.get("/api/docs/demo/frames", params={"from": 3}).status_code == 404

    def test_metrics_payload(self, client):
        body = client.get("/api/docs/demo/metrics").json()
        assert body["td_eg"] == 0.0  # generator positions all default
        assert len(body["per_graph"]) == 3
        assert body["per_vertex"]["v1"]["transitions"] == 3


class TestSave:
    def test_save_round_trips(self, client, tmp_path):
        client.put("/api/docs/demo/instances/0/vertices/v1/position",
                   json={"x": 42.0, "y": 24.0, "revision": 1})
        r = client.post("/api/docs/demo/save")
        assert r.status_code == 200
        saved = parse_egml(open(r.json()["path"], "rb").read())
        assert saved.evolving_graph[0].position("v1").x == 42.0


class TestSessionIntegrity:
    def test_viewer_style_session_leaves_valid_document(self, client):
        """Navigation, drags, adds, playback, save: the document must stay valid."""
        rev = 1
        for i in range(4):
            client.get("/api/docs/demo")  # navigate
        for step, vid in enumerate(("v1", "v5", "v9")):
            r = client.put(f"/api/docs/demo/instances/{step}/vertices/{vid}/position",
                           json={"x": 10.0 * step, "y": 5.0, "revision": rev})
            rev = r.json()["revision"]
        r = client.post("/api/docs/demo/vertices",
                        json={"instance": 1, "id": "added", "x": 3.0, "y": 4.0,
                              "revision": rev})
        rev = r.json()["revision"]
        r = client.post("/api/docs/demo/edges",
                        json={"instance": 1, "source": "added", "target": "v1",
                              "revision": rev})
        rev = r.json()["revision"]
        r = client.post("/api/docs/demo/instances", json={"revision": rev})
        rev = r.json()["revision"]
        for f in range(3):
            assert client.get("/api/docs/demo/frames",
                              params={"from": f, "steps": 30}).status_code == 200
        path = client.post("/api/docs/demo/save").json()["path"]
        doc = parse_egml(open(path, "rb").read())
        doc.evolving_graph.validate()
        assert doc.evolving_graph.p == 5
