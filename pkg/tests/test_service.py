import io
import json

import jsonschema
import pytest
from fastapi.testclient import TestClient
from PIL import Image

import fixtures
from accesslens.dataset import save_dataset
from accesslens.detector import DetectorConfig, OracleParams
from accesslens.service import schemas
from accesslens.service.app import create_app
from accesslens.service.config import ServiceConfig, load_config
from accesslens.service.storage import ScanStore
from accesslens.errors import NotFound, ValidationError


def png_bytes(width=640, height=480, color=(120, 80, 40)):
    buf = io.BytesIO()
    Image.new("RGB", (width, height), color).save(buf, format="PNG")
    return buf.getvalue()


@pytest.fixture()
def gt_file(tmp_path):
    path = tmp_path / "gt.json"
    save_dataset(fixtures.tiny_dataset(), path)
    return path


def oracle_config(tmp_path, gt_file, **kwargs) -> ServiceConfig:
    return ServiceConfig(
        storage_dir=tmp_path / "scans",
        detector=DetectorConfig(mode="oracle", path=str(gt_file), oracle=OracleParams(seed=3)),
        **kwargs,
    )


@pytest.fixture()
def client(tmp_path, gt_file):
    return TestClient(create_app(oracle_config(tmp_path, gt_file)))


def post_image(client, name="bathroom.jpg", data=None, detections=None):
    files = {"image": (name, data if data is not None else png_bytes(), "image/png")}
    if detections is not None:
        files["detections"] = (
            "detections.json",
            json.dumps(detections).encode(),
            "application/json",
        )
    return client.post("/api/scans", files=files)


def test_health(client):
    resp = client.get("/api/health")
    assert resp.status_code == 200
    jsonschema.validate(resp.json(), schemas.HEALTH_SCHEMA)


def test_taxonomy_endpoint(client):
    resp = client.get("/api/taxonomy")
    assert resp.status_code == 200
    table = resp.json()
    jsonschema.validate(table, schemas.TAXONOMY_SCHEMA)
    assert [row["id"] for row in table] == list(range(1, 23))


def test_dictionary_endpoint(client):
    resp = client.get("/api/dictionary")
    assert resp.status_code == 200
    payload = resp.json()
    jsonschema.validate(payload, schemas.DICTIONARY_SCHEMA)
    assert len(payload["designs"]) == 280
    assert all(d["source_url"] for d in payload["designs"])


def test_designs_query(client):
    resp = client.get("/api/designs", params={"object": "switch", "category": "constraint"})
    assert resp.status_code == 200
    payload = resp.json()
    jsonschema.validate(payload, schemas.DESIGNS_RESPONSE_SCHEMA)
    assert payload["designs"]
    assert all("constraint" in d["labels"] for d in payload["designs"])


def test_designs_unknown_object_is_404(client):
    resp = client.get("/api/designs", params={"object": "zeppelin"})
    assert resp.status_code == 404
    jsonschema.validate(resp.json(), schemas.ERROR_SCHEMA)
    assert resp.json()["error"]["kind"] == "unknown_object_class"


def test_designs_unknown_category_is_400(client):
    resp = client.get("/api/designs", params={"object": "switch", "category": "comfort"})
    assert resp.status_code == 400
    assert resp.json()["error"]["kind"] == "unknown_category"


def test_scan_round_trip_with_oracle(client):
    resp = post_image(client)
    assert resp.status_code == 201
    result = resp.json()
    jsonschema.validate(result, schemas.SCAN_RESULT_SCHEMA)
    # bathroom.jpg carries a switch_toggle_multi and an electric_outlet box
    names = [d["class_name"] for d in result["detections"]]
    assert sorted(names) == ["electric_outlet", "switch_toggle_multi"]
    assert len(result["recommendations"]) == 2
    for rec in result["recommendations"]:
        det = result["detections"][rec["detection_index"]]
        assert det["category_id"] != 22
        for category, designs in rec["groups"].items():
            for design in designs:
                assert any(
                    label == category or label.startswith(category + "-")
                    for label in design["labels"]
                )
    switch_rec = next(
        rec
        for rec in result["recommendations"]
        if result["detections"][rec["detection_index"]]["class_name"]
        == "switch_toggle_multi"
    )
    assert all(switch_rec["groups"][cat] for cat in ("actuation", "indication", "constraint"))

    stored = client.get(f"/api/scans/{result['scan_id']}")
    assert stored.status_code == 200
    assert stored.content == resp.content


def test_scan_persists_across_restart(tmp_path, gt_file):
    config = oracle_config(tmp_path, gt_file)
    first = TestClient(create_app(config))
    resp = post_image(first)
    scan_id = resp.json()["scan_id"]

    second = TestClient(create_app(config))  # fresh process state, same storage
    again = second.get(f"/api/scans/{scan_id}")
    assert again.status_code == 200
    assert again.content == first.get(f"/api/scans/{scan_id}").content
    assert again.content == resp.content


def test_scan_deterministic_apart_from_id_and_timestamp(client):
    a = post_image(client).json()
    b = post_image(client).json()
    for volatile in ("scan_id", "created_at"):
        a.pop(volatile)
        b.pop(volatile)
    assert a == b


def test_scan_with_supplied_detections(client):
    detections = [
        {"image_id": 0, "category_id": 20, "bbox": [10, 10, 50, 50], "score": 0.95},
        {"image_id": 0, "category_id": 22, "bbox": [80, 10, 20, 20], "score": 0.9},
        {"image_id": 0, "category_id": 3, "bbox": [200, 200, 30, 30], "score": 0.2},
    ]
    resp = post_image(client, name="anything.png", detections=detections)
    assert resp.status_code == 201
    result = resp.json()
    jsonschema.validate(result, schemas.SCAN_RESULT_SCHEMA)
    # score 0.2 falls below the default threshold; class 22 is skipped
    assert [d["category_id"] for d in result["detections"]] == [20, 22]
    assert result["skipped_unidentifiable"] == 1
    assert len(result["recommendations"]) == 1


def test_scan_with_no_detections_above_threshold(client):
    detections = [
        {"image_id": 0, "category_id": 20, "bbox": [10, 10, 50, 50], "score": 0.1}
    ]
    result = post_image(client, detections=detections).json()
    assert result["detections"] == []
    assert result["recommendations"] == []


def test_scan_bad_image_rejected(client):
    resp = post_image(client, name="junk.bin", data=b"this is not an image")
    assert resp.status_code == 400
    assert resp.json()["error"]["kind"] == "bad_image"


def test_scan_unknown_image_in_oracle_mode(client):
    resp = post_image(client, name="not-in-dataset.png")
    assert resp.status_code == 422
    assert resp.json()["error"]["kind"] == "missing_precomputed"


def test_scan_payload_too_large(tmp_path, gt_file):
    config = oracle_config(tmp_path, gt_file, max_upload_bytes=1000)
    client = TestClient(create_app(config))
    resp = post_image(client, data=png_bytes(2000, 2000))
    assert resp.status_code == 413
    assert resp.json()["error"]["kind"] == "payload_too_large"


def test_scan_adapter_unavailable_persists_nothing(tmp_path):
    config = ServiceConfig(
        storage_dir=tmp_path / "scans",
        detector=DetectorConfig(mode="remote", endpoint="http://127.0.0.1:1/detect"),
    )
    client = TestClient(create_app(config))
    resp = post_image(client, name="room.png")
    assert resp.status_code == 502
    assert resp.json()["error"]["kind"] == "adapter_unavailable"
    assert ScanStore(config.storage_dir).list_ids() == []


def test_get_unknown_scan_is_404(client):
    resp = client.get("/api/scans/doesnotexist")
    assert resp.status_code == 404
    assert resp.json()["error"]["kind"] == "not_found"


def test_invalid_detections_part_is_400(client):
    files = {
        "image": ("bathroom.jpg", png_bytes(), "image/png"),
        "detections": ("d.json", b"{broken", "application/json"),
    }
    resp = client.post("/api/scans", files=files)
    assert resp.status_code == 400
    assert resp.json()["error"]["kind"] == "invalid_detections"


def test_store_round_trip(tmp_path):
    store = ScanStore(tmp_path / "s")
    store.save("abc123", b'{"x": 1}', "photo.png", b"bytes")
    assert store.load("abc123") == b'{"x": 1}'
    assert store.list_ids() == ["abc123"]
    with pytest.raises(NotFound):
        store.load("missing")
    with pytest.raises(NotFound):
        store.load("../../etc/passwd")


def test_config_env_overrides(tmp_path, gt_file):
    cfg_file = tmp_path / "config.json"
    cfg_file.write_text(json.dumps({"port": 9000, "detector": {"mode": "stub"}}))
    env = {"ACCESSLENS_PORT": "9100", "ACCESSLENS_DETECTOR_MODE": "oracle",
           "ACCESSLENS_DETECTOR_PATH": str(gt_file)}
    config = load_config(cfg_file, env=env)
    assert config.port == 9100
    assert config.detector.mode == "oracle"
    assert config.detector.path == str(gt_file)
    # keyword overrides beat env
    config = load_config(cfg_file, env=env, port=9200)
    assert config.port == 9200


def test_config_validates_paths(tmp_path):
    config = ServiceConfig(
        storage_dir=tmp_path,
        detector=DetectorConfig(mode="file", path=str(tmp_path / "nope.json")),
    )
    with pytest.raises(ValidationError):
        config.validate_paths()


def test_webapp_assets_served_when_configured(tmp_path, gt_file):
    webapp = tmp_path / "webapp"
    webapp.mkdir()
    (webapp / "index.html").write_text("<!doctype html><title>lens</title>")
    config = oracle_config(tmp_path, gt_file, webapp_dir=webapp)
    client = TestClient(create_app(config))
    page = client.get("/")
    assert page.status_code == 200
    assert "lens" in page.text
    # API routes still win over the static mount
    assert client.get("/api/health").status_code == 200
