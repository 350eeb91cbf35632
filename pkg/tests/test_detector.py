import http.server
import json
import threading

import pytest

from accesslens import detector as dt
from accesslens import evaluation as ev
from accesslens.errors import AdapterUnavailable, MissingPrecomputed, ParseError, ValidationError


def test_detection_invariants():
    with pytest.raises(ValidationError):
        dt.Detection(1, 10, (0, 0, 0, 10), 0.5)
    with pytest.raises(ValidationError):
        dt.Detection(1, 10, (0, 0, 10, 10), 1.5)
    with pytest.raises(Exception):
        dt.Detection(1, 99, (0, 0, 10, 10), 0.5)


def test_oracle_identity_mode(tiny_dataset):
    oracle = dt.OracleDetector(tiny_dataset, dt.OracleParams())
    dets = oracle.detect(dt.ImageRef(image_id=1))
    gt = tiny_dataset.annotations_by_image[1]
    assert len(dets) == len(gt) == 2
    for d, g in zip(dets, gt):
        assert d.bbox == g.bbox
        assert d.category_id == g.category_id
        assert d.score == 1.0


def test_oracle_drop_everything(tiny_dataset):
    oracle = dt.OracleDetector(tiny_dataset, dt.OracleParams(drop_rate=1.0))
    assert oracle.detect(dt.ImageRef(image_id=1)) == []


def test_oracle_deterministic_and_order_independent(tiny_dataset):
    params = dt.OracleParams(drop_rate=0.3, jitter_pixels=4.0, score_noise=0.2, seed=5)
    oracle = dt.OracleDetector(tiny_dataset, params)
    first = [oracle.detect(dt.ImageRef(image_id=i)) for i in (1, 2)]
    second = [oracle.detect(dt.ImageRef(image_id=i)) for i in (2, 1)][::-1]
    assert first == second
    assert first == [oracle.detect(dt.ImageRef(image_id=i)) for i in (1, 2)]


def test_oracle_resolves_by_file_name(tiny_dataset):
    oracle = dt.OracleDetector(tiny_dataset)
    by_name = oracle.detect(dt.ImageRef(file_name="kitchen.jpg"))
    by_id = oracle.detect(dt.ImageRef(image_id=2))
    assert by_name == by_id
    with pytest.raises(MissingPrecomputed):
        oracle.detect(dt.ImageRef(file_name="unknown.jpg"))


def test_oracle_then_evaluate_is_perfect(tiny_dataset):
    oracle = dt.OracleDetector(tiny_dataset)
    dets = []
    for img in tiny_dataset.images:
        dets.extend(oracle.detect(dt.ImageRef(image_id=img.image_id)))
    report = ev.evaluate(tiny_dataset, dets)
    present = [cid for cid, ap in report.per_class_ap.items() if ap is not None]
    assert present and all(report.per_class_ap[c] == 1.0 for c in present)
    assert report.map_all == 1.0


def test_file_adapter_passthrough(tmp_path):
    entries = [
        {"image_id": 7, "category_id": 10, "bbox": [1, 2, 3, 4], "score": 0.5},
        {"image_id": 7, "category_id": 3, "bbox": [5, 5, 5, 5], "score": 0.25},
        {"image_id": 8, "category_id": 17, "bbox": [0, 0, 2, 2], "score": 0.75},
    ]
    path = tmp_path / "dets.json"
    path.write_text(json.dumps(entries))
    adapter = dt.FileDetector(path)
    got = adapter.detect(dt.ImageRef(image_id=7))
    assert [d.to_dict() for d in got] == entries[:2]
    with pytest.raises(MissingPrecomputed):
        adapter.detect(dt.ImageRef(image_id=99))


def test_file_adapter_rejects_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"not": "an array"}))
    with pytest.raises(ParseError):
        dt.FileDetector(path)


class _CannedHandler(http.server.BaseHTTPRequestHandler):
    payload: list = []

    def do_POST(self):
        self.rfile.read(int(self.headers.get("Content-Length", 0)))
        body = json.dumps(self.payload).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture()
def model_server():
    server = http.server.HTTPServer(("127.0.0.1", 0), _CannedHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}/detect"
    server.shutdown()


def test_remote_adapter_round_trip(model_server):
    _CannedHandler.payload = [
        {"image_id": 0, "category_id": 20, "bbox": [10, 10, 30, 30], "score": 0.9}
    ]
    adapter = dt.RemoteDetector(model_server)
    got = adapter.detect(dt.ImageRef(image_id=5, data=b"fake-image-bytes"))
    assert len(got) == 1
    assert got[0].image_id == 5  # rebound to the request image
    assert got[0].category_id == 20


def test_remote_adapter_unreachable():
    adapter = dt.RemoteDetector("http://127.0.0.1:1/detect", timeout=0.5)
    with pytest.raises(AdapterUnavailable):
        adapter.detect(dt.ImageRef(image_id=1, data=b"x"))


def test_postprocess_suppresses_same_class_duplicates():
    a = dt.Detection(1, 10, (0, 0, 10, 10), 0.9)
    b = dt.Detection(1, 10, (0, 0, 10, 10), 0.8)
    kept = dt.postprocess([a, b], score_threshold=0.0, nms_iou=0.5)
    assert kept == [a]


def test_postprocess_keeps_other_classes():
    a = dt.Detection(1, 10, (0, 0, 10, 10), 0.9)
    b = dt.Detection(1, 11, (0, 0, 10, 10), 0.8)
    kept = dt.postprocess([a, b], score_threshold=0.0, nms_iou=0.5)
    assert kept == [a, b]


def test_postprocess_threshold():
    a = dt.Detection(1, 10, (0, 0, 10, 10), 0.4)
    b = dt.Detection(1, 10, (40, 40, 10, 10), 0.6)
    assert dt.postprocess([a, b], score_threshold=0.5, nms_iou=None) == [b]


def test_postprocess_idempotent_and_sorted():
    dets = [
        dt.Detection(1, 10, (0, 0, 10, 10), 0.3),
        dt.Detection(1, 10, (2, 0, 10, 10), 0.9),
        dt.Detection(2, 3, (0, 0, 5, 5), 0.6),
        dt.Detection(1, 10, (100, 100, 10, 10), 0.5),
    ]
    once = dt.postprocess(dets, score_threshold=0.2, nms_iou=0.5)
    twice = dt.postprocess(once, score_threshold=0.2, nms_iou=0.5)
    assert once == twice
    assert [d.score for d in once] == sorted((d.score for d in once), reverse=True)


def test_make_detector_validates_config(tiny_dataset):
    with pytest.raises(ValidationError):
        dt.DetectorConfig(mode="banana")
    with pytest.raises(ValidationError):
        dt.make_detector(dt.DetectorConfig(mode="file"))
    with pytest.raises(ValidationError):
        dt.make_detector(dt.DetectorConfig(mode="oracle"))
    assert isinstance(dt.make_detector(dt.DetectorConfig(mode="stub")), dt.StubDetector)
    oracle = dt.make_detector(dt.DetectorConfig(mode="oracle"), dataset=tiny_dataset)
    assert isinstance(oracle, dt.OracleDetector)
