"""Detection interface and adapters.

Three adapters share one contract: a remote model server (COCO-results JSON
over HTTP), a precomputed-detections file, and a ground-truth-perturbing
oracle used to exercise the pipeline end to end. A stub adapter that detects
nothing rounds out the set for UI development. The neural detector itself is
deliberately out of process; anything that speaks the wire format plugs in.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

import requests

from . import taxonomy
from .dataset import Dataset
from .errors import AdapterUnavailable, MissingPrecomputed, ParseError, ValidationError

MODES = ("stub", "file", "remote", "oracle")


@dataclass(frozen=True)
class Detection:
    image_id: int
    category_id: int
    bbox: tuple[float, float, float, float]
    score: float

    def __post_init__(self):
        x, y, w, h = self.bbox
        if w <= 0 or h <= 0:
            raise ValidationError(f"detection box must have positive size, got w={w} h={h}")
        if not 0.0 <= self.score <= 1.0:
            raise ValidationError(f"detection score must be in [0, 1], got {self.score}")
        taxonomy.ic_by_id(self.category_id)

    @property
    def ic(self) -> taxonomy.InaccessibilityClass:
        return taxonomy.ic_by_id(self.category_id)

    def to_dict(self) -> dict:
        return {
            "image_id": self.image_id,
            "category_id": self.category_id,
            "bbox": list(self.bbox),
            "score": self.score,
        }


@dataclass(frozen=True)
class OracleParams:
    drop_rate: float = 0.0
    jitter_pixels: float = 0.0
    score_noise: float = 0.0
    seed: int = 0


@dataclass(frozen=True)
class DetectorConfig:
    mode: str = "stub"
    endpoint: str | None = None
    path: str | None = None
    score_threshold: float = 0.5
    nms_iou: float | None = 0.5
    oracle: OracleParams = field(default_factory=OracleParams)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"detector mode must be one of {MODES}, got {self.mode!r}")
        if not 0.0 <= self.score_threshold <= 1.0:
            raise ValidationError("score_threshold must be in [0, 1]")
        if self.nms_iou is not None and not 0.0 <= self.nms_iou <= 1.0:
            raise ValidationError("nms_iou must be in [0, 1] or None")


@dataclass(frozen=True)
class ImageRef:
    """What an adapter needs to identify one image.

    The oracle and file adapters resolve by id or file name; the remote
    adapter ships the raw bytes.
    """

    image_id: int | None = None
    file_name: str | None = None
    data: bytes | None = None


def parse_detections(raw) -> list[Detection]:
    """Parse the COCO-results array format into Detection records."""
    if not isinstance(raw, list):
        raise ParseError("detections payload must be a JSON array")
    out = []
    for i, entry in enumerate(raw):
        try:
            bbox = entry["bbox"]
            out.append(
                Detection(
                    image_id=int(entry["image_id"]),
                    category_id=int(entry["category_id"]),
                    bbox=tuple(float(v) for v in bbox),
                    score=float(entry["score"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"detection entry {i}: {exc}") from exc
    return out


def load_detections(path: str | Path) -> list[Detection]:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot parse {path}: {exc}") from exc
    return parse_detections(raw)


def save_detections(detections: list[Detection], path: str | Path):
    Path(path).write_text(json.dumps([d.to_dict() for d in detections], indent=1))


class StubDetector:
    """Detects nothing; useful when detections arrive with the request."""

    def detect(self, ref: ImageRef) -> list[Detection]:
        return []


class FileDetector:
    """Serves detections precomputed elsewhere and stored as a results file.

    Entries follow the COCO results format; an optional ``file_name`` field
    per entry lets uploads be matched by name when no image id exists.
    """

    def __init__(self, path: str | Path):
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot parse {path}: {exc}") from exc
        detections = parse_detections(raw)
        self._by_image: dict[int, list[Detection]] = {}
        self._by_name: dict[str, list[Detection]] = {}
        for entry, det in zip(raw, detections):
            self._by_image.setdefault(det.image_id, []).append(det)
            name = entry.get("file_name")
            if name:
                self._by_name.setdefault(str(name), []).append(det)

    def detect(self, ref: ImageRef) -> list[Detection]:
        if ref.image_id is not None and ref.image_id in self._by_image:
            return list(self._by_image[ref.image_id])
        if ref.file_name is not None and ref.file_name in self._by_name:
            return list(self._by_name[ref.file_name])
        raise MissingPrecomputed(
            f"no precomputed detections for image "
            f"{ref.file_name or ref.image_id!r}"
        )


class RemoteDetector:
    """POSTs image bytes to a model server and parses the results array."""

    def __init__(self, endpoint: str, timeout: float = 30.0):
        self.endpoint = endpoint
        self.timeout = timeout

    def detect(self, ref: ImageRef) -> list[Detection]:
        if ref.data is None:
            raise ValidationError("remote detection requires image bytes")
        try:
            resp = requests.post(
                self.endpoint,
                data=ref.data,
                headers={"Content-Type": "application/octet-stream"},
                timeout=self.timeout,
            )
            resp.raise_for_status()
            payload = resp.json()
        except (requests.RequestException, json.JSONDecodeError) as exc:
            raise AdapterUnavailable(f"model server at {self.endpoint}: {exc}") from exc
        detections = parse_detections(payload)
        if ref.image_id is not None:
            detections = [
                Detection(ref.image_id, d.category_id, d.bbox, d.score)
                for d in detections
            ]
        return detections


class OracleDetector:
    """Emits (optionally perturbed) ground truth for a known dataset.

    Randomness is derived from (seed, image_id) so repeated and concurrent
    calls are reproducible.
    """

    def __init__(self, dataset: Dataset, params: OracleParams = OracleParams()):
        self.dataset = dataset
        self.params = params
        self._by_name = {img.file_name: img for img in dataset.images}
        self._by_id = {img.image_id: img for img in dataset.images}

    def _resolve(self, ref: ImageRef):
        if ref.image_id is not None and ref.image_id in self._by_id:
            return self._by_id[ref.image_id]
        if ref.file_name is not None and ref.file_name in self._by_name:
            return self._by_name[ref.file_name]
        raise MissingPrecomputed(
            f"image {ref.file_name or ref.image_id!r} is not in the oracle dataset"
        )

    def detect(self, ref: ImageRef) -> list[Detection]:
        img = self._resolve(ref)
        p = self.params
        rng = random.Random(f"{p.seed}:{img.image_id}")
        out = []
        for ann in self.dataset.annotations_by_image.get(img.image_id, ()):
            if rng.random() < p.drop_rate:
                continue
            x, y, w, h = ann.bbox
            if p.jitter_pixels > 0:
                j = p.jitter_pixels
                x = max(0.0, x + rng.uniform(-j, j))
                y = max(0.0, y + rng.uniform(-j, j))
                w = max(1.0, w + rng.uniform(-j, j))
                h = max(1.0, h + rng.uniform(-j, j))
            score = 1.0
            if p.score_noise > 0:
                score = max(0.0, min(1.0, 1.0 - rng.uniform(0.0, p.score_noise)))
            out.append(Detection(img.image_id, ann.category_id, (x, y, w, h), score))
        return out


def make_detector(config: DetectorConfig, dataset: Dataset | None = None):
    if config.mode == "stub":
        return StubDetector()
    if config.mode == "file":
        if config.path is None:
            raise ValidationError("file mode requires a detections path")
        return FileDetector(config.path)
    if config.mode == "remote":
        if config.endpoint is None:
            raise ValidationError("remote mode requires an endpoint")
        return RemoteDetector(config.endpoint)
    if dataset is None:
        raise ValidationError("oracle mode requires a ground-truth dataset")
    return OracleDetector(dataset, config.oracle)


def _box_iou(a, b) -> float:
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    ix = max(0.0, min(ax + aw, bx + bw) - max(ax, bx))
    iy = max(0.0, min(ay + ah, by + bh) - max(ay, by))
    inter = ix * iy
    if inter <= 0:
        return 0.0
    return inter / (aw * ah + bw * bh - inter)


def postprocess(
    detections: list[Detection],
    score_threshold: float = 0.5,
    nms_iou: float | None = 0.5,
) -> list[Detection]:
    """Confidence filter plus per-(image, class) greedy duplicate suppression.

    Keeps scores >= score_threshold; within each (image, class) group, of any
    two boxes with IoU > nms_iou only the higher-scoring one survives. Output
    is sorted by score descending. Idempotent.
    """
    kept = [d for d in detections if d.score >= score_threshold]
    kept.sort(key=lambda d: -d.score)
    if nms_iou is None:
        return kept
    survivors: list[Detection] = []
    taken: dict[tuple[int, int], list[Detection]] = {}
    for det in kept:
        group = taken.setdefault((det.image_id, det.category_id), [])
        if all(_box_iou(det.bbox, other.bbox) <= nms_iou for other in group):
            group.append(det)
            survivors.append(det)
    return survivors
