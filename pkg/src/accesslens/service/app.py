"""Wire API: scan photos, browse the taxonomy and dictionary.

Endpoints:
    POST /api/scans                multipart image (+ optional detections JSON)
    GET  /api/scans/{scan_id}      stored result, byte-identical across restarts
    GET  /api/taxonomy             the 22-class table in id order
    GET  /api/dictionary           dictionary snapshot
    GET  /api/designs              ?object=...&category=... design queries
    GET  /api/health

Error statuses: 400 bad_image/unknown_category/invalid_detections,
404 not_found/unknown_object_class, 413 payload_too_large,
422 missing_precomputed, 502 adapter_unavailable.
"""

from __future__ import annotations

import io
import json
import uuid
from datetime import datetime, timezone

from fastapi import FastAPI, File, Response, UploadFile
from fastapi.responses import JSONResponse
from PIL import Image, UnidentifiedImageError

from .. import __version__, taxonomy
from ..catalog import Dictionary, load_dictionary
from ..detector import Detection, ImageRef, make_detector, parse_detections, postprocess
from ..errors import (
    AccessLensError,
    AdapterUnavailable,
    BadImage,
    MissingPrecomputed,
    NotFound,
    ParseError,
    PayloadTooLarge,
    UnknownCategory,
    UnknownObjectClass,
    ValidationError,
)
from ..dataset import load_dataset
from ..recommender import load_mapping, query_designs, recommend_scene
from .config import ServiceConfig
from .storage import ScanStore

_STATUS_BY_KIND = {
    "bad_image": 400,
    "invalid_detections": 400,
    "unknown_category": 400,
    "not_found": 404,
    "unknown_object_class": 404,
    "payload_too_large": 413,
    "missing_precomputed": 422,
    "adapter_unavailable": 502,
}

_KIND_BY_ERROR = {
    BadImage: "bad_image",
    NotFound: "not_found",
    UnknownObjectClass: "unknown_object_class",
    UnknownCategory: "unknown_category",
    PayloadTooLarge: "payload_too_large",
    MissingPrecomputed: "missing_precomputed",
    AdapterUnavailable: "adapter_unavailable",
    ParseError: "invalid_detections",
    ValidationError: "invalid_detections",
}


def _error_response(exc: AccessLensError) -> JSONResponse:
    kind = _KIND_BY_ERROR.get(type(exc), "invalid_detections")
    return JSONResponse(
        status_code=_STATUS_BY_KIND[kind],
        content={"error": {"kind": kind, "message": str(exc)}},
    )


def _detection_wire(det: Detection) -> dict:
    return {
        "image_id": det.image_id,
        "category_id": det.category_id,
        "class_name": det.ic.name,
        "bbox": list(det.bbox),
        "score": det.score,
    }


def _design_wire(design) -> dict:
    return design.to_dict()


def _decode_image(data: bytes) -> tuple[int, int] | None:
    try:
        with Image.open(io.BytesIO(data)) as img:
            return img.size
    except (UnidentifiedImageError, OSError):
        return None


def create_app(config: ServiceConfig) -> FastAPI:
    config.validate_paths()
    dictionary: Dictionary = load_dictionary(config.dictionary_path)
    mapping = load_mapping(config.mapping_path)
    oracle_dataset = (
        load_dataset(config.detector.path) if config.detector.mode == "oracle" else None
    )
    detector = make_detector(config.detector, dataset=oracle_dataset)
    store = ScanStore(config.storage_dir)

    app = FastAPI(title="accesslens", version=__version__)

    @app.exception_handler(AccessLensError)
    async def _handle(request, exc: AccessLensError):
        return _error_response(exc)

    @app.get("/api/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/api/taxonomy")
    def get_taxonomy():
        return taxonomy.taxonomy_table()

    @app.get("/api/dictionary")
    def get_dictionary():
        return {
            "version": dictionary.version,
            "object_classes": [
                {"name": o.name, "aliases": list(o.aliases)}
                for o in dictionary.object_classes
            ],
            "designs": [_design_wire(d) for d in dictionary.designs],
        }

    @app.get("/api/designs")
    def get_designs(object: str, category: str | None = None):
        designs = query_designs(dictionary, object, category)
        return {
            "object": dictionary.resolve_object(object),
            "category": category,
            "designs": [_design_wire(d) for d in designs],
        }

    @app.get("/api/scans/{scan_id}")
    def get_scan(scan_id: str):
        return Response(content=store.load(scan_id), media_type="application/json")

    @app.post("/api/scans", status_code=201)
    async def post_scan(
        image: UploadFile = File(...),
        detections: UploadFile | None = File(None),
    ):
        data = await image.read()
        if len(data) > config.max_upload_bytes:
            raise PayloadTooLarge(
                f"upload of {len(data)} bytes exceeds limit {config.max_upload_bytes}"
            )
        supplied: list[Detection] | None = None
        if detections is not None:
            try:
                supplied = parse_detections(json.loads(await detections.read()))
            except json.JSONDecodeError as exc:
                raise ParseError(f"detections part is not JSON: {exc}") from exc

        file_name = image.filename or "upload"
        size = _decode_image(data)
        if size is None and supplied is None:
            raise BadImage("upload is not a decodable raster image")

        raw = supplied if supplied is not None else detector.detect(
            ImageRef(file_name=file_name, data=data)
        )
        final = postprocess(
            raw, config.detector.score_threshold, config.detector.nms_iou
        )
        scene = recommend_scene(final, dictionary, mapping)

        rec_wire = []
        rec_iter = iter(scene.recommendations)
        for index, det in enumerate(final):
            if not det.ic.evaluable:
                continue
            rec = next(rec_iter)
            rec_wire.append(
                {
                    "detection_index": index,
                    "groups": {
                        cat: [_design_wire(d) for d in rec.groups[cat]]
                        for cat in ("actuation", "indication", "constraint")
                    },
                }
            )

        result = {
            "scan_id": uuid.uuid4().hex,
            "image": {
                "file_name": file_name,
                "width": size[0] if size else None,
                "height": size[1] if size else None,
            },
            "detections": [_detection_wire(d) for d in final],
            "recommendations": rec_wire,
            "skipped_unidentifiable": scene.skipped_unidentifiable,
            "created_at": datetime.now(timezone.utc).isoformat(),
        }
        body = json.dumps(result, indent=1).encode()
        store.save(result["scan_id"], body, file_name, data)
        return Response(content=body, media_type="application/json", status_code=201)

    if config.webapp_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.webapp_dir, html=True), name="webapp")

    return app
