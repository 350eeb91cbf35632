"""Service configuration: file-based with environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..catalog import default_dictionary_path
from ..detector import DetectorConfig, OracleParams
from ..errors import ParseError, ValidationError
from ..recommender import default_mapping_path

ENV_PREFIX = "ACCESSLENS_"


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    storage_dir: Path = Path("scans")
    dictionary_path: Path = field(default_factory=default_dictionary_path)
    mapping_path: Path = field(default_factory=default_mapping_path)
    max_upload_bytes: int = 16 * 1024 * 1024
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    # optional directory of built web UI assets to serve at /
    webapp_dir: Path | None = None

    def validate_paths(self):
        """Referenced files must be resolvable before the service starts."""
        for label, path in (
            ("dictionary", self.dictionary_path),
            ("mapping", self.mapping_path),
        ):
            if not Path(path).is_file():
                raise ValidationError(f"{label} file not found: {path}")
        if self.webapp_dir is not None and not Path(self.webapp_dir).is_dir():
            raise ValidationError(f"webapp directory not found: {self.webapp_dir}")
        if self.detector.mode in ("file", "oracle"):
            if not self.detector.path or not Path(self.detector.path).is_file():
                raise ValidationError(
                    f"{self.detector.mode} detector needs an existing path, "
                    f"got {self.detector.path!r}"
                )
        if self.detector.mode == "remote" and not self.detector.endpoint:
            raise ValidationError("remote detector needs an endpoint")


def _detector_from_dict(raw: dict) -> DetectorConfig:
    oracle_raw = raw.get("oracle", {})
    return DetectorConfig(
        mode=raw.get("mode", "stub"),
        endpoint=raw.get("endpoint"),
        path=raw.get("path"),
        score_threshold=float(raw.get("score_threshold", 0.5)),
        nms_iou=None if raw.get("nms_iou") is None else float(raw["nms_iou"]),
        oracle=OracleParams(
            drop_rate=float(oracle_raw.get("drop_rate", 0.0)),
            jitter_pixels=float(oracle_raw.get("jitter_pixels", 0.0)),
            score_noise=float(oracle_raw.get("score_noise", 0.0)),
            seed=int(oracle_raw.get("seed", 0)),
        ),
    )


def load_config(
    path: str | Path | None = None,
    env: dict[str, str] | None = None,
    **overrides,
) -> ServiceConfig:
    """Assemble config from (lowest to highest precedence) defaults, the
    config file, ACCESSLENS_* environment variables, and keyword overrides."""
    env = dict(os.environ if env is None else env)
    raw: dict = {}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot parse config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ParseError(f"{path}: config must be a JSON object")

    def pick(key: str, default, cast):
        env_key = ENV_PREFIX + key.upper()
        if key in overrides and overrides[key] is not None:
            return overrides[key]
        if env_key in env:
            return cast(env[env_key])
        if key in raw and raw[key] is not None:
            return raw[key]
        return default

    detector_raw = dict(raw.get("detector", {}))
    for field_name, cast in (
        ("mode", str),
        ("endpoint", str),
        ("path", str),
        ("score_threshold", float),
        ("nms_iou", float),
    ):
        env_key = f"{ENV_PREFIX}DETECTOR_{field_name.upper()}"
        if env_key in env:
            detector_raw[field_name] = cast(env[env_key])
        override_key = f"detector_{field_name}"
        if overrides.get(override_key) is not None:
            detector_raw[field_name] = overrides[override_key]

    defaults = ServiceConfig()
    webapp_dir = pick("webapp_dir", None, str)
    return ServiceConfig(
        host=pick("host", defaults.host, str),
        port=int(pick("port", defaults.port, int)),
        storage_dir=Path(pick("storage_dir", defaults.storage_dir, str)),
        dictionary_path=Path(pick("dictionary_path", defaults.dictionary_path, str)),
        mapping_path=Path(pick("mapping_path", defaults.mapping_path, str)),
        max_upload_bytes=int(pick("max_upload_bytes", defaults.max_upload_bytes, int)),
        detector=_detector_from_dict(detector_raw),
        webapp_dir=Path(webapp_dir) if webapp_dir else None,
    )
