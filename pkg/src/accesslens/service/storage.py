"""Directory-per-scan persistence: a JSON result plus the original upload."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from ..errors import NotFound

RESULT_NAME = "result.json"


class ScanStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _dir(self, scan_id: str) -> Path:
        if not scan_id or "/" in scan_id or scan_id.startswith("."):
            raise NotFound(f"no scan {scan_id!r}")
        return self.root / scan_id

    def save(self, scan_id: str, result_json: bytes, image_name: str, image_bytes: bytes):
        """Write the scan atomically: stage in a temp dir, then rename."""
        staging = Path(tempfile.mkdtemp(prefix=f".{scan_id}-", dir=self.root))
        try:
            (staging / RESULT_NAME).write_bytes(result_json)
            safe_name = Path(image_name).name or "image"
            (staging / f"upload_{safe_name}").write_bytes(image_bytes)
            os.rename(staging, self._dir(scan_id))
        except OSError:
            for child in staging.glob("*"):
                child.unlink(missing_ok=True)
            staging.rmdir()
            raise

    def load(self, scan_id: str) -> bytes:
        path = self._dir(scan_id) / RESULT_NAME
        if not path.is_file():
            raise NotFound(f"no scan with id {scan_id!r}")
        return path.read_bytes()

    def list_ids(self) -> list[str]:
        return sorted(
            p.name
            for p in self.root.iterdir()
            if p.is_dir() and not p.name.startswith(".") and (p / RESULT_NAME).is_file()
        )
