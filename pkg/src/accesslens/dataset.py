"""Load, validate, summarize, and split annotated indoor-scene datasets.

The on-disk format is COCO-style JSON with top-level ``images``,
``annotations``, and ``categories``; category ids must equal the taxonomy ids
1..22 and boxes are ``[x, y, w, h]`` floats in pixels with a top-left origin.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import taxonomy
from .errors import EmptyDataset, ParseError, ValidationError


@dataclass(frozen=True)
class AnnotatedImage:
    image_id: int
    file_name: str
    width: int
    height: int
    scene: str | None = None


@dataclass(frozen=True)
class GroundTruthAnnotation:
    annotation_id: int
    image_id: int
    category_id: int
    bbox: tuple[float, float, float, float]

    @property
    def ic(self) -> taxonomy.InaccessibilityClass:
        return taxonomy.ic_by_id(self.category_id)


@dataclass(frozen=True)
class DatasetStats:
    per_class_counts: dict[int, int]
    total_objects: int
    total_images: int

    def count_for(self, name: str) -> int:
        return self.per_class_counts.get(taxonomy.parse_ic(name).id, 0)


@dataclass(frozen=True)
class Dataset:
    images: tuple[AnnotatedImage, ...]
    annotations: tuple[GroundTruthAnnotation, ...]
    annotations_by_image: dict[int, tuple[GroundTruthAnnotation, ...]] = field(
        repr=False, compare=False, default_factory=dict
    )

    def stats(self) -> DatasetStats:
        counts = {ic.id: 0 for ic in taxonomy.INACCESSIBILITY_CLASSES}
        for ann in self.annotations:
            counts[ann.category_id] += 1
        return DatasetStats(
            per_class_counts=counts,
            total_objects=len(self.annotations),
            total_images=len(self.images),
        )

    def image_by_id(self, image_id: int) -> AnnotatedImage | None:
        for img in self.images:
            if img.image_id == image_id:
                return img
        return None


def _index_annotations(
    annotations: tuple[GroundTruthAnnotation, ...],
) -> dict[int, tuple[GroundTruthAnnotation, ...]]:
    grouped: dict[int, list[GroundTruthAnnotation]] = {}
    for ann in annotations:
        grouped.setdefault(ann.image_id, []).append(ann)
    return {k: tuple(v) for k, v in grouped.items()}


def make_dataset(
    images: list[AnnotatedImage], annotations: list[GroundTruthAnnotation]
) -> Dataset:
    """Assemble and validate a dataset from already-parsed records."""
    errors = _validate(images, annotations)
    if errors:
        raise ValidationError(
            f"{len(errors)} validation error(s); first: {errors[0]}", diagnostics=errors
        )
    annotations_sorted = tuple(sorted(annotations, key=lambda a: a.annotation_id))
    return Dataset(
        images=tuple(sorted(images, key=lambda i: i.image_id)),
        annotations=annotations_sorted,
        annotations_by_image=_index_annotations(annotations_sorted),
    )


def _validate(
    images: list[AnnotatedImage], annotations: list[GroundTruthAnnotation]
) -> list[str]:
    errors = []
    by_id: dict[int, AnnotatedImage] = {}
    for img in images:
        if img.image_id in by_id:
            errors.append(f"image {img.image_id}: duplicate image id")
        by_id[img.image_id] = img
        if img.width <= 0 or img.height <= 0:
            errors.append(
                f"image {img.image_id}: non-positive size {img.width}x{img.height}"
            )
    seen_ann = set()
    for ann in annotations:
        ref = f"annotation {ann.annotation_id}"
        if ann.annotation_id in seen_ann:
            errors.append(f"{ref}: duplicate annotation id")
        seen_ann.add(ann.annotation_id)
        if ann.category_id not in {ic.id for ic in taxonomy.INACCESSIBILITY_CLASSES}:
            errors.append(f"{ref}: unknown category id {ann.category_id}")
        img = by_id.get(ann.image_id)
        if img is None:
            errors.append(f"{ref}: dangling image id {ann.image_id}")
            continue
        x, y, w, h = ann.bbox
        if w <= 0 or h <= 0:
            errors.append(f"{ref}: degenerate box w={w} h={h}")
        if x < 0 or y < 0:
            errors.append(f"{ref}: negative box origin ({x}, {y})")
        if x + w > img.width or y + h > img.height:
            errors.append(
                f"{ref}: box [{x}, {y}, {w}, {h}] exceeds image "
                f"{img.width}x{img.height}"
            )
    return errors


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing required field {key!r}")
    return obj[key]


def load_dataset(path: str | Path) -> Dataset:
    """Parse and validate an annotation file; rejects invalid files atomically."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: top level must be an object")
    for key in ("images", "annotations", "categories"):
        if not isinstance(raw.get(key), list):
            raise ParseError(f"{path}: missing or non-array {key!r}")

    taxonomy_ids = {ic.id: ic.name for ic in taxonomy.INACCESSIBILITY_CLASSES}
    for cat in raw["categories"]:
        cid = _require(cat, "id", "category")
        if cid not in taxonomy_ids:
            raise ValidationError(
                f"category id {cid} is outside the taxonomy (1..22)",
                diagnostics=[f"category {cid}: unknown id"],
            )

    images = []
    for entry in raw["images"]:
        where = f"image {entry.get('id', '?')}"
        images.append(
            AnnotatedImage(
                image_id=int(_require(entry, "id", where)),
                file_name=str(_require(entry, "file_name", where)),
                width=int(_require(entry, "width", where)),
                height=int(_require(entry, "height", where)),
                scene=entry.get("scene"),
            )
        )
    annotations = []
    for entry in raw["annotations"]:
        where = f"annotation {entry.get('id', '?')}"
        bbox = _require(entry, "bbox", where)
        if not (isinstance(bbox, list) and len(bbox) == 4):
            raise ParseError(f"{where}: bbox must be a 4-element array")
        annotations.append(
            GroundTruthAnnotation(
                annotation_id=int(_require(entry, "id", where)),
                image_id=int(_require(entry, "image_id", where)),
                category_id=int(_require(entry, "category_id", where)),
                bbox=tuple(float(v) for v in bbox),
            )
        )
    return make_dataset(images, annotations)


def serialize_dataset(dataset: Dataset) -> dict:
    """Dataset back to the annotation-file dict, ordered by id."""
    return {
        "images": [
            {
                "id": img.image_id,
                "file_name": img.file_name,
                "width": img.width,
                "height": img.height,
                **({"scene": img.scene} if img.scene is not None else {}),
            }
            for img in dataset.images
        ],
        "annotations": [
            {
                "id": ann.annotation_id,
                "image_id": ann.image_id,
                "category_id": ann.category_id,
                "bbox": list(ann.bbox),
            }
            for ann in dataset.annotations
        ],
        "categories": [
            {"id": ic.id, "name": ic.name} for ic in taxonomy.INACCESSIBILITY_CLASSES
        ],
    }


def save_dataset(dataset: Dataset, path: str | Path):
    Path(path).write_text(json.dumps(serialize_dataset(dataset), indent=1))


def split_dataset(
    dataset: Dataset, train_fraction: float, seed: int
) -> tuple[Dataset, Dataset]:
    """Split by image with a seeded uniform shuffle and a prefix cut.

    The train side takes floor(train_fraction * n_images) images, so the
    train share never exceeds the requested fraction; annotations follow
    their image. Deterministic for a fixed seed.
    """
    if not 0 < train_fraction < 1:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    if not dataset.images:
        raise EmptyDataset("cannot split a dataset with no images")
    image_ids = sorted(img.image_id for img in dataset.images)
    random.Random(seed).shuffle(image_ids)
    # Exact decimal arithmetic so e.g. 0.85 * 2388 floors to 2029, not to a
    # float-noise neighbor.
    n_train = int(Fraction(str(train_fraction)) * len(image_ids))
    train_ids = set(image_ids[:n_train])

    def subset(keep: set[int]) -> Dataset:
        return make_dataset(
            [img for img in dataset.images if img.image_id in keep],
            [ann for ann in dataset.annotations if ann.image_id in keep],
        )

    return subset(train_ids), subset(set(image_ids[n_train:]))
