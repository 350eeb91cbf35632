"""Map detections to dictionary queries, grouped by AccessMeta category.

The class-to-object mapping ships as editable configuration; the bundled
default covers every evaluable class. Suggestions depend only on the
detection's class, never on its box or score.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import taxonomy
from .catalog import AugmentationDesign, Dictionary, query_designs
from .detector import Detection
from .errors import ParseError, UnmappedClass, ValidationError

IcObjectMapping = dict[str, tuple[str, ...]]


def default_mapping_path() -> Path:
    return Path(__file__).parent / "data" / "ic_object_mapping.json"


def load_mapping(path: str | Path) -> IcObjectMapping:
    """Mapping file: JSON object of {class name: [object names]}."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot parse mapping {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"{path}: mapping must be a JSON object")
    mapping: IcObjectMapping = {}
    for name, objects in raw.items():
        ic = taxonomy.parse_ic(name)
        mapping[ic.name] = tuple(objects)
    for ic in taxonomy.INACCESSIBILITY_CLASSES:
        if ic.evaluable and not mapping.get(ic.name):
            raise ValidationError(f"mapping gives no target objects for {ic.name}")
    if mapping.get("unidentifiable"):
        raise ValidationError("the unidentifiable class must map to no objects")
    return mapping


@dataclass(frozen=True)
class Recommendation:
    detection: Detection
    # category -> designs, deduplicated, ordered by design id
    groups: dict[str, tuple[AugmentationDesign, ...]]


@dataclass(frozen=True)
class SceneRecommendations:
    recommendations: tuple[Recommendation, ...]
    skipped_unidentifiable: int


def suggestions_for_class(
    ic_name: str, dictionary: Dictionary, mapping: IcObjectMapping
) -> dict[str, tuple[AugmentationDesign, ...]]:
    """Category-grouped designs for one inaccessibility class."""
    ic = taxonomy.parse_ic(ic_name)
    objects = mapping.get(ic.name, ())
    if not ic.evaluable or not objects:
        raise UnmappedClass(f"no target objects mapped for class {ic.name!r}")
    merged: dict[str, AugmentationDesign] = {}
    for obj in objects:
        for design in query_designs(dictionary, obj):
            merged.setdefault(design.design_id, design)
    groups = {category: [] for category in taxonomy.CATEGORIES}
    for design_id in sorted(merged):
        design = merged[design_id]
        for category in design.high_level():
            groups[category].append(design)
    return {category: tuple(designs) for category, designs in groups.items()}


def recommend(
    detection: Detection, dictionary: Dictionary, mapping: IcObjectMapping
) -> Recommendation:
    return Recommendation(
        detection=detection,
        groups=suggestions_for_class(detection.ic.name, dictionary, mapping),
    )


def recommend_scene(
    detections: list[Detection], dictionary: Dictionary, mapping: IcObjectMapping
) -> SceneRecommendations:
    """One recommendation per evaluable detection, in input order; class-22
    detections are skipped and counted."""
    recommendations = []
    skipped = 0
    for det in detections:
        if not det.ic.evaluable:
            skipped += 1
            continue
        recommendations.append(recommend(det, dictionary, mapping))
    return SceneRecommendations(tuple(recommendations), skipped)
