"""Augmentation dictionary: storage, queries, and the keyword classifier.

Designs carry AccessMeta labels as the five canonical subcategory tokens
(actuation-operation, actuation-reach, constraint, indication-visual,
indication-tactile). The classifier matches the canonical keywords against
design text on word boundaries, so "clock" never fires "lock"; multi-word
keywords such as "lever extension" also match through their head token
("extension"), which is what design titles typically carry.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from . import taxonomy
from .errors import (
    DuplicateDesignId,
    ParseError,
    UnknownCategory,
    UnknownObjectClass,
    ValidationError,
)

LABEL_TOKENS = taxonomy.SUBCATEGORY_TOKENS

# keyword -> (category, default subcategory); multi-word keywords are matched
# as phrases and additionally through their final token.
_KEYWORD_RULES: dict[str, tuple[str, str]] = {
    "lever extension": ("actuation", "operation"),
    "hand extension": ("actuation", "operation"),
    "string extension": ("actuation", "operation"),
    "opener": ("actuation", "operation"),
    "holder": ("actuation", "reach"),
    "gripper": ("actuation", "reach"),
    "grip": ("actuation", "reach"),
    "mount": ("actuation", "reach"),
    "cover": ("constraint", "limit_access"),
    "guard": ("constraint", "limit_access"),
    "protector": ("constraint", "limit_access"),
    "lock": ("constraint", "limit_access"),
    "label": ("indication", "visual"),
    "identifier": ("indication", "visual"),
    "tag": ("indication", "visual"),
}

# Secondary cues that pick the subcategory when the keyword alone is ambiguous.
_REACH_CUES = ("reach", "extender", "magnifier")
_TACTILE_CUES = ("tactile", "braille", "bump", "raised", "texture")


_PHRASES = tuple(kw for kw in _KEYWORD_RULES if " " in kw)
_SINGLES = tuple(kw for kw in _KEYWORD_RULES if " " not in kw)
# e.g. "extension" inherits (actuation, operation) from the extension phrases.
_DERIVED_HEADS = {
    kw.split()[-1]: _KEYWORD_RULES[kw]
    for kw in _PHRASES
    if kw.split()[-1] not in _KEYWORD_RULES
}


def _tokens(text: str) -> list[str]:
    return re.findall(r"[a-z0-9]+", text.lower())


def _contains_phrase(tokens: list[str], phrase: list[str]) -> bool:
    n = len(phrase)
    return any(tokens[i : i + n] == phrase for i in range(len(tokens) - n + 1))


@dataclass(frozen=True)
class ClassificationResult:
    """Label tokens plus the keyword evidence that produced each of them."""

    labels: frozenset[str]
    evidence: dict[str, tuple[str, ...]]

    def high_level(self) -> frozenset[str]:
        return frozenset(taxonomy.high_level_category(t) for t in self.labels)


def classify_design(
    title: str, description: str = "", tags: tuple[str, ...] | list[str] = ()
) -> ClassificationResult:
    """Assign AccessMeta labels from keyword evidence in free text.

    Multi-label output is expected; an empty label set means the text carries
    no recognizable cue.
    """
    fields = [title, description, *tags]
    if not any(f.strip() for f in fields):
        raise ValidationError("classification needs at least one non-empty text field")
    # Tokenize each field separately so phrases never span field boundaries.
    field_tokens = [_tokens(f) for f in fields]
    token_set = {t for tokens in field_tokens for t in tokens}

    fired: dict[str, tuple[str, str]] = {}
    for keyword in _PHRASES:
        if any(_contains_phrase(tokens, keyword.split()) for tokens in field_tokens):
            fired[keyword] = _KEYWORD_RULES[keyword]
    for keyword in _SINGLES:
        if keyword in token_set:
            fired[keyword] = _KEYWORD_RULES[keyword]
    for head, target in _DERIVED_HEADS.items():
        absorbed = any(kw.endswith(" " + head) for kw in fired)
        if head in token_set and not absorbed:
            fired[head] = target

    hits: dict[tuple[str, str], set[str]] = {}
    for keyword, (category, sub) in fired.items():
        hits.setdefault((category, sub), set()).add(keyword)

    labels: dict[str, set[str]] = {}
    for (category, sub), keywords in hits.items():
        if category == "actuation" and any(c in token_set for c in _REACH_CUES):
            sub = "reach"
        if category == "indication" and any(c in token_set for c in _TACTILE_CUES):
            sub = "tactile"
        token = f"{category}-{sub}" if category != "constraint" else "constraint"
        labels.setdefault(token, set()).update(keywords)
    return ClassificationResult(
        labels=frozenset(labels),
        evidence={t: tuple(sorted(kw)) for t, kw in labels.items()},
    )


@dataclass(frozen=True)
class AugmentationDesign:
    design_id: str
    title: str
    description: str
    tags: tuple[str, ...]
    target_objects: tuple[str, ...]
    labels: tuple[str, ...]
    source_url: str

    def high_level(self) -> frozenset[str]:
        return frozenset(taxonomy.high_level_category(t) for t in self.labels)

    def to_dict(self) -> dict:
        return {
            "design_id": self.design_id,
            "title": self.title,
            "description": self.description,
            "tags": list(self.tags),
            "target_objects": list(self.target_objects),
            "labels": list(self.labels),
            "source_url": self.source_url,
        }


@dataclass(frozen=True)
class Dictionary:
    version: str
    designs: tuple[AugmentationDesign, ...]
    object_classes: tuple[taxonomy.ObjectClass, ...]
    object_index: dict[str, tuple[str, ...]]
    by_id: dict[str, AugmentationDesign]

    def resolve_object(self, name: str) -> str:
        """Canonical object-class name for a name or alias; raises otherwise."""
        wanted = name.strip().lower()
        for obj in self.object_classes:
            if wanted == obj.name or wanted in obj.aliases:
                return obj.name
        raise UnknownObjectClass(f"unknown object class: {name!r}")


def _build_dictionary(
    version: str,
    designs: list[AugmentationDesign],
    object_classes: list[taxonomy.ObjectClass],
) -> Dictionary:
    by_id: dict[str, AugmentationDesign] = {}
    for design in designs:
        if design.design_id in by_id:
            raise DuplicateDesignId(f"duplicate design id: {design.design_id}")
        by_id[design.design_id] = design
    if not object_classes:
        names = sorted({o for d in designs for o in d.target_objects})
        object_classes = [taxonomy.ObjectClass(n) for n in names]
    known = {o.name for o in object_classes}
    index: dict[str, list[str]] = {name: [] for name in known}
    for design in designs:
        for obj in design.target_objects:
            if obj not in known:
                raise ValidationError(
                    f"design {design.design_id}: target object {obj!r} "
                    "is not in the object-class list"
                )
            index[obj].append(design.design_id)
    return Dictionary(
        version=version,
        designs=tuple(sorted(designs, key=lambda d: d.design_id)),
        object_classes=tuple(sorted(object_classes, key=lambda o: o.name)),
        object_index={k: tuple(sorted(v)) for k, v in index.items()},
        by_id=by_id,
    )


def _parse_design(entry: dict, where: str) -> AugmentationDesign:
    try:
        labels = tuple(entry.get("labels", []))
        for token in labels:
            if token not in LABEL_TOKENS:
                raise ValidationError(f"{where}: unknown label token {token!r}")
        return AugmentationDesign(
            design_id=str(entry["design_id"]),
            title=str(entry["title"]),
            description=str(entry.get("description", "")),
            tags=tuple(entry.get("tags", [])),
            target_objects=tuple(entry.get("target_objects", [])),
            labels=labels,
            source_url=str(entry.get("source_url", "")),
        )
    except KeyError as exc:
        raise ParseError(f"{where}: missing field {exc}") from exc


def load_dictionary(path: str | Path) -> Dictionary:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot parse dictionary {path}: {exc}") from exc
    if not isinstance(raw, dict) or not isinstance(raw.get("designs"), list):
        raise ParseError(f"{path}: expected an object with a 'designs' array")
    designs = [
        _parse_design(entry, f"design entry {i}")
        for i, entry in enumerate(raw["designs"])
    ]
    object_classes = [
        taxonomy.ObjectClass(str(o["name"]), tuple(o.get("aliases", [])))
        for o in raw.get("object_classes", [])
    ]
    return _build_dictionary(str(raw.get("version", "unversioned")), designs, object_classes)


def default_dictionary_path() -> Path:
    return Path(__file__).parent / "data" / "dictionary.json"


def query_designs(
    dictionary: Dictionary, object_name: str, category: str | None = None
) -> list[AugmentationDesign]:
    """Designs targeting an object, optionally restricted to one high-level
    category; ordered by design id."""
    canonical = dictionary.resolve_object(object_name)
    if category is not None and category not in taxonomy.CATEGORIES:
        raise UnknownCategory(f"unknown category: {category!r}")
    result = [
        dictionary.by_id[design_id]
        for design_id in dictionary.object_index.get(canonical, ())
    ]
    if category is not None:
        result = [d for d in result if category in d.high_level()]
    return result
