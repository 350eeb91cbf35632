"""Fixed vocabulary: inaccessibility classes and the AccessMeta category tree.

The 21 inaccessibility classes (plus ``unidentifiable``) and the three
AccessMeta categories with their canonical keywords are compiled-in constant
data. Object classes, by contrast, come from the shipped catalog file.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownCategory, UnknownClass

UNIDENTIFIABLE_ID = 22

ACTUATION = "actuation"
CONSTRAINT = "constraint"
INDICATION = "indication"
CATEGORIES = (ACTUATION, CONSTRAINT, INDICATION)

# Subcategory tokens, keyed by their high-level category.
SUBCATEGORIES = {
    ACTUATION: ("operation", "reach"),
    CONSTRAINT: ("limit_access",),
    INDICATION: ("visual", "tactile"),
}

# Canonical keyword seeds per high-level category.
CATEGORY_KEYWORDS = {
    ACTUATION: (
        "lever extension",
        "hand extension",
        "grip",
        "mount",
        "opener",
        "holder",
        "gripper",
        "string extension",
    ),
    CONSTRAINT: ("cover", "guard", "protector", "lock"),
    INDICATION: ("label", "identifier", "tag"),
}

# Composite label tokens ("actuation-reach" etc.) used by annotation tooling.
SUBCATEGORY_TOKENS = tuple(
    f"{cat}-{sub}" if len(subs) > 1 else cat
    for cat, subs in SUBCATEGORIES.items()
    for sub in subs
)


@dataclass(frozen=True)
class InaccessibilityClass:
    id: int
    name: str
    parent_category: str | None
    evaluable: bool


@dataclass(frozen=True)
class AccessMetaLabel:
    """One node of the AccessMeta tree: a category/subcategory pair."""

    category: str
    subcategory: str
    keywords: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.category not in SUBCATEGORIES:
            raise UnknownCategory(f"unknown category: {self.category!r}")
        if self.subcategory not in SUBCATEGORIES[self.category] + ("none",):
            raise UnknownCategory(
                f"subcategory {self.subcategory!r} is not under {self.category!r}"
            )


@dataclass(frozen=True)
class ObjectClass:
    name: str
    aliases: tuple[str, ...] = ()


def _ic(id: int, name: str, parent: str | None) -> InaccessibilityClass:
    return InaccessibilityClass(id, name, parent, evaluable=id != UNIDENTIFIABLE_ID)


# Ids, names, and order are fixed; id 22 spans all six parent categories and
# therefore carries no single parent.
INACCESSIBILITY_CLASSES = (
    _ic(1, "button_panel_push_buttons", "button_panel"),
    _ic(2, "button_panel_turn_handle", "button_panel"),
    _ic(3, "electric_outlet", "electric_outlet"),
    _ic(4, "faucet_faucet_only", "faucet"),
    _ic(5, "faucet_handle_lever", "faucet"),
    _ic(6, "faucet_pull_tiny_knob", "faucet"),
    _ic(7, "faucet_rotate_cross", "faucet"),
    _ic(8, "faucet_rotate_knob", "faucet"),
    _ic(9, "handle_bar_large", "handle"),
    _ic(10, "handle_bar_small", "handle"),
    _ic(11, "handle_cup_handle", "handle"),
    _ic(12, "handle_drop_pull", "handle"),
    _ic(13, "handle_flush_pull", "handle"),
    _ic(14, "handle_lever", "handle"),
    _ic(15, "handle_pull", "handle"),
    _ic(16, "knob_rotate_round", "knob"),
    _ic(17, "knob_static", "knob"),
    _ic(18, "switch_rocker_multi", "switch"),
    _ic(19, "switch_rocker_single", "switch"),
    _ic(20, "switch_toggle_multi", "switch"),
    _ic(21, "switch_toggle_single", "switch"),
    _ic(22, "unidentifiable", None),
)

PARENT_CATEGORIES = (
    "button_panel",
    "electric_outlet",
    "faucet",
    "handle",
    "knob",
    "switch",
)

_BY_NAME = {ic.name: ic for ic in INACCESSIBILITY_CLASSES}
_BY_ID = {ic.id: ic for ic in INACCESSIBILITY_CLASSES}


def parse_ic(token: str) -> InaccessibilityClass:
    """Resolve a class name (case-insensitive) to its taxonomy entry."""
    if not token:
        raise UnknownClass("empty class token")
    ic = _BY_NAME.get(token.lower())
    if ic is None:
        raise UnknownClass(f"unknown inaccessibility class: {token!r}")
    return ic


def ic_by_id(class_id: int) -> InaccessibilityClass:
    ic = _BY_ID.get(class_id)
    if ic is None:
        raise UnknownClass(f"unknown inaccessibility class id: {class_id}")
    return ic


def high_level_category(label: AccessMetaLabel | str) -> str:
    """Project a label (or composite token like ``actuation-reach``) to its category."""
    if isinstance(label, AccessMetaLabel):
        return label.category
    token = label.lower().strip()
    category = token.split("-", 1)[0]
    if category not in SUBCATEGORIES:
        raise UnknownCategory(f"unknown category token: {label!r}")
    return category


def split_label_token(token: str) -> tuple[str, str]:
    """Split ``actuation-reach`` into ("actuation", "reach"); bare categories
    map to their only (or default) subcategory."""
    category = high_level_category(token)
    _, _, sub = token.lower().strip().partition("-")
    if not sub:
        sub = SUBCATEGORIES[category][0]
    if sub not in SUBCATEGORIES[category]:
        raise UnknownCategory(f"subcategory {sub!r} is not under {category!r}")
    return category, sub


def taxonomy_table() -> list[dict]:
    """The class table as plain dicts, in id order (export format)."""
    return [
        {
            "id": ic.id,
            "name": ic.name,
            "parent_category": ic.parent_category,
            "evaluable": ic.evaluable,
        }
        for ic in INACCESSIBILITY_CLASSES
    ]
