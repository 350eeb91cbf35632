#!/usr/bin/env python3
"""Regenerate the bundled augmentation dictionary.

The published dictionary is not redistributable from here, so the bundled
file is a deterministic reconstruction: 280 synthetic designs spanning 52
everyday-object classes, annotated with AccessMeta labels. Entry ids use the
``rc`` prefix (reconstructed catalog) and example.com source URLs to make the
synthetic provenance obvious.

Usage: python scripts/build_dictionary.py [output.json]
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from accesslens.catalog import classify_design, load_dictionary  # noqa: E402

TARGET_DESIGNS = 280

# name -> (aliases, weight); weights bias design counts toward the six
# detector-facing object families.
OBJECT_CLASSES: dict[str, tuple[tuple[str, ...], int]] = {
    "switch": (("light switch", "wall switch"), 12),
    "handle": (("door handle",), 12),
    "knob": (("door knob", "doorknob"), 10),
    "outlet": (("electric outlet", "power outlet"), 9),
    "faucet": (("tap",), 9),
    "button panel": (("control panel",), 7),
    "door": ((), 10),
    "drawer": ((), 9),
    "cabinet": ((), 8),
    "stove": (("range",), 6),
    "refrigerator": (("fridge",), 5),
    "microwave": ((), 5),
    "jar": ((), 8),
    "bottle": ((), 8),
    "can": ((), 5),
    "milk carton": ((), 3),
    "bag": ((), 4),
    "key": ((), 5),
    "book": ((), 4),
    "pen": ((), 5),
    "scissors": ((), 3),
    "knife": ((), 4),
    "spoon": ((), 4),
    "fork": ((), 3),
    "cutlery": ((), 3),
    "utensil": ((), 4),
    "toothbrush": ((), 4),
    "toothpaste": ((), 4),
    "soap": ((), 3),
    "shampoo": ((), 3),
    "dispenser": ((), 4),
    "spray": (("spray bottle",), 3),
    "nail clipper": ((), 3),
    "hair dryer": ((), 3),
    "phone": (("smartphone",), 4),
    "laptop": ((), 3),
    "camera": ((), 3),
    "clock": ((), 3),
    "remote": (("remote control",), 3),
    "table": ((), 4),
    "chair": ((), 4),
    "window": ((), 4),
    "blinds": (("window blinds",), 3),
    "closet": ((), 3),
    "cupboard": ((), 3),
    "cup": (("mug",), 4),
    "shoe": ((), 3),
    "sock": ((), 2),
    "button": (("clothing button",), 3),
    "zipper": ((), 2),
    "washing machine": ((), 3),
    "lamp": ((), 4),
}

# (title template, description, extra tags, labels). Keyword-bearing
# templates agree with their stored labels by construction; the "quiet"
# templates carry no canonical keyword and model real-world listings whose
# text gives the classifier nothing to work with.
TEMPLATES = [
    (
        "{Obj} lever extension",
        "Extends the {obj} with a printed lever so a push of the forearm or "
        "elbow replaces grasping and twisting.",
        ("assistive", "one-handed"),
        ("actuation-operation",),
    ),
    (
        "Hands-free {obj} opener",
        "Opener bracket that lets the {obj} be operated with a closed fist "
        "or a foot; no fine grip needed.",
        ("hands-free",),
        ("actuation-operation",),
    ),
    (
        "{Obj} protective cover",
        "Snap-on cover that blocks casual access to the {obj}; childproofing "
        "for curious hands.",
        ("child-safety",),
        ("constraint",),
    ),
    (
        "{Obj} plate identifier",
        "Printed identifier that distinguishes otherwise identical {obj} "
        "units at a glance.",
        ("visual-cue",),
        ("indication-visual",),
    ),
    (
        "{Obj} grip sleeve",
        "Textured grip sleeve that thickens the {obj} for weak or wet hands.",
        ("grip",),
        ("actuation-reach",),
    ),
    (
        "{Obj} holder with mount",
        "Wall mount holder that keeps the {obj} within easy reach from a "
        "seated position.",
        ("mount",),
        ("actuation-reach",),
    ),
    (
        "Braille tag for {obj}",
        "Raised braille tag naming the {obj} function for eyes-free use.",
        ("tactile",),
        ("indication-tactile",),
    ),
    (
        "Child-proof {obj} lock",
        "Latching lock that stops children and pets from operating the {obj}.",
        ("safety", "lock"),
        ("constraint",),
    ),
    (
        "{Obj} label frame",
        "Frame that holds a replaceable printed label describing what the "
        "{obj} controls.",
        ("label",),
        ("indication-visual",),
    ),
    (
        "{Obj} string extension",
        "Pull-string extension so the {obj} can be reached from below or "
        "from a chair.",
        ("reach",),
        ("actuation-reach",),
    ),
    (
        "{Obj} guard rail",
        "Guard that prevents accidental knocks against the {obj}.",
        ("safety",),
        ("constraint",),
    ),
    (
        "{Obj} hand extension arm",
        "Lever arm that lets the whole hand or wrist drive the {obj} instead "
        "of the fingertips.",
        ("assistive",),
        ("actuation-operation",),
    ),
    # quiet templates: realistic listings without canonical keywords
    (
        "One-handed {obj} helper",
        "Printable aid for using the {obj} with one hand.",
        ("assistive",),
        ("actuation-operation",),
    ),
    (
        "Ergonomic {obj} aid",
        "A more comfortable way to work the {obj} during long days.",
        ("ergonomic",),
        ("actuation-operation",),
    ),
    (
        "{Obj} safety ring",
        "Keeps small fingers away from the {obj}.",
        ("safety",),
        ("constraint",),
    ),
]

QUIET_TEMPLATE_IDS = {12, 13, 14}


def build_designs():
    counts = {name: weight for name, (_, weight) in OBJECT_CLASSES.items()}
    order = list(OBJECT_CLASSES)
    total = sum(counts.values())
    i = 0
    while total < TARGET_DESIGNS:
        counts[order[i % len(order)]] += 1
        total += 1
        i += 1
    while total > TARGET_DESIGNS:
        name = order[i % len(order)]
        if counts[name] > 2:
            counts[name] -= 1
            total -= 1
        i += 1

    keyworded = [i for i in range(len(TEMPLATES)) if i not in QUIET_TEMPLATE_IDS]
    quiet = sorted(QUIET_TEMPLATE_IDS)
    designs = []
    serial = 1001
    quiet_cursor = 0
    for obj_pos, obj in enumerate(order):
        seen_templates: dict[int, int] = {}
        for k in range(counts[obj]):
            # Every eighth entry overall gets a keyword-free listing, so the
            # bundled catalog is realistically imperfect for the classifier.
            if (serial - 1001) % 8 == 7:
                template_id = quiet[quiet_cursor % len(quiet)]
                quiet_cursor += 1
            else:
                template_id = keyworded[(obj_pos + k) % len(keyworded)]
            title_tpl, desc_tpl, tags, labels = TEMPLATES[template_id]
            title = title_tpl.format(Obj=obj.capitalize(), obj=obj)
            reuse = seen_templates.get(template_id, 0)
            seen_templates[template_id] = reuse + 1
            if reuse:
                title = f"{title} v{reuse + 1}"
            design_id = f"rc{serial}"
            serial += 1
            designs.append(
                {
                    "design_id": design_id,
                    "title": title,
                    "description": desc_tpl.format(obj=obj),
                    "tags": ["3d-printed", obj.replace(" ", "-"), *tags],
                    "target_objects": [obj],
                    "labels": list(labels),
                    "source_url": f"https://example.com/designs/{design_id}",
                }
            )
    return designs


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parents[1]
        / "src"
        / "accesslens"
        / "data"
        / "dictionary.json"
    )
    designs = build_designs()
    payload = {
        "version": "0.1.0-reconstruction",
        "notes": (
            "Synthetic reconstruction of the augmentation catalog: entry ids, "
            "titles, and URLs are generated, not scraped."
        ),
        "object_classes": [
            {"name": name, "aliases": list(aliases)}
            for name, (aliases, _) in sorted(OBJECT_CLASSES.items())
        ],
        "designs": designs,
    }
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(payload, indent=1) + "\n")

    dictionary = load_dictionary(out)
    assert len(dictionary.designs) == TARGET_DESIGNS, len(dictionary.designs)
    assert len(dictionary.object_classes) == 52, len(dictionary.object_classes)
    assert all(dictionary.object_index[o.name] for o in dictionary.object_classes)

    agree = 0
    for d in dictionary.designs:
        predicted = classify_design(d.title, tags=d.tags).high_level()
        stored = d.high_level()
        agree += bool(predicted & stored)
    ratio = agree / len(dictionary.designs)
    print(f"wrote {out}: {len(dictionary.designs)} designs, "
          f"{len(dictionary.object_classes)} object classes, "
          f"classifier agreement {ratio:.3f}")
    assert ratio >= 0.83, ratio


if __name__ == "__main__":
    main()
