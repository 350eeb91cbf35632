"""Deterministic dataset builders used across the test suite.

The two count tables reproduce the published per-class object counts of the
training/validation corpus (2,388 images, 10,039 objects) and the
high-resolution test corpus (42 images, 428 objects).
"""

from __future__ import annotations

from accesslens.dataset import AnnotatedImage, Dataset, GroundTruthAnnotation, make_dataset

ACCESSDB_COUNTS = {
    1: 83, 2: 165, 3: 1382, 4: 169, 5: 351, 6: 29, 7: 86, 8: 96,
    9: 375, 10: 1712, 11: 243, 12: 491, 13: 43, 14: 211, 15: 289,
    16: 205, 17: 3026, 18: 84, 19: 57, 20: 103, 21: 115, 22: 724,
}
ACCESSREAL_COUNTS = {
    1: 14, 2: 8, 3: 33, 4: 3, 5: 13, 6: 0, 7: 0, 8: 0,
    9: 19, 10: 191, 11: 31, 12: 0, 13: 0, 14: 10, 15: 14,
    16: 26, 17: 38, 18: 3, 19: 4, 20: 8, 21: 13, 22: 0,
}
ACCESSDB_IMAGES = 2388
ACCESSREAL_IMAGES = 42
ACCESSDB_TOTAL = 10039
ACCESSREAL_TOTAL = 428


def build_counted_dataset(
    counts: dict[int, int],
    n_images: int,
    width: int = 1600,
    height: int = 1200,
    scene: str | None = None,
) -> Dataset:
    """A valid dataset with exactly the requested per-class counts.

    Annotations are dealt round-robin across images and laid out on a grid so
    every box stays inside its image.
    """
    images = [
        AnnotatedImage(i + 1, f"scene_{i + 1:05d}.jpg", width, height, scene)
        for i in range(n_images)
    ]
    labels = [cid for cid in sorted(counts) for _ in range(counts[cid])]
    per_image_slots = (len(labels) + n_images - 1) // n_images
    cols = max(1, (width - 20) // 60)
    assert per_image_slots <= cols * max(1, (height - 20) // 60), "grid overflow"
    annotations = []
    for i, cid in enumerate(labels):
        image_id = (i % n_images) + 1
        slot = i // n_images
        x = 10 + 60 * (slot % cols)
        y = 10 + 60 * (slot // cols)
        annotations.append(
            GroundTruthAnnotation(i + 1, image_id, cid, (float(x), float(y), 50.0, 50.0))
        )
    return make_dataset(images, annotations)


def accessdb_like() -> Dataset:
    return build_counted_dataset(ACCESSDB_COUNTS, ACCESSDB_IMAGES)


def accessreal_like() -> Dataset:
    return build_counted_dataset(
        ACCESSREAL_COUNTS, ACCESSREAL_IMAGES, width=4032, height=3024
    )


def tiny_dataset() -> Dataset:
    """Two images, three boxes; the smallest interesting fixture."""
    images = [
        AnnotatedImage(1, "bathroom.jpg", 640, 480, "bathroom"),
        AnnotatedImage(2, "kitchen.jpg", 800, 600, "kitchen"),
    ]
    annotations = [
        GroundTruthAnnotation(1, 1, 20, (100.0, 120.0, 40.0, 60.0)),
        GroundTruthAnnotation(2, 1, 3, (300.0, 200.0, 30.0, 30.0)),
        GroundTruthAnnotation(3, 2, 10, (50.0, 50.0, 120.0, 35.0)),
    ]
    return make_dataset(images, annotations)
