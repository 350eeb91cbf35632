"""COCO-style detector evaluation.

Matching uses IoU >= t (inclusive) with greedy highest-IoU assignment in
score order, one-to-one per (image, class) group. Per-class AP is the
101-point interpolated average precision, averaged over the ten IoU
thresholds 0.50..0.95; mAP averages per-class AP over classes that have at
least one ground-truth box. The non-evaluable class (id 22) is dropped from
both ground truth and detections before anything is computed.

Internal AP values live in [0, 1]; the rendered report scales by 100 with
two decimals, printing "n/a" for classes without ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import taxonomy
from .dataset import Dataset, GroundTruthAnnotation
from .detector import Detection
from .errors import (
    DegenerateBox,
    InconsistentInput,
    NoEvaluableClasses,
    NoGroundTruth,
)

COCO_THRESHOLDS = tuple(round(0.50 + 0.05 * i, 2) for i in range(10))
RECALL_POINTS = tuple(i / 100 for i in range(101))

Bbox = tuple[float, float, float, float]


def iou(a: Bbox, b: Bbox) -> float:
    """Intersection over union of two [x, y, w, h] boxes."""
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    if aw <= 0 or ah <= 0 or bw <= 0 or bh <= 0:
        raise DegenerateBox(f"boxes must have positive size: {a}, {b}")
    ix = max(0.0, min(ax + aw, bx + bw) - max(ax, bx))
    iy = max(0.0, min(ay + ah, by + bh) - max(ay, by))
    # Rounding in (x+w)-x can push the intersection past the smaller area.
    inter = min(ix * iy, aw * ah, bw * bh)
    if inter <= 0:
        return 0.0
    return inter / (aw * ah + bw * bh - inter)


@dataclass(frozen=True)
class MatchResult:
    threshold: float
    # (detection, matched ground truth or None) in score order
    pairs: tuple[tuple[Detection, GroundTruthAnnotation | None], ...]
    unmatched_gt: int


def _score_order(detections: list[Detection]) -> list[int]:
    # Score descending, ties broken by input order (stable).
    return sorted(range(len(detections)), key=lambda i: -detections[i].score)


def match_at_threshold(
    gts: list[GroundTruthAnnotation], detections: list[Detection], threshold: float
) -> MatchResult:
    """Greedy one-to-one matching within a single (image, class) group.

    Each detection, visited in score order, takes the unmatched ground truth
    with the highest IoU, provided that IoU >= threshold.
    """
    matched: set[int] = set()
    pairs = []
    for i in _score_order(detections):
        det = detections[i]
        best_j = -1
        best_iou = 0.0
        for j, gt in enumerate(gts):
            if j in matched:
                continue
            v = iou(det.bbox, gt.bbox)
            if v > best_iou:
                best_iou = v
                best_j = j
        if best_j >= 0 and best_iou >= threshold:
            matched.add(best_j)
            pairs.append((det, gts[best_j]))
        else:
            pairs.append((det, None))
    return MatchResult(threshold, tuple(pairs), unmatched_gt=len(gts) - len(matched))


def _tp_flags(
    gts: list[GroundTruthAnnotation], detections: list[Detection], threshold: float
) -> np.ndarray:
    """True-positive flags in global score order, matching per image."""
    gts_by_image: dict[int, list[GroundTruthAnnotation]] = {}
    for gt in gts:
        gts_by_image.setdefault(gt.image_id, []).append(gt)
    matched: dict[int, set[int]] = {img: set() for img in gts_by_image}
    flags = np.zeros(len(detections), dtype=bool)
    for rank, i in enumerate(_score_order(detections)):
        det = detections[i]
        pool = gts_by_image.get(det.image_id)
        if not pool:
            continue
        taken = matched[det.image_id]
        best_j = -1
        best_iou = 0.0
        for j, gt in enumerate(pool):
            if j in taken:
                continue
            v = iou(det.bbox, gt.bbox)
            if v > best_iou:
                best_iou = v
                best_j = j
        if best_j >= 0 and best_iou >= threshold:
            taken.add(best_j)
            flags[rank] = True
    return flags


def _interpolated_ap(tp: np.ndarray, n_gt: int) -> float:
    """101-point interpolated AP from ordered true-positive flags."""
    if len(tp) == 0:
        return 0.0
    tp_cum = np.cumsum(tp)
    fp_cum = np.cumsum(~tp)
    recall = tp_cum / n_gt
    precision = tp_cum / (tp_cum + fp_cum)
    # Precision envelope: best precision achievable at recall >= r.
    envelope = np.maximum.accumulate(precision[::-1])[::-1]
    idx = np.searchsorted(recall, RECALL_POINTS, side="left")
    valid = idx < len(recall)
    return float(np.sum(envelope[idx[valid]]) / len(RECALL_POINTS))


def average_precision(
    gts: list[GroundTruthAnnotation], detections: list[Detection], threshold: float
) -> float:
    """Single-class AP at one IoU threshold; ground truth may span images."""
    if not gts:
        raise NoGroundTruth("AP is undefined for a class with no ground truth")
    return _interpolated_ap(_tp_flags(gts, detections, threshold), len(gts))


@dataclass(frozen=True)
class EvaluationReport:
    # Evaluable class id -> AP in [0, 1], or None when the class has no GT.
    per_class_ap: dict[int, float | None]
    map_all: float
    ap50: float
    ap75: float
    counts: dict[str, int]


def _cap_per_image(detections: list[Detection], cap: int) -> list[Detection]:
    """Keep each image's top-scoring detections (ties by input order)."""
    by_image: dict[int, list[int]] = {}
    for i, det in enumerate(detections):
        by_image.setdefault(det.image_id, []).append(i)
    keep: set[int] = set()
    for indices in by_image.values():
        ranked = sorted(indices, key=lambda i: -detections[i].score)
        keep.update(ranked[:cap])
    return [det for i, det in enumerate(detections) if i in keep]


def evaluate(
    dataset: Dataset,
    detections: list[Detection],
    thresholds: tuple[float, ...] = COCO_THRESHOLDS,
    max_detections_per_image: int | None = None,
) -> EvaluationReport:
    """Full report over a ground-truth dataset and raw (unfiltered) detections.

    No per-image detection cap is applied unless one is requested.
    """
    image_ids = {img.image_id for img in dataset.images}
    for det in detections:
        if det.image_id not in image_ids:
            raise InconsistentInput(
                f"detection references unknown image {det.image_id}"
            )
    if max_detections_per_image is not None:
        detections = _cap_per_image(detections, max_detections_per_image)

    gts = [a for a in dataset.annotations if a.ic.evaluable]
    dets = [d for d in detections if d.ic.evaluable]

    gt_by_class: dict[int, list[GroundTruthAnnotation]] = {}
    for gt in gts:
        gt_by_class.setdefault(gt.category_id, []).append(gt)
    if not gt_by_class:
        raise NoEvaluableClasses("ground truth has no evaluable annotations")
    det_by_class: dict[int, list[Detection]] = {}
    for det in dets:
        det_by_class.setdefault(det.category_id, []).append(det)

    per_class_ap: dict[int, float | None] = {}
    per_class_at: dict[int, dict[float, float]] = {}
    for ic in taxonomy.INACCESSIBILITY_CLASSES:
        if not ic.evaluable:
            continue
        class_gts = gt_by_class.get(ic.id)
        if not class_gts:
            per_class_ap[ic.id] = None
            continue
        class_dets = det_by_class.get(ic.id, [])
        ap_at = {
            t: average_precision(class_gts, class_dets, t) for t in thresholds
        }
        per_class_at[ic.id] = ap_at
        per_class_ap[ic.id] = sum(ap_at.values()) / len(ap_at)

    present = sorted(per_class_at)

    def aggregate(pick) -> float:
        return sum(pick(per_class_at[c]) for c in present) / len(present)

    return EvaluationReport(
        per_class_ap=per_class_ap,
        map_all=aggregate(lambda ap_at: sum(ap_at.values()) / len(ap_at)),
        ap50=aggregate(lambda ap_at: ap_at[0.5]),
        ap75=aggregate(lambda ap_at: ap_at[0.75]),
        counts={
            "images": len(dataset.images),
            "ground_truth": len(gts),
            "detections": len(dets),
            "classes_evaluated": len(present),
        },
    )


def _fmt(value: float | None) -> str:
    return "n/a" if value is None else f"{value * 100:.2f}"


def report_to_dict(report: EvaluationReport) -> dict:
    """JSON form of the report; AP values stay on the [0, 1] scale."""
    return {
        "per_class": [
            {
                "id": ic.id,
                "class": ic.name,
                "ap": report.per_class_ap[ic.id],
            }
            for ic in taxonomy.INACCESSIBILITY_CLASSES
            if ic.evaluable
        ],
        "map": report.map_all,
        "ap50": report.ap50,
        "ap75": report.ap75,
        "counts": dict(report.counts),
    }


def render_text(report: EvaluationReport) -> str:
    """Fixed-width table: per-class AP rows then one aggregate row (x100 scale)."""
    name_width = max(len(ic.name) for ic in taxonomy.INACCESSIBILITY_CLASSES)
    lines = [f"{'id':>2}  {'inaccessibility class':<{name_width}}  {'AP':>6}"]
    for ic in taxonomy.INACCESSIBILITY_CLASSES:
        if not ic.evaluable:
            continue
        lines.append(
            f"{ic.id:>2}  {ic.name:<{name_width}}  {_fmt(report.per_class_ap[ic.id]):>6}"
        )
    lines.append("")
    lines.append(f"{'mAP':>6}  {'AP50':>6}  {'AP75':>6}")
    lines.append(
        f"{_fmt(report.map_all):>6}  {_fmt(report.ap50):>6}  {_fmt(report.ap75):>6}"
    )
    return "\n".join(lines) + "\n"
