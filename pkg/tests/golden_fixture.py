"""Fixed evaluation scenario behind the golden report files.

Three evaluable classes with distinct outcomes: electric_outlet detected
perfectly, handle_bar_small with one loose match plus a false positive,
switch_toggle_multi missed entirely; every other class has no ground truth
and renders as n/a. Regenerate the files with ``write_golden()`` after any
deliberate format change.
"""

from __future__ import annotations

import json
from pathlib import Path

from accesslens import evaluation as ev
from accesslens.dataset import AnnotatedImage, GroundTruthAnnotation, make_dataset
from accesslens.detector import Detection

GOLDEN_DIR = Path(__file__).parent / "golden"


def build_inputs():
    images = [
        AnnotatedImage(1, "scene_a.jpg", 1000, 800),
        AnnotatedImage(2, "scene_b.jpg", 1000, 800),
    ]
    gts = [
        GroundTruthAnnotation(1, 1, 3, (100.0, 100.0, 40.0, 40.0)),
        GroundTruthAnnotation(2, 1, 10, (300.0, 200.0, 80.0, 30.0)),
        GroundTruthAnnotation(3, 2, 10, (50.0, 60.0, 70.0, 25.0)),
        GroundTruthAnnotation(4, 2, 20, (500.0, 400.0, 20.0, 30.0)),
    ]
    detections = [
        Detection(1, 3, (100.0, 100.0, 40.0, 40.0), 0.95),
        # IoU 0.6 against annotation 2: matches at t<=0.60 only
        Detection(1, 10, (300.0, 200.0, 48.0, 30.0), 0.9),
        Detection(2, 10, (50.0, 60.0, 70.0, 25.0), 0.8),
        Detection(2, 10, (700.0, 700.0, 30.0, 30.0), 0.7),
    ]
    return make_dataset(images, gts), detections


def build_report() -> ev.EvaluationReport:
    dataset, detections = build_inputs()
    return ev.evaluate(dataset, detections)


def write_golden():
    GOLDEN_DIR.mkdir(exist_ok=True)
    report = build_report()
    (GOLDEN_DIR / "eval_report.txt").write_text(ev.render_text(report))
    (GOLDEN_DIR / "eval_report.json").write_text(
        json.dumps(ev.report_to_dict(report), indent=1) + "\n"
    )


if __name__ == "__main__":
    write_golden()
