"""Command-line interface; one process, shared config file."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__, taxonomy
from . import annotation_qa as qa
from .catalog import classify_design, default_dictionary_path, load_dictionary
from .dataset import load_dataset, save_dataset, split_dataset
from .detector import load_detections
from .errors import AccessLensError, ValidationError
from .evaluation import evaluate, render_text, report_to_dict
from .recommender import default_mapping_path, load_mapping, suggestions_for_class
from .service.config import load_config


@click.group()
@click.version_option(__version__)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Service config file (JSON).",
)
@click.pass_context
def main(ctx, config_path):
    ctx.obj = config_path


def _fail(exc: Exception):
    click.echo(f"error: {exc}", err=True)
    if isinstance(exc, ValidationError) and exc.diagnostics:
        for line in exc.diagnostics:
            click.echo(f"  - {line}", err=True)
    sys.exit(1)


@main.command("taxonomy")
def taxonomy_cmd():
    """Print the 22-class table as JSON, in id order."""
    click.echo(json.dumps(taxonomy.taxonomy_table(), indent=1))


@main.command()
@click.argument("annotations", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of a table.")
def stats(annotations, as_json):
    """Per-class object counts for an annotation file."""
    try:
        ds = load_dataset(annotations)
    except AccessLensError as exc:
        _fail(exc)
    s = ds.stats()
    if as_json:
        payload = {
            "per_class": {
                taxonomy.ic_by_id(cid).name: n for cid, n in s.per_class_counts.items()
            },
            "total_objects": s.total_objects,
            "total_images": s.total_images,
        }
        click.echo(json.dumps(payload, indent=1))
        return
    width = max(len(ic.name) for ic in taxonomy.INACCESSIBILITY_CLASSES)
    click.echo(f"{'id':>2}  {'inaccessibility class':<{width}}  {'count':>6}")
    for ic in taxonomy.INACCESSIBILITY_CLASSES:
        click.echo(f"{ic.id:>2}  {ic.name:<{width}}  {s.per_class_counts[ic.id]:>6}")
    click.echo(f"{'':>2}  {'total':<{width}}  {s.total_objects:>6}")
    click.echo(f"images: {s.total_images}")


@main.command()
@click.argument("annotations", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def validate(annotations, as_json):
    """Validate an annotation file; non-zero exit on any violation."""
    try:
        ds = load_dataset(annotations)
    except AccessLensError as exc:
        if as_json:
            diagnostics = getattr(exc, "diagnostics", [])
            click.echo(json.dumps({"ok": False, "errors": diagnostics or [str(exc)]}))
            sys.exit(1)
        _fail(exc)
    if as_json:
        click.echo(json.dumps(
            {"ok": True, "images": len(ds.images), "annotations": len(ds.annotations)}
        ))
        return
    click.echo(f"ok: {len(ds.images)} images, {len(ds.annotations)} annotations")


@main.command()
@click.argument("annotations", type=click.Path(exists=True, dir_okay=False))
@click.option("--fraction", default=0.85, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option(
    "--out-dir",
    type=click.Path(file_okay=False),
    default=".",
    show_default=True,
)
def split(annotations, fraction, seed, out_dir):
    """Split a dataset by image into train/val annotation files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        ds = load_dataset(annotations)
        train, val = split_dataset(ds, fraction, seed)
    except (AccessLensError, ValueError) as exc:
        _fail(exc)
    save_dataset(train, out / "train.json")
    save_dataset(val, out / "val.json")
    manifest = {
        "source": str(annotations),
        "train_fraction": fraction,
        "seed": seed,
        "train_images": len(train.images),
        "val_images": len(val.images),
    }
    (out / "split_manifest.json").write_text(json.dumps(manifest, indent=1))
    click.echo(f"train: {len(train.images)} images, val: {len(val.images)} images")


@main.command("eval")
@click.argument("annotations", type=click.Path(exists=True, dir_okay=False))
@click.argument("detections", type=click.Path(exists=True, dir_okay=False))
@click.option("--json-out", type=click.Path(dir_okay=False), default=None)
@click.option("--max-per-image", type=int, default=None,
              help="Cap detections per image by score before evaluating.")
def eval_cmd(annotations, detections, json_out, max_per_image):
    """Evaluate a detections file against ground truth (AP per class, mAP)."""
    try:
        ds = load_dataset(annotations)
        dets = load_detections(detections)
        report = evaluate(ds, dets, max_detections_per_image=max_per_image)
    except AccessLensError as exc:
        _fail(exc)
    click.echo(render_text(report), nl=False)
    if json_out:
        Path(json_out).write_text(json.dumps(report_to_dict(report), indent=1))


@main.command()
@click.argument("records", type=click.Path(exists=True, dir_okay=False))
def classify(records):
    """Label design metadata records (JSON array of {title, description, tags})."""
    try:
        entries = json.loads(Path(records).read_text())
        results = []
        for entry in entries:
            r = classify_design(
                entry.get("title", ""),
                entry.get("description", ""),
                tuple(entry.get("tags", ())),
            )
            results.append(
                {
                    "title": entry.get("title", ""),
                    "labels": sorted(r.labels),
                    "evidence": {k: list(v) for k, v in sorted(r.evidence.items())},
                }
            )
    except (AccessLensError, json.JSONDecodeError) as exc:
        _fail(exc)
    click.echo(json.dumps(results, indent=1))


@main.command()
@click.option("--class", "ic_name", required=True, help="Inaccessibility class name.")
@click.option(
    "--dictionary",
    "dictionary_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
)
@click.option(
    "--mapping",
    "mapping_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
)
def recommend(ic_name, dictionary_path, mapping_path):
    """Print grouped augmentation suggestions for one class."""
    try:
        dictionary = load_dictionary(dictionary_path or default_dictionary_path())
        mapping = load_mapping(mapping_path or default_mapping_path())
        groups = suggestions_for_class(ic_name, dictionary, mapping)
    except AccessLensError as exc:
        _fail(exc)
    for category in ("actuation", "indication", "constraint"):
        click.echo(f"[{category}]")
        designs = groups[category]
        if not designs:
            click.echo("  (no designs)")
        for design in designs:
            click.echo(f"  {design.design_id}  {design.title}  {design.source_url}")


@main.command("qa")
@click.argument("submissions", type=click.Path(exists=True, dir_okay=False))
@click.argument("ground_truth", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
def qa_cmd(submissions, ground_truth, as_json):
    """Validate crowd submissions, score accuracy, consolidate labels.

    GROUND_TRUTH is a JSON object of {design_id: label token}.
    """
    try:
        subs = qa.load_submissions(submissions)
        truth = json.loads(Path(ground_truth).read_text())
        verdicts = qa.validate_submissions(subs, truth)
        consolidations = qa.consolidate_all(verdicts)
        try:
            summary = qa.score_accuracy(verdicts)
            accuracy = {
                "valid": summary.valid_count,
                "correct": summary.correct_count,
                "accuracy": summary.accuracy,
            }
        except AccessLensError:
            summary = None
            accuracy = None
    except (AccessLensError, json.JSONDecodeError) as exc:
        _fail(exc)
    if as_json:
        payload = {
            "verdicts": qa.verdicts_to_dicts(verdicts),
            "accuracy": accuracy,
            "consolidations": [
                {"design_id": c.design_id, "label": c.label, "flagged": c.flagged}
                for c in consolidations
            ],
        }
        click.echo(json.dumps(payload, indent=1))
        return
    for v in verdicts:
        mark = "+" if v.correct_at_high_level else "-"
        click.echo(
            f"{v.submission.worker_id:>10} #{v.submission.submit_index:<4} "
            f"{v.submission.design_id:<10} {v.status:<8} {v.rule:<20} {mark}"
        )
    if summary is not None:
        click.echo(summary.render())
    flagged = sum(c.flagged for c in consolidations)
    click.echo(f"consolidated: {len(consolidations)} designs, {flagged} flagged")


@main.group("dict")
def dict_group():
    """Dictionary utilities."""


@dict_group.command("validate")
@click.argument("dictionary", type=click.Path(exists=True, dir_okay=False))
def dict_validate(dictionary):
    """Check dictionary invariants (unique ids, label tokens, object index)."""
    try:
        d = load_dictionary(dictionary)
    except AccessLensError as exc:
        _fail(exc)
    click.echo(
        f"ok: {len(d.designs)} designs, {len(d.object_classes)} object classes, "
        f"version {d.version}"
    )


@main.command()
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option(
    "--detector-mode",
    type=click.Choice(["stub", "file", "remote", "oracle"]),
    default=None,
)
@click.option("--detector-path", type=click.Path(), default=None)
@click.option("--detector-endpoint", default=None)
@click.option("--storage-dir", type=click.Path(file_okay=False), default=None)
@click.option(
    "--webapp-dir",
    type=click.Path(exists=True, file_okay=False),
    default=None,
    help="Serve the built web UI from this directory at /.",
)
@click.pass_context
def serve(ctx, host, port, detector_mode, detector_path, detector_endpoint,
          storage_dir, webapp_dir):
    """Run the scan-and-suggest web service."""
    import uvicorn

    from .service.app import create_app

    try:
        config = load_config(
            ctx.obj,
            host=host,
            port=port,
            detector_mode=detector_mode,
            detector_path=detector_path,
            detector_endpoint=detector_endpoint,
            storage_dir=storage_dir,
            webapp_dir=webapp_dir,
        )
        app = create_app(config)
    except AccessLensError as exc:
        _fail(exc)
    uvicorn.run(app, host=config.host, port=config.port)


if __name__ == "__main__":
    main()
