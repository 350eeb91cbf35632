"""Crowdsourced-annotation quality control.

Per-worker accept/reject rules, accuracy scoring at the high-level category,
and 3-way consolidation. The rules are an auditable list, applied in a fixed
order per worker batch:

  R1 identical_incorrect  every annotation identical and incorrect -> reject all
  R2 junk_custom_label    free-text label is empty, a stock phrase, or a copy
                          of the design's title/description -> reject that HIT
  R3 fast_incorrect       every annotation incorrect and under the time
                          threshold -> reject all
  R4 over_quota           submissions beyond the per-worker quota -> reject

An annotation is correct when any chosen label's high-level category equals
the reference label's category; choosing a sibling subcategory is fine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import taxonomy
from .errors import MissingGroundTruth, NoValidSubmissions, ParseError, ValidationError

OTHERS = "others"

ACCEPTED = "accepted"
REJECTED = "rejected"

RULE_OK = "ok"
RULE_IDENTICAL = "identical_incorrect"
RULE_JUNK = "junk_custom_label"
RULE_FAST = "fast_incorrect"
RULE_QUOTA = "over_quota"

DEFAULT_STOP_PHRASES = (
    "good design",
    "nice design",
    "great",
    "we and our 814 partners",
)


@dataclass(frozen=True)
class QaConfig:
    fast_seconds: float = 40.0
    hit_quota: int = 100
    stop_phrases: tuple[str, ...] = DEFAULT_STOP_PHRASES


@dataclass(frozen=True)
class HitSubmission:
    worker_id: str
    design_id: str
    chosen_labels: tuple[str, ...]
    custom_label: str | None
    duration_seconds: float
    submit_index: int

    def __post_init__(self):
        if not self.chosen_labels:
            raise ValidationError("a submission must choose at least one label")
        if (OTHERS in self.chosen_labels) != (self.custom_label is not None):
            raise ValidationError(
                "custom_label must be present exactly when 'others' is chosen"
            )
        for token in self.chosen_labels:
            if token == OTHERS:
                continue
            try:
                taxonomy.split_label_token(token)
            except Exception as exc:
                raise ValidationError(f"unknown label token {token!r}") from exc
        if self.duration_seconds < 0:
            raise ValidationError("duration cannot be negative")

    def category_votes(self) -> frozenset[str]:
        return frozenset(
            taxonomy.high_level_category(t) for t in self.chosen_labels if t != OTHERS
        )


@dataclass(frozen=True)
class QaVerdict:
    submission: HitSubmission
    status: str
    rule: str
    correct_at_high_level: bool
    # chosen labels span more than one high-level category (scored correct if
    # any of them matches, but worth surfacing)
    cross_category: bool = False


def _normalize(text: str) -> str:
    return " ".join(text.lower().split())


def _is_junk_custom_label(
    submission: HitSubmission,
    config: QaConfig,
    design_texts: dict[str, tuple[str, str]] | None,
) -> bool:
    if OTHERS not in submission.chosen_labels:
        return False
    custom = _normalize(submission.custom_label or "")
    if not custom:
        return True
    if custom in {_normalize(p) for p in config.stop_phrases}:
        return True
    if design_texts and submission.design_id in design_texts:
        title, description = design_texts[submission.design_id]
        if custom in {_normalize(title), _normalize(description)} - {""}:
            return True
    return False


def _is_correct(submission: HitSubmission, truth_label: str) -> bool:
    return taxonomy.high_level_category(truth_label) in submission.category_votes()


def validate_worker_batch(
    submissions: list[HitSubmission],
    ground_truth: dict[str, str],
    config: QaConfig = QaConfig(),
    design_texts: dict[str, tuple[str, str]] | None = None,
) -> list[QaVerdict]:
    """Verdicts for one worker's submissions, in submission order.

    ground_truth maps design_id to its reference label token; design_texts
    optionally supplies (title, description) for the copy-paste junk check.
    """
    if not submissions:
        return []
    workers = {s.worker_id for s in submissions}
    if len(workers) != 1:
        raise ValidationError(f"batch spans multiple workers: {sorted(workers)}")
    for s in submissions:
        if s.design_id not in ground_truth:
            raise MissingGroundTruth(f"no reference label for design {s.design_id}")

    correct = [_is_correct(s, ground_truth[s.design_id]) for s in submissions]
    all_incorrect = not any(correct)

    # R1: a spammed constant answer; needs at least two entries to compare.
    answers = {(frozenset(s.chosen_labels), s.custom_label) for s in submissions}
    if len(submissions) >= 2 and len(answers) == 1 and all_incorrect:
        return [
            QaVerdict(s, REJECTED, RULE_IDENTICAL, correct_at_high_level=False)
            for s in submissions
        ]

    # R3 is evaluated over the whole batch as well.
    batch_fast_incorrect = all_incorrect and all(
        s.duration_seconds < config.fast_seconds for s in submissions
    )

    verdicts = []
    for s, ok in zip(submissions, correct):
        if _is_junk_custom_label(s, config, design_texts):
            verdicts.append(QaVerdict(s, REJECTED, RULE_JUNK, False))
        elif batch_fast_incorrect:
            verdicts.append(QaVerdict(s, REJECTED, RULE_FAST, False))
        elif s.submit_index > config.hit_quota:
            verdicts.append(QaVerdict(s, REJECTED, RULE_QUOTA, False))
        else:
            verdicts.append(
                QaVerdict(
                    s,
                    ACCEPTED,
                    RULE_OK,
                    correct_at_high_level=ok,
                    cross_category=len(s.category_votes()) > 1,
                )
            )
    return verdicts


def validate_submissions(
    submissions: list[HitSubmission],
    ground_truth: dict[str, str],
    config: QaConfig = QaConfig(),
    design_texts: dict[str, tuple[str, str]] | None = None,
) -> list[QaVerdict]:
    """Group by worker, validate each batch, and restore input order."""
    by_worker: dict[str, list[HitSubmission]] = {}
    for s in submissions:
        by_worker.setdefault(s.worker_id, []).append(s)
    verdict_by_key: dict[int, QaVerdict] = {}
    for batch in by_worker.values():
        for verdict in validate_worker_batch(batch, ground_truth, config, design_texts):
            verdict_by_key[id(verdict.submission)] = verdict
    return [verdict_by_key[id(s)] for s in submissions]


@dataclass(frozen=True)
class AccuracySummary:
    valid_count: int
    correct_count: int

    @property
    def accuracy(self) -> float:
        return self.correct_count / self.valid_count

    def render(self) -> str:
        return (
            f"{self.correct_count}/{self.valid_count} correct "
            f"({self.accuracy:.0%} match)"
        )


def score_accuracy(verdicts: list[QaVerdict]) -> AccuracySummary:
    """Accuracy over accepted submissions only."""
    accepted = [v for v in verdicts if v.status == ACCEPTED]
    if not accepted:
        raise NoValidSubmissions("no accepted submissions to score")
    return AccuracySummary(
        valid_count=len(accepted),
        correct_count=sum(v.correct_at_high_level for v in accepted),
    )


@dataclass(frozen=True)
class Consolidation:
    design_id: str
    label: str | None
    flagged: bool
    votes: tuple[str, ...] = field(default=())


def consolidate(design_id: str, verdicts: list[QaVerdict]) -> Consolidation:
    """Majority vote at the high-level category over accepted annotations.

    Fewer than three usable votes, or a three-way split, flags the design for
    re-annotation. An annotation contributes a vote only when its labels agree
    on a single category.
    """
    votes = []
    for v in verdicts:
        if v.status != ACCEPTED or v.submission.design_id != design_id:
            continue
        cats = v.submission.category_votes()
        if len(cats) == 1:
            votes.append(next(iter(cats)))
    if len(votes) < 3:
        return Consolidation(design_id, None, flagged=True, votes=tuple(votes))
    tally: dict[str, int] = {}
    for vote in votes:
        tally[vote] = tally.get(vote, 0) + 1
    winner, count = max(tally.items(), key=lambda kv: kv[1])
    if count * 2 <= len(votes):
        return Consolidation(design_id, None, flagged=True, votes=tuple(votes))
    return Consolidation(design_id, winner, flagged=False, votes=tuple(votes))


def consolidate_all(verdicts: list[QaVerdict]) -> list[Consolidation]:
    design_ids = sorted({v.submission.design_id for v in verdicts})
    return [consolidate(d, verdicts) for d in design_ids]


def load_submissions(path: str | Path) -> list[HitSubmission]:
    """Submissions file: a JSON array of HitSubmission records."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot parse submissions {path}: {exc}") from exc
    if not isinstance(raw, list):
        raise ParseError("submissions file must be a JSON array")
    out = []
    for i, entry in enumerate(raw):
        try:
            out.append(
                HitSubmission(
                    worker_id=str(entry["worker_id"]),
                    design_id=str(entry["design_id"]),
                    chosen_labels=tuple(entry["chosen_labels"]),
                    custom_label=entry.get("custom_label"),
                    duration_seconds=float(entry["duration_seconds"]),
                    submit_index=int(entry["submit_index"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"submission entry {i}: {exc}") from exc
    return out


def verdicts_to_dicts(verdicts: list[QaVerdict]) -> list[dict]:
    return [
        {
            "worker_id": v.submission.worker_id,
            "design_id": v.submission.design_id,
            "submit_index": v.submission.submit_index,
            "status": v.status,
            "rule": v.rule,
            "correct_at_high_level": v.correct_at_high_level,
            "cross_category": v.cross_category,
        }
        for v in verdicts
    ]
