"""Scoring predicted scenes against ground truth.

Two measures are reported: scene-count accuracy, ``min(pred, truth) /
max(pred, truth)``, and boundary precision/recall/F1 under a +/- tolerance
window with one-to-one matching.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Optional, Sequence

from .errors import EvaluationError

DEFAULT_TOLERANCE = 2


@dataclass(frozen=True)
class GroundTruth:
    """Scene starts (excluding frame 0), or just a scene count."""

    scene_count: int
    boundaries: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.boundaries is not None:
            b = tuple(int(x) for x in self.boundaries)
            _check_sorted(b, "truth boundaries")
            if b and b[0] < 1:
                raise EvaluationError("truth boundaries must be >= 1")
            if self.scene_count != len(b) + 1:
                raise EvaluationError(
                    f"scene_count {self.scene_count} disagrees with {len(b)} boundaries"
                )
            object.__setattr__(self, "boundaries", b)
        elif self.scene_count < 0:
            raise EvaluationError(f"scene_count must be nonnegative, got {self.scene_count}")

    @classmethod
    def from_boundaries(cls, boundaries: Sequence[int]) -> "GroundTruth":
        return cls(len(boundaries) + 1, tuple(boundaries))

    @classmethod
    def from_dict(cls, obj: dict) -> "GroundTruth":
        if not isinstance(obj, dict):
            raise EvaluationError("ground truth must be a JSON object")
        if "boundaries" in obj and obj["boundaries"] is not None:
            b = obj["boundaries"]
            if not isinstance(b, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in b):
                raise EvaluationError("'boundaries' must be a list of integers")
            count = obj.get("scene_count", len(b) + 1)
            return cls(count, tuple(b))
        if "scene_count" in obj:
            count = obj["scene_count"]
            if not isinstance(count, int) or isinstance(count, bool):
                raise EvaluationError("'scene_count' must be an integer")
            return cls(count)
        raise EvaluationError("ground truth needs 'boundaries' or 'scene_count'")

    def to_dict(self) -> dict:
        if self.boundaries is None:
            return {"scene_count": self.scene_count}
        return {"boundaries": list(self.boundaries), "scene_count": self.scene_count}


@dataclass(frozen=True)
class EvalReport:
    predicted_count: int
    truth_count: int
    count_accuracy: float
    boundary_precision: Optional[float]
    boundary_recall: Optional[float]
    boundary_f1: Optional[float]
    tolerance: int

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_sorted(values: Sequence[int], what: str) -> None:
    for a, b in zip(values, values[1:]):
        if b <= a:
            raise EvaluationError(f"{what} must be strictly increasing ({a} then {b})")


def count_accuracy(predicted: int, truth: int) -> float:
    if predicted < 0 or truth < 0:
        raise EvaluationError("scene counts must be nonnegative")
    if predicted == truth:
        return 1.0
    return min(predicted, truth) / max(predicted, truth)


def format_percent(ratio: float, places: int = 2) -> str:
    """Render a ratio as a percentage, rounding half up: 0.828571 -> '82.86%'."""
    quantum = Decimal(1).scaleb(-places)
    value = (Decimal(repr(ratio)) * 100).quantize(quantum, rounding=ROUND_HALF_UP)
    return f"{value}%"


def boundary_match(predicted: Sequence[int], truth: Sequence[int],
                   tolerance: int = DEFAULT_TOLERANCE) -> tuple[float, float, float]:
    """Precision, recall and F1 of predicted boundaries within +/- ``tolerance`` frames.

    Truth boundaries are taken in order; each claims the nearest still
    unmatched prediction inside its window (earlier prediction on a tie).
    Empty lists on both sides score 1/1/1; an empty side otherwise scores 0.
    """
    predicted = list(predicted)
    truth = list(truth)
    _check_sorted(predicted, "predicted boundaries")
    _check_sorted(truth, "truth boundaries")
    if tolerance < 0:
        raise EvaluationError(f"tolerance must be nonnegative, got {tolerance}")
    if not predicted and not truth:
        return 1.0, 1.0, 1.0
    used = [False] * len(predicted)
    matches = 0
    for t in truth:
        best = None
        for i, p in enumerate(predicted):
            if used[i] or abs(p - t) > tolerance:
                continue
            if best is None or abs(p - t) < abs(predicted[best] - t):
                best = i
        if best is not None:
            used[best] = True
            matches += 1
    precision = matches / len(predicted) if predicted else 0.0
    recall = matches / len(truth) if truth else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def evaluate(predicted: GroundTruth, truth: GroundTruth,
             tolerance: int = DEFAULT_TOLERANCE) -> EvalReport:
    """Score a prediction; boundary metrics are ``None`` if either side is count-only."""
    acc = count_accuracy(predicted.scene_count, truth.scene_count)
    if predicted.boundaries is None or truth.boundaries is None:
        p = r = f = None
    else:
        p, r, f = boundary_match(predicted.boundaries, truth.boundaries, tolerance)
    return EvalReport(predicted.scene_count, truth.scene_count, acc, p, r, f, tolerance)


def scenes_to_truth(scenes) -> GroundTruth:
    """Boundaries implied by an ordered scene list (dicts or Scene objects)."""
    starts = [s["start_frame"] if isinstance(s, dict) else s.start_frame for s in scenes]
    return GroundTruth.from_boundaries(starts[1:])


def load_truth(path) -> GroundTruth:
    """Read ground truth or a prediction from disk.

    Accepts a JSON object (``{"boundaries": [...]}`` or ``{"scene_count": N}``)
    or scene JSON Lines as written by the segmenter.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise EvaluationError(f"{path}: cannot read ({exc.strerror or exc})") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    try:
        objs = [json.loads(ln) for ln in lines]
    except json.JSONDecodeError:
        try:
            objs = [json.loads(text)]
        except json.JSONDecodeError as exc:
            raise EvaluationError(f"{path}: malformed JSON ({exc.msg})") from None
    if len(objs) == 1 and isinstance(objs[0], dict) and "start_frame" not in objs[0]:
        return GroundTruth.from_dict(objs[0])
    if not all(isinstance(o, dict) and "start_frame" in o for o in objs):
        raise EvaluationError(f"{path}: expected a ground-truth object or scene JSON Lines")
    return scenes_to_truth(objs)


def format_table(rows: Sequence[tuple[str, EvalReport]]) -> str:
    """Aligned text table: experiment name, output - truth counts, accuracy."""
    header = ("Experiment", "Output - Truth", "Accuracy", "P", "R", "F1")
    body = []
    for name, rep in rows:
        metrics = [
            "-" if v is None else f"{v:.4f}"
            for v in (rep.boundary_precision, rep.boundary_recall, rep.boundary_f1)
        ]
        body.append((name, f"{rep.predicted_count} - {rep.truth_count}",
                     format_percent(rep.count_accuracy), *metrics))
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]

    def line(cells):
        first = cells[0].ljust(widths[0])
        return "  ".join([first] + [c.rjust(w) for c, w in zip(cells[1:], widths[1:])])

    rule = "-" * len(line(header))
    return "\n".join([line(header), rule, *(line(r) for r in body)]) + "\n"
