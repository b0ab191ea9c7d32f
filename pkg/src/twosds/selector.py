"""Per-scene smoothing and selection of detector results.

A scene's per-frame records are cut into consecutive groups of
``group_size``.  Each group is pooled to the record whose label count is
closest to the group's length-weighted average length; these pooled records
are the scene's candidates.  The representative is the candidate whose
number of distinct labels is closest to the candidates' intensity-weighted
average.  Ties go to the earliest frame.

Weighted averages are computed with exact rational arithmetic, so the choice
of ``weight_factor`` (which cancels algebraically) never changes a result.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import SelectionError
from .segmenter import Scene

DEFAULT_GROUP_SIZE = 5
DEFAULT_WEIGHT_FACTOR = 0.1


@dataclass(frozen=True)
class RecognitionRecord:
    """Detector output for one frame: an ordered list of class labels."""

    frame_index: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.frame_index < 0:
            raise ValueError(f"frame_index must be nonnegative, got {self.frame_index}")
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def length(self) -> int:
        return len(self.labels)

    @property
    def feature_intensity(self) -> int:
        return len(set(self.labels))


@dataclass(frozen=True)
class SelectorConfig:
    group_size: int = DEFAULT_GROUP_SIZE
    weight_factor: float = DEFAULT_WEIGHT_FACTOR

    def __post_init__(self):
        if self.group_size < 1:
            raise ValueError(f"group_size must be >= 1, got {self.group_size}")
        if not self.weight_factor > 0:
            raise ValueError(f"weight_factor must be > 0, got {self.weight_factor}")


def _self_weighted_mean(values: Sequence[int], weight_factor) -> Fraction:
    # sum(v * w) / sum(w) with w = weight_factor * v; 0 when every v is 0
    c = Fraction(weight_factor)
    weights = [c * v for v in values]
    total = sum(weights, Fraction(0))
    if total == 0:
        return Fraction(0)
    return sum((v * w for v, w in zip(values, weights)), Fraction(0)) / total


def _closest(records: Sequence[RecognitionRecord], key, target: Fraction) -> RecognitionRecord:
    return min(records, key=lambda r: (abs(key(r) - target), r.frame_index))


def weighted_average_length(group: Sequence[RecognitionRecord],
                            weight_factor: float = DEFAULT_WEIGHT_FACTOR) -> float:
    """Length-weighted average of label counts, i.e. sum(L^2) / sum(L)."""
    if not group:
        raise SelectionError("empty group")
    return float(_self_weighted_mean([r.length for r in group], weight_factor))


def smooth_group(group: Sequence[RecognitionRecord],
                 weight_factor: float = DEFAULT_WEIGHT_FACTOR) -> RecognitionRecord:
    """Return the record whose length is closest to the group's weighted average length."""
    if not group:
        raise SelectionError("empty group")
    wal = _self_weighted_mean([r.length for r in group], weight_factor)
    return _closest(group, lambda r: r.length, wal)


def smooth_scene(records: Sequence[RecognitionRecord],
                 config: SelectorConfig | None = None) -> list[RecognitionRecord]:
    config = config or SelectorConfig()
    size = config.group_size
    return [
        smooth_group(records[i:i + size], config.weight_factor)
        for i in range(0, len(records), size)
    ]


def weighted_average_intensity(candidates: Sequence[RecognitionRecord],
                               weight_factor: float = DEFAULT_WEIGHT_FACTOR) -> float:
    if not candidates:
        raise SelectionError("scene has no detections")
    return float(_self_weighted_mean([r.feature_intensity for r in candidates], weight_factor))


def select_representative(candidates: Sequence[RecognitionRecord],
                          config: SelectorConfig | None = None) -> RecognitionRecord:
    config = config or SelectorConfig()
    if not candidates:
        raise SelectionError("scene has no detections")
    waf = _self_weighted_mean([r.feature_intensity for r in candidates], config.weight_factor)
    return _closest(candidates, lambda r: r.feature_intensity, waf)


def representative_for(records: Sequence[RecognitionRecord],
                       config: SelectorConfig | None = None):
    """Smooth then select over one scene's records; ``None`` when there are none."""
    if not records:
        return None
    return select_representative(smooth_scene(records, config), config)


def check_record_order(records: Iterable[RecognitionRecord]) -> None:
    previous = None
    for r in records:
        if previous is not None:
            if r.frame_index == previous:
                raise SelectionError(f"duplicate record for frame {r.frame_index}")
            if r.frame_index < previous:
                raise SelectionError(
                    f"records out of order: frame {r.frame_index} after frame {previous}"
                )
        previous = r.frame_index


def annotate_scene(scene: Scene, records: Sequence[RecognitionRecord],
                   config: SelectorConfig | None = None) -> Scene:
    """Attach the representative of ``records`` (all inside ``scene``) to it."""
    return replace(scene, representative=representative_for(records, config))


def annotate_scenes(scenes: Sequence[Scene], records: Sequence[RecognitionRecord],
                    config: SelectorConfig | None = None) -> list[Scene]:
    """Give every scene the representative of the records falling inside it.

    ``records`` must be sorted by frame index without duplicates.  Scenes
    without records keep ``representative=None``.
    """
    records = list(records)
    check_record_order(records)
    if scenes and records and records[-1].frame_index > scenes[-1].end_frame:
        raise SelectionError(
            f"record for frame {records[-1].frame_index} lies past the last scene "
            f"(ends at frame {scenes[-1].end_frame})"
        )
    frames = [r.frame_index for r in records]
    out = []
    for scene in scenes:
        lo = bisect.bisect_left(frames, scene.start_frame)
        hi = bisect.bisect_right(frames, scene.end_frame)
        out.append(annotate_scene(scene, records[lo:hi], config))
    return out
