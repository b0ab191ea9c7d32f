"""JSON Lines interchange for per-frame detector output.

One object per line::

    {"frame": 12, "labels": ["person", "person", "car"]}

Frame numbers must be nonnegative and strictly increasing.  Frames absent
from the file simply have no record; a frame the detector ran on but found
nothing in is written with an empty ``labels`` list.
"""
from __future__ import annotations

import io
import json
from pathlib import Path
from typing import Iterable, Iterator

from .errors import DetectionsError
from .selector import RecognitionRecord


def _lines(source) -> Iterator[str]:
    if isinstance(source, (bytes, bytearray, memoryview)):
        source = io.BytesIO(bytes(source))
    elif isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            yield from _lines(fh)
        return
    for raw in source:
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise DetectionsError(f"invalid UTF-8: {exc}") from None
        yield raw


def _parse_line(text: str, lineno: int) -> RecognitionRecord:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DetectionsError(f"line {lineno}: malformed JSON ({exc.msg})") from None
    if not isinstance(obj, dict):
        raise DetectionsError(f"line {lineno}: expected a JSON object")
    frame = obj.get("frame")
    labels = obj.get("labels")
    if not isinstance(frame, int) or isinstance(frame, bool):
        raise DetectionsError(f"line {lineno}: 'frame' must be an integer")
    if frame < 0:
        raise DetectionsError(f"line {lineno}: negative frame {frame}")
    if not isinstance(labels, list):
        raise DetectionsError(f"line {lineno}: 'labels' must be a list")
    for label in labels:
        if not isinstance(label, str) or not label:
            raise DetectionsError(f"line {lineno}: labels must be nonempty strings")
    return RecognitionRecord(frame, tuple(labels))


def iter_detections(source) -> Iterator[RecognitionRecord]:
    """Lazily parse detection records from a path, bytes, or binary/text file.

    Blank lines are skipped but still counted for error line numbers.
    """
    previous = None
    for lineno, line in enumerate(_lines(source), start=1):
        if not line.strip():
            continue
        record = _parse_line(line, lineno)
        if previous is not None and record.frame_index <= previous:
            raise DetectionsError(
                f"line {lineno}: frame {record.frame_index} does not follow frame {previous}"
            )
        previous = record.frame_index
        yield record


def parse_detections(source) -> list[RecognitionRecord]:
    return list(iter_detections(source))


def record_to_json(record: RecognitionRecord) -> str:
    return json.dumps({"frame": record.frame_index, "labels": list(record.labels)})


def dump_detections(records: Iterable[RecognitionRecord]) -> str:
    return "".join(record_to_json(r) + "\n" for r in records)
