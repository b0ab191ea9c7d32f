"""Single-pass scene separation over a stream of frame hashes.

Each frame's hash is compared with the immediately preceding frame's.  When
the Hamming distance is strictly greater than the threshold, the open scene
closes at the previous frame and a new one starts.  The segmenter keeps a
constant amount of state no matter how long the stream runs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, Optional

from .dhash import FrameHash, hamming, hash_frame
from .errors import SegmenterError

if TYPE_CHECKING:
    from .selector import RecognitionRecord

DEFAULT_THRESHOLD = 5


@dataclass(frozen=True)
class Scene:
    scene_id: int
    start_frame: int
    end_frame: int
    representative: Optional["RecognitionRecord"] = None

    def __post_init__(self):
        if self.start_frame < 0 or self.end_frame < self.start_frame:
            raise ValueError(f"invalid scene interval [{self.start_frame}, {self.end_frame}]")

    @property
    def length(self) -> int:
        return self.end_frame - self.start_frame + 1

    def to_dict(self) -> dict:
        return {
            "scene_id": self.scene_id,
            "start_frame": self.start_frame,
            "end_frame": self.end_frame,
            "length": self.length,
        }


@dataclass(frozen=True)
class SegmenterConfig:
    threshold: int = DEFAULT_THRESHOLD

    def __post_init__(self):
        if not 0 <= self.threshold <= 64:
            raise ValueError(f"threshold must be in [0, 64], got {self.threshold}")


class Segmenter:
    """Streaming scene separator.

    >>> seg = Segmenter(threshold=5)
    >>> seg.push(FrameHash(0), 0) is None
    True
    >>> seg.push(FrameHash(2**64 - 1), 1)
    Scene(scene_id=0, start_frame=0, end_frame=0, representative=None)
    >>> seg.flush()
    Scene(scene_id=1, start_frame=1, end_frame=1, representative=None)
    """

    __slots__ = ("threshold", "_previous", "_last_index", "_start", "_scene_id", "_flushed")

    def __init__(self, threshold: int = DEFAULT_THRESHOLD):
        self.threshold = SegmenterConfig(threshold).threshold
        self._previous: Optional[FrameHash] = None
        self._last_index = -1
        self._start = 0
        self._scene_id = 0
        self._flushed = False

    @property
    def frames_seen(self) -> int:
        return self._last_index + 1

    def push(self, frame_hash: FrameHash, frame_index: int) -> Optional[Scene]:
        """Feed the next frame's hash; return the scene it closes, if any."""
        if self._flushed:
            raise SegmenterError("segmenter already flushed")
        if frame_index != self._last_index + 1:
            raise SegmenterError(
                f"non-consecutive frame index {frame_index}, expected {self._last_index + 1}"
            )
        previous = self._previous
        self._previous = frame_hash
        self._last_index = frame_index
        if previous is None or hamming(previous, frame_hash) <= self.threshold:
            return None
        closed = Scene(self._scene_id, self._start, frame_index - 1)
        self._scene_id += 1
        self._start = frame_index
        return closed

    def flush(self) -> Scene:
        """Close and return the open scene at the end of the stream."""
        if self._flushed:
            raise SegmenterError("segmenter already flushed")
        if self._previous is None:
            raise SegmenterError("empty stream")
        self._flushed = True
        return Scene(self._scene_id, self._start, self._last_index)


def iter_scenes(hashes: Iterable[FrameHash], threshold: int = DEFAULT_THRESHOLD) -> Iterator[Scene]:
    """Yield scenes as they close from an in-order stream of hashes."""
    seg = Segmenter(threshold)
    for index, h in enumerate(hashes):
        scene = seg.push(h, index)
        if scene is not None:
            yield scene
    yield seg.flush()


def iter_frame_scenes(frames, threshold: int = DEFAULT_THRESHOLD) -> Iterator[Scene]:
    """Hash frames on the fly and yield scenes as they close."""
    seg = Segmenter(threshold)
    for frame in frames:
        scene = seg.push(hash_frame(frame), frame.index)
        if scene is not None:
            yield scene
    yield seg.flush()


def segment_stream(frames, config: SegmenterConfig | None = None) -> list[Scene]:
    config = config or SegmenterConfig()
    return list(iter_frame_scenes(frames, config.threshold))

