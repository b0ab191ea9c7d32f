"""Difference hash of a video frame and Hamming distance between hashes.

A frame is reduced to an 8 x 9 grid by box averaging, converted to gray with
Rec. 709 luminosity weights, and each row of 9 gray values yields 8 bits
(1 where the left pixel is strictly brighter than its right neighbour).  The
eight row bytes are packed top row first into one 64-bit integer.

All arithmetic is integer with round-half-up, so hashes are bit-exact and
independent of the platform's floating point.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

HASH_ROWS = 8
HASH_COLS = 9
MIN_WIDTH = HASH_COLS
MIN_HEIGHT = HASH_ROWS

# Rec. 709 luma weights scaled by 10**4; they sum to exactly 10**4.
LUMA_WEIGHTS = np.array([2126, 7152, 722], dtype=np.int64)
_LUMA_SCALE = 10_000

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True, order=True)
class FrameHash:
    """A 64-bit difference hash.

    ``hex`` is the canonical 16-character lowercase rendering.
    """

    bits: int

    def __post_init__(self):
        if not isinstance(self.bits, (int, np.integer)) or isinstance(self.bits, bool):
            raise TypeError(f"hash bits must be an integer, got {type(self.bits).__name__}")
        if not 0 <= self.bits <= _MASK64:
            raise ValueError(f"hash bits out of 64-bit range: {self.bits}")
        object.__setattr__(self, "bits", int(self.bits))

    @property
    def hex(self) -> str:
        return f"{self.bits:016x}"

    @classmethod
    def from_hex(cls, text: str) -> "FrameHash":
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        if len(text) != 16:
            raise ValueError(f"expected 16 hex digits, got {len(text)}: {text!r}")
        return cls(int(text, 16))

    def __str__(self) -> str:
        return self.hex


def tile_edges(size: int, cells: int) -> np.ndarray:
    """Boundaries ``floor(k * size / cells)`` for k = 0..cells."""
    return np.arange(cells + 1, dtype=np.int64) * size // cells


def _pixels(frame) -> np.ndarray:
    pixels = getattr(frame, "pixels", frame)
    pixels = np.asarray(pixels)
    if pixels.ndim != 3 or pixels.shape[2] != 3:
        raise ValueError(f"expected an (H, W, 3) RGB array, got shape {pixels.shape}")
    h, w = pixels.shape[:2]
    if w < MIN_WIDTH or h < MIN_HEIGHT:
        raise ValueError(f"frame {w}x{h} below {MIN_WIDTH}x{MIN_HEIGHT} minimum")
    return pixels


@functools.lru_cache(maxsize=32)
def _tiling(h: int, w: int):
    rows = tile_edges(h, HASH_ROWS)
    cols = tile_edges(w, HASH_COLS)
    counts = (np.diff(rows)[:, None] * np.diff(cols)[None, :]).astype(np.uint64)[..., None]
    return tuple(int(x) for x in rows), cols[:-1], counts


def downsample(frame) -> np.ndarray:
    """Box-average a frame onto an 8 x 9 RGB grid.

    Cell (r, c) averages source rows ``[floor(r*H/8), floor((r+1)*H/8))`` and
    columns ``[floor(c*W/9), floor((c+1)*W/9))`` per channel, rounded half
    up.  Accepts a :class:`~twosds.pixel_io.Frame` or an (H, W, 3) array.
    Returns a uint8 array of shape (8, 9, 3).
    """
    pixels = _pixels(frame)
    h, w = pixels.shape[:2]
    rows, col_starts, counts = _tiling(h, w)
    flat = pixels.reshape(h, w * 3)
    bands = np.stack([
        flat[rows[r]:rows[r + 1]].sum(axis=0, dtype=np.uint64) for r in range(HASH_ROWS)
    ]).reshape(HASH_ROWS, w, 3)
    sums = np.add.reduceat(bands, col_starts, axis=1)
    means = (2 * sums + counts) // (2 * counts)
    return means.astype(np.uint8)


def to_gray(subimage) -> np.ndarray:
    """Luminosity conversion of an 8 x 9 RGB grid to 8 x 9 gray values."""
    rgb = np.asarray(subimage, dtype=np.int64)
    if rgb.shape != (HASH_ROWS, HASH_COLS, 3):
        raise ValueError(f"expected an 8x9 RGB sub-image, got shape {rgb.shape}")
    gray = (rgb @ LUMA_WEIGHTS + _LUMA_SCALE // 2) // _LUMA_SCALE
    return np.clip(gray, 0, 255).astype(np.uint8)


def hash_rows(gray) -> FrameHash:
    """Pack the strict left-greater-than-right comparisons of each row."""
    gray = np.asarray(gray)
    if gray.shape != (HASH_ROWS, HASH_COLS):
        raise ValueError(f"expected an 8x9 gray sub-image, got shape {gray.shape}")
    if gray.dtype.kind not in "iu":
        raise TypeError(f"gray values must be integers, got dtype {gray.dtype}")
    if gray.size and (gray.min() < 0 or gray.max() > 255):
        raise ValueError("gray values must lie in [0, 255]")
    bits = gray[:, :-1] > gray[:, 1:]
    return FrameHash(int.from_bytes(np.packbits(bits, axis=1).tobytes(), "big"))


def hash_frame(frame) -> FrameHash:
    return hash_rows(to_gray(downsample(frame)))


def hamming(a, b) -> int:
    """Number of differing bits between two hashes (FrameHash or int)."""
    if not isinstance(a, FrameHash):
        a = FrameHash(a)
    if not isinstance(b, FrameHash):
        b = FrameHash(b)
    return (a.bits ^ b.bits).bit_count()
