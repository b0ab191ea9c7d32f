"""Deterministic synthetic videos with known scene boundaries.

Each scene is a random 8 x 9 grid of colors stretched over the frame on the
same tiling the hasher uses, so the downsampled sub-image of a noise-free
frame is exactly the drawn grid.  A uniform color would not work: every
constant frame hashes to zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .dhash import HASH_COLS, HASH_ROWS, MIN_HEIGHT, MIN_WIDTH, hamming, hash_rows, tile_edges, to_gray
from .pixel_io import Frame
from .segmenter import DEFAULT_THRESHOLD


@dataclass(frozen=True)
class SynthSpec:
    scene_count: int
    frames_per_scene: int
    width: int = 320
    height: int = 240
    rng_seed: int = 0
    noise_amplitude: int = 0

    def __post_init__(self):
        if self.scene_count < 1:
            raise ValueError(f"scene_count must be positive, got {self.scene_count}")
        if self.frames_per_scene < 1:
            raise ValueError(f"frames_per_scene must be positive, got {self.frames_per_scene}")
        if self.width < MIN_WIDTH or self.height < MIN_HEIGHT:
            raise ValueError(
                f"frame {self.width}x{self.height} below {MIN_WIDTH}x{MIN_HEIGHT} minimum"
            )
        if not 0 <= self.noise_amplitude <= 255:
            raise ValueError(f"noise_amplitude must be in [0, 255], got {self.noise_amplitude}")
        if not -(1 << 63) <= self.rng_seed < (1 << 64):
            raise ValueError(f"rng_seed must fit in 64 bits, got {self.rng_seed}")

    @property
    def total_frames(self) -> int:
        return self.scene_count * self.frames_per_scene

    def boundaries(self) -> list[int]:
        """Frame indices at which scenes 1..n-1 start."""
        return [k * self.frames_per_scene for k in range(1, self.scene_count)]


def _cell_index(size: int, cells: int) -> np.ndarray:
    edges = tile_edges(size, cells)
    return np.searchsorted(edges, np.arange(size), side="right") - 1


def _scene_grids(rng, count, threshold):
    # redraw until the hash differs from the previous scene by > threshold bits
    previous = None
    for _ in range(count):
        while True:
            grid = rng.integers(0, 256, size=(HASH_ROWS, HASH_COLS, 3), dtype=np.uint8)
            h = hash_rows(to_gray(grid))
            if previous is None or hamming(previous, h) > threshold:
                break
        previous = h
        yield grid


def generate_synthetic(spec: SynthSpec) -> Iterator[Frame]:
    """Yield ``spec.total_frames`` frames, ``frames_per_scene`` per scene.

    Equal specs give byte-identical streams.  With ``noise_amplitude`` a > 0
    every pixel channel is jittered by a uniform integer in [-a, a] and
    clipped to [0, 255].
    """
    rng = np.random.default_rng(spec.rng_seed & ((1 << 64) - 1))
    rows = _cell_index(spec.height, HASH_ROWS)
    cols = _cell_index(spec.width, HASH_COLS)
    amp = spec.noise_amplitude
    index = 0
    for grid in _scene_grids(rng, spec.scene_count, DEFAULT_THRESHOLD):
        base = np.ascontiguousarray(grid[rows][:, cols])
        base.flags.writeable = False
        for _ in range(spec.frames_per_scene):
            if amp:
                jitter = rng.integers(-amp, amp + 1, size=base.shape, dtype=np.int16)
                pixels = np.clip(base.astype(np.int16) + jitter, 0, 255).astype(np.uint8)
            else:
                pixels = base
            yield Frame(index, pixels)
            index += 1
