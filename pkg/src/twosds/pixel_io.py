"""Frame sources: Netpbm image sequences, raw RGB24 byte streams.

Only binary PPM (P6) and PGM (P5) with maxval 255 are decoded here.  Anything
else should be transcoded upstream and piped in through
:func:`read_raw_stream`.
"""
from __future__ import annotations

import io
import os
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Iterator

import numpy as np

from .dhash import MIN_HEIGHT, MIN_WIDTH
from .errors import IngestionError

PNM_SUFFIXES = (".ppm", ".pgm", ".pnm")


@dataclass(frozen=True, eq=False)
class Frame:
    """One RGB frame of a stream.

    ``pixels`` is a read-only uint8 array of shape (height, width, 3).
    """

    index: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.index < 0:
            raise IngestionError(f"frame index must be nonnegative, got {self.index}")
        pixels = self.pixels
        if not isinstance(pixels, np.ndarray) or pixels.dtype != np.uint8:
            pixels = np.asarray(pixels, dtype=np.uint8)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise IngestionError(f"frame {self.index}: expected (H, W, 3) pixels, got {pixels.shape}")
        h, w = pixels.shape[:2]
        if w < MIN_WIDTH or h < MIN_HEIGHT:
            raise IngestionError(
                f"frame {self.index}: {w}x{h} is below {MIN_WIDTH}x{MIN_HEIGHT} minimum"
            )
        if pixels.flags.writeable:
            pixels = pixels.view()
            pixels.flags.writeable = False
        object.__setattr__(self, "pixels", pixels)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def to_bytes(self) -> bytes:
        """Packed row-major RGB24 bytes."""
        return self.pixels.tobytes()

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return self.index == other.index and np.array_equal(self.pixels, other.pixels)

    def __repr__(self):
        return f"Frame(index={self.index}, width={self.width}, height={self.height})"


def _check_size(width: int, height: int, where: str) -> None:
    if width < MIN_WIDTH or height < MIN_HEIGHT:
        raise IngestionError(f"{where}: frame {width}x{height} below {MIN_WIDTH}x{MIN_HEIGHT} minimum")


# --- Netpbm -----------------------------------------------------------------

def _pnm_header(data: bytes, where: str):
    """Parse magic, width, height, maxval; return them plus the raster offset."""
    fields = []
    pos = 0
    n = len(data)
    while len(fields) < 4:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise IngestionError(f"{where}: truncated Netpbm header")
        fields.append(data[start:pos])
    # exactly one whitespace byte separates maxval from the raster
    if pos >= n or not data[pos:pos + 1].isspace():
        raise IngestionError(f"{where}: truncated Netpbm header")
    magic = fields[0]
    try:
        width, height, maxval = (int(f) for f in fields[1:])
    except ValueError:
        raise IngestionError(f"{where}: malformed Netpbm header") from None
    return magic, width, height, maxval, pos + 1


def decode_pnm(data: bytes, where: str = "<bytes>") -> np.ndarray:
    """Decode binary P6 or P5 data into an (H, W, 3) uint8 array.

    P5 gray values are replicated into all three channels.
    """
    if data[:2] not in (b"P5", b"P6"):
        raise IngestionError(f"{where}: not a binary PPM/PGM file (magic {data[:2]!r})")
    magic, width, height, maxval, offset = _pnm_header(data, where)
    if magic not in (b"P5", b"P6"):
        raise IngestionError(f"{where}: unsupported Netpbm magic {magic!r}")
    if maxval != 255:
        raise IngestionError(f"{where}: maxval {maxval} unsupported, only 255")
    if width <= 0 or height <= 0:
        raise IngestionError(f"{where}: invalid dimensions {width}x{height}")
    channels = 3 if magic == b"P6" else 1
    size = width * height * channels
    raster = data[offset:offset + size]
    if len(raster) < size:
        raise IngestionError(f"{where}: raster truncated, {len(raster)} of {size} bytes")
    arr = np.frombuffer(raster, dtype=np.uint8).reshape(height, width, channels)
    if channels == 1:
        arr = np.repeat(arr, 3, axis=2)
    return arr


def encode_ppm(pixels) -> bytes:
    pixels = np.asarray(pixels, dtype=np.uint8)
    h, w = pixels.shape[:2]
    return b"P6\n%d %d\n255\n" % (w, h) + pixels.tobytes()


def encode_pgm(gray) -> bytes:
    gray = np.asarray(gray, dtype=np.uint8)
    h, w = gray.shape
    return b"P5\n%d %d\n255\n" % (w, h) + gray.tobytes()


def read_pnm(path) -> np.ndarray:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IngestionError(f"{path}: cannot read ({exc.strerror or exc})") from exc
    return decode_pnm(data, str(path))


def write_ppm(path, pixels) -> None:
    Path(path).write_bytes(encode_ppm(pixels))


def write_pgm(path, gray) -> None:
    Path(path).write_bytes(encode_pgm(gray))


# --- frame sources ----------------------------------------------------------

def list_image_files(directory) -> list[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise IngestionError(f"{directory}: not a directory")
    names = sorted(
        name for name in os.listdir(directory)
        if name.lower().endswith(PNM_SUFFIXES) and not name.startswith(".")
    )
    return [directory / name for name in names]


def read_image_sequence(directory) -> Iterator[Frame]:
    """Yield frames from the Netpbm files in ``directory``, in filename order.

    Only files ending in .ppm, .pgm or .pnm are considered.  The directory is
    checked eagerly; decoding happens lazily as the iterator advances.
    """
    paths = list_image_files(directory)
    return _iter_sequence(paths)


def _iter_sequence(paths) -> Iterator[Frame]:
    first = None
    for index, path in enumerate(paths):
        pixels = read_pnm(path)
        h, w = pixels.shape[:2]
        _check_size(w, h, str(path))
        if first is None:
            first = (path, w, h)
        elif (w, h) != first[1:]:
            raise IngestionError(
                f"dimension mismatch: {first[0]} is {first[1]}x{first[2]} but {path} is {w}x{h}"
            )
        yield Frame(index, pixels)


def _read_exact(source: BinaryIO, size: int) -> bytes:
    chunks = []
    remaining = size
    while remaining:
        chunk = source.read(remaining)
        if not chunk:
            break
        chunks.append(chunk)
        remaining -= len(chunk)
    return b"".join(chunks)


def read_raw_stream(byte_source, width: int, height: int) -> Iterator[Frame]:
    """Split packed RGB24 bytes into frames of ``width`` x ``height``.

    ``byte_source`` is a bytes-like object or a binary file object (e.g.
    ``sys.stdin.buffer``).  A trailing partial frame raises
    :class:`IngestionError` after all complete frames have been yielded.
    """
    _check_size(width, height, "raw stream")
    if isinstance(byte_source, (bytes, bytearray, memoryview)):
        byte_source = io.BytesIO(bytes(byte_source))
    return _iter_raw(byte_source, width, height)


def _iter_raw(source: BinaryIO, width: int, height: int) -> Iterator[Frame]:
    frame_size = width * height * 3
    index = 0
    while True:
        chunk = _read_exact(source, frame_size)
        if not chunk:
            return
        if len(chunk) < frame_size:
            raise IngestionError(
                f"raw stream: {len(chunk)} trailing bytes after {index * frame_size} bytes "
                f"consumed; expected {frame_size} bytes per {width}x{height} frame"
            )
        pixels = np.frombuffer(chunk, dtype=np.uint8).reshape(height, width, 3)
        yield Frame(index, pixels)
        index += 1
