"""
Hashing a frame
===============

A frame is box-averaged down to 8 rows x 9 columns, turned gray, and each
row of nine gray values gives eight bits: 1 where a pixel is brighter than
its right-hand neighbour.  Eight rows of eight bits make one 64-bit hash.
"""

import numpy as np

from twosds import FrameHash, downsample, hamming, hash_rows, to_gray
from twosds.synth import SynthSpec, generate_synthetic

# One synthetic 320x240 frame.
frame = next(generate_synthetic(SynthSpec(scene_count=1, frames_per_scene=1, rng_seed=1)))
print(frame)

# Step 1: downsample to the 8x9 grid.
grid = downsample(frame)
print("sub-image shape:", grid.shape)

# Step 2: luminosity gray.
gray = to_gray(grid)
print(gray)

# Step 3: row comparisons.
h = hash_rows(gray)
print("hash:", h.hex)
for r in range(8):
    print(f"row {r}: {gray[r].tolist()} -> {(h.bits >> (8 * (7 - r))) & 0xFF:08b}")

# A single row worked by hand: [5, 5, 9, 8, 7, 3, 6, 1, 1] gives 00111010.
row = np.zeros((8, 9), dtype=np.uint8)
row[0] = [5, 5, 9, 8, 7, 3, 6, 1, 1]
print("example row bits:", f"{hash_rows(row).bits >> 56:08b}")

# Hamming distance is the popcount of the XOR.
a = FrameHash.from_hex("c4e0d8988c989898")
b = FrameHash.from_hex("eee6989c8c989898")
print(f"{a} xor {b} -> {hamming(a, b)} differing bits")
