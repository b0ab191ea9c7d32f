"""
Picking one result per scene
============================

A detector produces a list of labels for every frame.  Each scene's frames
are pooled in groups: within a group the record whose label count is closest
to the length-weighted mean survives.  Among the survivors, the one whose
number of distinct labels is closest to the intensity-weighted mean becomes
the scene's representative.
"""

import random

from twosds import (
    RecognitionRecord,
    SelectorConfig,
    annotate_scenes,
    segment_stream,
    smooth_scene,
    weighted_average_length,
)
from twosds.synth import SynthSpec, generate_synthetic

# A broken frame (index 3) floods the group with labels.
group = [RecognitionRecord(i, labels) for i, labels in enumerate([
    ("person", "car"), ("person", "car"), ("person", "dog"),
    ("person",) * 9, ("car", "dog"),
])]
print("weighted average length:", round(weighted_average_length(group), 3))
print("survivor:", smooth_scene(group, SelectorConfig(group_size=5)))

# Length weighting pulls the mean toward long records, so with one outlier
# among five the outlier survives.  Smaller groups make it one candidate of several.
print("group size 2:", [r.frame_index for r in smooth_scene(group, SelectorConfig(group_size=2))])

# A full video with simulated detections on most frames.
spec = SynthSpec(scene_count=4, frames_per_scene=20, width=64, height=48, rng_seed=3)
scenes = segment_stream(generate_synthetic(spec))
rng = random.Random(0)
records = [
    RecognitionRecord(i, tuple(rng.choices(["person", "car", "dog", "bike"], k=rng.randint(0, 5))))
    for i in range(spec.total_frames) if i < 60
]
for scene in annotate_scenes(scenes, records):
    rep = scene.representative
    print(scene.scene_id, scene.start_frame, scene.end_frame,
          None if rep is None else (rep.frame_index, rep.labels))
