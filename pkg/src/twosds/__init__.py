"""Streaming scene separation and per-scene result selection for video frames."""

__version__ = "0.1.0"

from .dhash import FrameHash, downsample, hamming, hash_frame, hash_rows, to_gray
from .detections import parse_detections
from .errors import (
    DetectionsError,
    EvaluationError,
    IngestionError,
    SegmenterError,
    SelectionError,
    TwoSDSError,
)
from .evaluator import EvalReport, GroundTruth, boundary_match, count_accuracy, evaluate
from .pixel_io import Frame, read_image_sequence, read_raw_stream
from .segmenter import Scene, Segmenter, SegmenterConfig, segment_stream
from .selector import (
    RecognitionRecord,
    SelectorConfig,
    annotate_scenes,
    select_representative,
    smooth_group,
    smooth_scene,
    weighted_average_length,
)
from .synth import SynthSpec, generate_synthetic
