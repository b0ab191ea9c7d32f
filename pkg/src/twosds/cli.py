"""Command line front end.

Subcommands::

    twosds hash     --input DIR | --raw --width W --height H     per-frame CSV
    twosds segment  ... [--threshold 5]                          scene JSONL
    twosds run      ... --detections FILE                        annotated scene JSONL
    twosds select   --input SCENES --detections FILE             annotated scene JSONL
    twosds eval     --predicted FILE --truth FILE [--tolerance 2]
    twosds synth    --output DIR [--scenes 10 --frames-per-scene 30 --seed 0]

Exit status is 0 on success, 1 on a processing error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
import time
from pathlib import Path

from . import __version__
from .dhash import MIN_HEIGHT, MIN_WIDTH, hamming, hash_frame
from .detections import iter_detections
from .errors import SelectionError, TwoSDSError
from .evaluator import DEFAULT_TOLERANCE, evaluate, format_table, load_truth
from .pixel_io import encode_ppm, read_image_sequence, read_raw_stream
from .segmenter import DEFAULT_THRESHOLD, Scene, Segmenter
from .selector import (
    DEFAULT_GROUP_SIZE,
    DEFAULT_WEIGHT_FACTOR,
    SelectorConfig,
    annotate_scenes,
    representative_for,
)
from .synth import SynthSpec, generate_synthetic


class UsageError(Exception):
    pass


def scene_json(scene: Scene, annotated: bool = False) -> str:
    obj = scene.to_dict()
    if annotated:
        rep = scene.representative
        obj["representative_frame"] = None if rep is None else rep.frame_index
        obj["representative_labels"] = None if rep is None else list(rep.labels)
    return json.dumps(obj)


@contextlib.contextmanager
def _output(path):
    if path is None or str(path) == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise TwoSDSError(f"{path}: cannot open for writing ({exc.strerror or exc})") from exc
    with fh:
        yield fh


class _Stats:
    def __init__(self, enabled):
        self.enabled = enabled
        self.frames = 0
        self.start = time.perf_counter()

    def report(self):
        if not self.enabled:
            return
        elapsed = time.perf_counter() - self.start
        fps = self.frames / elapsed if elapsed > 0 else float("inf")
        print(f"{self.frames} frames in {elapsed:.3f} s ({fps:.1f} frames/s)", file=sys.stderr)


def _frames(args):
    if args.raw:
        return read_raw_stream(sys.stdin.buffer, args.width, args.height)
    return read_image_sequence(args.input)


def _counted(frames, stats):
    for frame in frames:
        stats.frames += 1
        yield frame


def _selector_config(args) -> SelectorConfig:
    return SelectorConfig(args.group_size, args.weight_factor)


def cmd_hash(args) -> int:
    stats = _Stats(args.stats)
    with _output(args.output) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["index", "hash", "distance"])
        previous = None
        for frame in _counted(_frames(args), stats):
            h = hash_frame(frame)
            distance = "" if previous is None else hamming(previous, h)
            writer.writerow([frame.index, h.hex, distance])
            previous = h
    stats.report()
    return 0


def _stream_scenes(frames, threshold):
    seg = Segmenter(threshold)
    for frame in frames:
        scene = seg.push(hash_frame(frame), frame.index)
        if scene is not None:
            yield scene
    yield seg.flush()


def cmd_segment(args) -> int:
    stats = _Stats(args.stats)
    with _output(args.output) as out:
        for scene in _stream_scenes(_counted(_frames(args), stats), args.threshold):
            out.write(scene_json(scene) + "\n")
    stats.report()
    return 0


def _annotate_stream(scenes, records, config):
    """Pair each closing scene with its records, holding only one scene's worth."""
    records = iter(records)
    lookahead = next(records, None)
    for scene in scenes:
        mine = []
        while lookahead is not None and lookahead.frame_index <= scene.end_frame:
            mine.append(lookahead)
            lookahead = next(records, None)
        yield Scene(scene.scene_id, scene.start_frame, scene.end_frame,
                    representative_for(mine, config))
    if lookahead is not None:
        raise SelectionError(f"detection for frame {lookahead.frame_index} lies past the end of the stream")


def cmd_run(args) -> int:
    config = _selector_config(args)
    stats = _Stats(args.stats)
    records = iter_detections(args.detections)
    with _output(args.output) as out:
        scenes = _stream_scenes(_counted(_frames(args), stats), args.threshold)
        for scene in _annotate_stream(scenes, records, config):
            out.write(scene_json(scene, annotated=True) + "\n")
    stats.report()
    return 0


def _read_scenes(path) -> list[Scene]:
    scenes = []
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise TwoSDSError(f"{path}: cannot read ({exc.strerror or exc})") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            scenes.append(Scene(int(obj["scene_id"]), int(obj["start_frame"]), int(obj["end_frame"])))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise TwoSDSError(f"{path}: line {lineno}: invalid scene record ({exc})") from None
    return scenes


def cmd_select(args) -> int:
    scenes = _read_scenes(args.input)
    records = list(iter_detections(args.detections))
    annotated = annotate_scenes(scenes, records, _selector_config(args))
    with _output(args.output) as out:
        for scene in annotated:
            out.write(scene_json(scene, annotated=True) + "\n")
    return 0


def cmd_eval(args) -> int:
    report = evaluate(load_truth(args.predicted), load_truth(args.truth), args.tolerance)
    with _output(args.output) as out:
        if args.format == "text":
            out.write(format_table([(Path(args.predicted).stem, report)]))
        else:
            out.write(report.to_json() + "\n")
    return 0


def cmd_synth(args) -> int:
    spec = SynthSpec(args.scenes, args.frames_per_scene, args.width,
                     args.height, args.seed, args.noise)
    outdir = Path(args.output)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        digits = max(6, len(str(spec.total_frames - 1)))
        for frame in generate_synthetic(spec):
            (outdir / f"frame_{frame.index:0{digits}d}.ppm").write_bytes(encode_ppm(frame.pixels))
        truth = {
            "boundaries": spec.boundaries(),
            "scene_count": spec.scene_count,
            "frames": spec.total_frames,
            "width": spec.width,
            "height": spec.height,
            "seed": spec.rng_seed,
            "noise": spec.noise_amplitude,
        }
        (outdir / "truth.json").write_text(json.dumps(truth) + "\n", encoding="utf-8")
    except OSError as exc:
        raise TwoSDSError(f"{outdir}: cannot write ({exc.strerror or exc})") from exc
    return 0


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _threshold(text):
    value = int(text)
    if not 0 <= value <= 64:
        raise argparse.ArgumentTypeError(f"must be in [0, 64], got {value}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twosds", description="Scene separation and per-scene result selection for frame streams."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def frame_input(p):
        p.add_argument("--input", help="directory of .ppm/.pgm frames, read in filename order")
        p.add_argument("--raw", action="store_true", help="read packed RGB24 frames from stdin")
        p.add_argument("--width", type=int, help="frame width for --raw")
        p.add_argument("--height", type=int, help="frame height for --raw")
        p.add_argument("--stats", action="store_true", help="report frames/second on stderr")

    def output(p, help="output file (default: stdout)"):
        p.add_argument("--output", help=help)

    def threshold(p):
        p.add_argument("--threshold", type=_threshold, default=DEFAULT_THRESHOLD,
                       help="split when the Hamming distance exceeds this (default: %(default)s)")

    def selector(p):
        p.add_argument("--detections", required=True, help="detector output, JSON Lines")
        p.add_argument("--group-size", type=_positive_int, default=DEFAULT_GROUP_SIZE)
        p.add_argument("--weight-factor", type=_positive_float, default=DEFAULT_WEIGHT_FACTOR)

    p = sub.add_parser("hash", help="per-frame hash and distance to previous frame (CSV)")
    frame_input(p)
    output(p)
    p.set_defaults(func=cmd_hash, needs_frames=True)

    p = sub.add_parser("segment", help="split a frame stream into scenes (JSON Lines)")
    frame_input(p)
    threshold(p)
    output(p)
    p.set_defaults(func=cmd_segment, needs_frames=True)

    p = sub.add_parser("run", help="segment and pick a representative detection per scene")
    frame_input(p)
    threshold(p)
    selector(p)
    output(p)
    p.set_defaults(func=cmd_run, needs_frames=True)

    p = sub.add_parser("select", help="annotate an existing scene list with representatives")
    p.add_argument("--input", required=True, help="scene JSON Lines from 'segment'")
    selector(p)
    output(p)
    p.set_defaults(func=cmd_select, needs_frames=False)

    p = sub.add_parser("eval", help="score predicted scenes against ground truth")
    p.add_argument("--predicted", required=True, help="scene JSON Lines or ground-truth style JSON")
    p.add_argument("--truth", required=True, help='{"boundaries": [...]} or {"scene_count": N}')
    p.add_argument("--tolerance", type=_nonneg_int, default=DEFAULT_TOLERANCE)
    p.add_argument("--format", choices=("json", "text"), default="json")
    output(p)
    p.set_defaults(func=cmd_eval, needs_frames=False)

    p = sub.add_parser("synth", help="write a synthetic PPM sequence plus truth.json")
    p.add_argument("--output", required=True, help="directory to write into")
    p.add_argument("--scenes", type=_positive_int, default=10)
    p.add_argument("--frames-per-scene", type=_positive_int, default=30)
    p.add_argument("--width", type=int, default=320)
    p.add_argument("--height", type=int, default=240)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=int, default=0, help="per-pixel jitter amplitude, 0-255")
    p.set_defaults(func=cmd_synth, needs_frames=False)
    return parser


def _check_args(args) -> None:
    if getattr(args, "needs_frames", False):
        if args.raw and args.input:
            raise UsageError("--input and --raw are mutually exclusive")
        if not args.raw and not args.input:
            raise UsageError("one of --input or --raw is required")
        if args.raw:
            if args.width is None or args.height is None:
                raise UsageError("--raw requires --width and --height")
            if args.width < MIN_WIDTH or args.height < MIN_HEIGHT:
                raise UsageError(f"frames must be at least {MIN_WIDTH}x{MIN_HEIGHT}")
        elif args.width is not None or args.height is not None:
            raise UsageError("--width/--height only apply with --raw")
    if args.command == "synth":
        if args.width < MIN_WIDTH or args.height < MIN_HEIGHT:
            raise UsageError(f"frames must be at least {MIN_WIDTH}x{MIN_HEIGHT}")
        if not 0 <= args.noise <= 255:
            raise UsageError("--noise must be in [0, 255]")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_args(args)
    except UsageError as exc:
        parser.error(str(exc))
    try:
        return args.func(args)
    except (TwoSDSError, ValueError) as exc:
        print(f"twosds: error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
