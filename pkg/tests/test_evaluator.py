import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twosds.errors import EvaluationError
from twosds.evaluator import (
    EvalReport,
    GroundTruth,
    boundary_match,
    count_accuracy,
    evaluate,
    format_percent,
    format_table,
    load_truth,
)
from twosds.segmenter import Scene

PUBLISHED_ROWS = [
    ("Interview 1", 25, 25, "100.00%"),
    ("Interview 2", 35, 29, "82.86%"),
    ("Interview 3", 31, 28, "90.32%"),
    ("Vibrant 1", 9, 13, "69.23%"),
    ("Vibrant 2", 19, 38, "50.00%"),
    ("Hybrid 1", 105, 106, "99.06%"),
]


@pytest.mark.parametrize("name, output, truth, shown", PUBLISHED_ROWS)
def test_published_accuracy_rows(name, output, truth, shown):
    assert format_percent(count_accuracy(output, truth)) == shown


def test_both_zero():
    assert count_accuracy(0, 0) == 1.0


def test_negative_rejected():
    with pytest.raises(EvaluationError):
        count_accuracy(-1, 3)


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_count_accuracy_symmetric(a, b):
    acc = count_accuracy(a, b)
    assert acc == count_accuracy(b, a)
    assert 0.0 <= acc <= 1.0
    assert (acc == 1.0) == (a == b)


@pytest.mark.parametrize("ratio, shown", [(0.828571, "82.86%"), (0.5, "50.00%"), (0.00005, "0.01%"), (1, "100.00%")])
def test_format_percent_half_up(ratio, shown):
    assert format_percent(ratio) == shown


class TestBoundaryMatch:
    def test_identical(self):
        assert boundary_match([30, 60, 90], [30, 60, 90], 0) == (1.0, 1.0, 1.0)

    def test_both_empty(self):
        assert boundary_match([], [], 0) == (1.0, 1.0, 1.0)

    def test_predicted_empty(self):
        assert boundary_match([], [10], 2) == (0.0, 0.0, 0.0)

    def test_truth_empty(self):
        assert boundary_match([10], [], 2) == (0.0, 0.0, 0.0)

    def test_within_tolerance(self):
        assert boundary_match([30, 61], [30, 60], 2) == (1.0, 1.0, 1.0)

    def test_outside_tolerance(self):
        p, r, f = boundary_match([30, 63], [30, 60], 2)
        assert (p, r, f) == (0.5, 0.5, 0.5)

    def test_one_to_one(self):
        # one prediction cannot satisfy two truths
        p, r, f = boundary_match([10], [9, 11], 1)
        assert (p, r) == (1.0, 0.5)
        assert f == pytest.approx(2 / 3)

    def test_nearest_is_claimed(self):
        p, r, _ = boundary_match([8, 10], [10], 2)
        assert (p, r) == (0.5, 1.0)

    def test_unsorted(self):
        with pytest.raises(EvaluationError):
            boundary_match([5, 3], [1], 0)
        with pytest.raises(EvaluationError):
            boundary_match([1], [2, 2], 0)

    @given(st.sets(st.integers(1, 300), max_size=15), st.sets(st.integers(1, 300), max_size=15),
           st.integers(0, 5))
    def test_ranges(self, pred, truth, tol):
        p, r, f = boundary_match(sorted(pred), sorted(truth), tol)
        assert all(0.0 <= x <= 1.0 for x in (p, r, f))
        assert f <= max(p, r) + 1e-12
        if p + r:
            assert f == pytest.approx(2 * p * r / (p + r))


class TestGroundTruth:
    def test_from_boundaries(self):
        gt = GroundTruth.from_boundaries([30, 60])
        assert gt.scene_count == 3

    def test_count_only(self):
        gt = GroundTruth.from_dict({"scene_count": 29})
        assert gt.boundaries is None

    @pytest.mark.parametrize("obj", [
        {"boundaries": [0]},
        {"boundaries": [5, 5]},
        {"boundaries": [1, 2], "scene_count": 5},
        {"boundaries": "x"},
        {},
        {"scene_count": "3"},
    ])
    def test_invalid(self, obj):
        with pytest.raises(EvaluationError):
            GroundTruth.from_dict(obj)

    def test_round_trip(self):
        gt = GroundTruth.from_boundaries([3, 9])
        assert GroundTruth.from_dict(gt.to_dict()) == gt


def test_evaluate_count_only_nulls():
    rep = evaluate(GroundTruth.from_boundaries(list(range(1, 35))), GroundTruth(29))
    assert format_percent(rep.count_accuracy) == "82.86%"
    assert rep.boundary_f1 is None and rep.boundary_precision is None
    assert json.loads(rep.to_json())["boundary_recall"] is None


def test_load_truth_formats(tmp_path):
    a = tmp_path / "truth.json"
    a.write_text(json.dumps({"boundaries": [30, 60], "scene_count": 3, "frames": 90}, indent=2))
    b = tmp_path / "scenes.jsonl"
    b.write_text("".join(json.dumps(Scene(i, s, e).to_dict()) + "\n"
                         for i, (s, e) in enumerate([(0, 29), (30, 59), (60, 89)])))
    c = tmp_path / "count.json"
    c.write_text('{"scene_count": 7}')
    assert load_truth(a) == load_truth(b) == GroundTruth.from_boundaries([30, 60])
    assert load_truth(c) == GroundTruth(7)


def test_load_truth_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(EvaluationError, match="malformed"):
        load_truth(bad)
    with pytest.raises(EvaluationError):
        load_truth(tmp_path / "missing.json")


def test_table_layout():
    rows = [(name, evaluate(GroundTruth(o), GroundTruth(t))) for name, o, t, _ in PUBLISHED_ROWS]
    table = format_table(rows)
    lines = table.splitlines()
    assert lines[0].split()[:4] == ["Experiment", "Output", "-", "Truth"]
    assert "35 - 29" in lines[3] and lines[3].split()[-4] == "82.86%"
    assert len({len(line) for line in lines if line}) == 1  # aligned
    assert isinstance(rows[0][1], EvalReport)
