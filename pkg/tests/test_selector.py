from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twosds.errors import SelectionError
from twosds.segmenter import Scene
from twosds.selector import (
    RecognitionRecord,
    SelectorConfig,
    annotate_scenes,
    select_representative,
    smooth_group,
    smooth_scene,
    weighted_average_intensity,
    weighted_average_length,
)


def rec(i, *labels):
    return RecognitionRecord(i, labels)


def with_lengths(lengths, start=0):
    # labels all distinct so intensity == length
    return [rec(start + i, *(f"c{k}" for k in range(n))) for i, n in enumerate(lengths)]


def with_intensities(intensities, start=0):
    return with_lengths(intensities, start)


def literal_wal(values, c):
    """Weighted mean exactly as written: sum(L * w) / sum(w), w = c * L."""
    weights = [c * v for v in values]
    if sum(weights) == 0:
        return 0.0
    return sum(v * w for v, w in zip(values, weights)) / sum(weights)


def brute_closest(records, key, target):
    best = None
    for r in records:
        d = abs(Fraction(key(r)) - target)
        if best is None or d < best[0]:
            best = (d, r)
    return best[1]


records_st = st.lists(
    st.lists(st.sampled_from("abcde"), max_size=8), min_size=1, max_size=12
).map(lambda groups: [RecognitionRecord(i, tuple(g)) for i, g in enumerate(groups)])


class TestRecord:
    def test_length_and_intensity(self):
        r = rec(0, "person", "person", "car")
        assert (r.length, r.feature_intensity) == (3, 2)

    def test_empty(self):
        r = rec(1)
        assert (r.length, r.feature_intensity) == (0, 0)

    def test_labels_become_tuple(self):
        assert RecognitionRecord(0, ["a"]).labels == ("a",)


class TestWeightedAverageLength:
    @pytest.mark.parametrize("lengths, expected", [
        ([3, 3, 3], 3.0),
        ([1, 3], 2.5),
        ([0, 0], 0.0),
        ([2, 2, 2, 9, 2], 97 / 17),
    ])
    def test_examples(self, lengths, expected):
        assert weighted_average_length(with_lengths(lengths)) == pytest.approx(expected, abs=1e-12)

    def test_empty(self):
        with pytest.raises(SelectionError):
            weighted_average_length([])

    @given(records_st, st.sampled_from([0.01, 0.1, 1.0, 10.0]))
    def test_matches_literal_formula(self, group, c):
        lengths = [r.length for r in group]
        assert weighted_average_length(group, c) == pytest.approx(literal_wal(lengths, c), rel=1e-12)

    @given(records_st)
    def test_bounded_by_extremes(self, group):
        lengths = [r.length for r in group]
        wal = weighted_average_length(group)
        if max(lengths) > 0:
            assert min(lengths) <= wal <= max(lengths)


class TestSmoothGroup:
    def test_picks_closest_length(self):
        assert smooth_group(with_lengths([1, 3])).length == 3

    def test_outlier_wins_under_length_weighting(self):
        picked = smooth_group(with_lengths([2, 2, 2, 9, 2]))
        assert picked.length == 9 and picked.frame_index == 3

    def test_identical_records_tie_to_first(self):
        group = [rec(i, "a", "b") for i in range(4)]
        assert smooth_group(group) is group[0]

    def test_single(self):
        r = rec(7, "x")
        assert smooth_group([r]) is r

    def test_all_empty_picks_first(self):
        group = with_lengths([0, 0, 0], start=4)
        assert smooth_group(group).frame_index == 4

    def test_exact_tie_goes_to_earliest(self):
        # WAL = 6/4 = 1.5 sits exactly between lengths 1 and 2
        assert smooth_group(with_lengths([1, 1, 2])).frame_index == 0
        assert smooth_group(with_lengths([2, 1, 1])).frame_index == 0
        assert smooth_group(with_lengths([0, 2, 1, 1])).frame_index == 1

    def test_empty(self):
        with pytest.raises(SelectionError):
            smooth_group([])

    @given(records_st, st.sampled_from([0.01, 0.1, 1.0, 10.0]))
    def test_member_and_matches_brute_force(self, group, c):
        picked = smooth_group(group, c)
        assert picked in group
        lengths = [r.length for r in group]
        total = sum(lengths)
        target = Fraction(sum(v * v for v in lengths), total) if total else Fraction(0)
        assert picked is brute_closest(group, lambda r: r.length, target)


class TestSmoothScene:
    def test_partition_counts(self):
        recs = with_lengths([1] * 12)
        assert len(smooth_scene(recs, SelectorConfig(group_size=5))) == 3

    def test_identical_group(self):
        recs = [rec(i, "a") for i in range(5)]
        assert smooth_scene(recs, SelectorConfig(5)) == [recs[0]]

    def test_hand_traced_group(self):
        cands = smooth_scene(with_lengths([2, 2, 2, 9, 2]), SelectorConfig(5))
        assert [c.length for c in cands] == [9]

    def test_empty(self):
        assert smooth_scene([]) == []

    @given(records_st, st.integers(1, 6))
    def test_order_preserved(self, recs, size):
        cands = smooth_scene(recs, SelectorConfig(size))
        idx = [c.frame_index for c in cands]
        assert idx == sorted(idx)
        assert len(cands) == -(-len(recs) // size)


class TestSelectRepresentative:
    def test_all_ties(self):
        cands = with_intensities([2, 2, 2])
        assert select_representative(cands) is cands[0]

    def test_weighted_intensity(self):
        cands = with_intensities([1, 3])
        assert weighted_average_intensity(cands) == pytest.approx(2.5)
        assert select_representative(cands).feature_intensity == 3

    def test_single(self):
        c = rec(0, "a")
        assert select_representative([c]) is c

    def test_uses_distinct_count(self):
        # lengths 4 and 1 but intensities 1 and 1 -> tie -> earliest
        cands = [rec(0, "a", "a", "a", "a"), rec(5, "b")]
        assert select_representative(cands).frame_index == 0

    def test_empty(self):
        with pytest.raises(SelectionError, match="no detections"):
            select_representative([])

    @given(records_st)
    def test_weight_factor_invariance(self, cands):
        picks = {select_representative(cands, SelectorConfig(5, c)).frame_index
                 for c in (0.01, 0.1, 1, 10)}
        assert len(picks) == 1


class TestAnnotate:
    def test_identical_records(self):
        recs = [rec(i, "cat") for i in range(10)]
        (scene,) = annotate_scenes([Scene(0, 0, 9)], recs)
        assert scene.representative is recs[0]

    def test_scene_without_records(self):
        scenes = annotate_scenes([Scene(0, 0, 29), Scene(1, 30, 59)],
                                 [rec(i, "a") for i in range(30)])
        assert scenes[0].representative.frame_index == 0
        assert scenes[1].representative is None
        assert (scenes[1].start_frame, scenes[1].end_frame) == (30, 59)

    def test_records_assigned_by_range(self):
        scenes = [Scene(0, 0, 2), Scene(1, 3, 5)]
        recs = [rec(1, "a"), rec(4, "b", "c")]
        out = annotate_scenes(scenes, recs)
        assert [s.representative.frame_index for s in out] == [1, 4]

    def test_out_of_order(self):
        with pytest.raises(SelectionError, match="out of order"):
            annotate_scenes([Scene(0, 0, 9)], [rec(3), rec(1)])

    def test_duplicate(self):
        with pytest.raises(SelectionError, match="duplicate"):
            annotate_scenes([Scene(0, 0, 9)], [rec(3), rec(3)])

    def test_record_past_stream(self):
        with pytest.raises(SelectionError):
            annotate_scenes([Scene(0, 0, 9)], [rec(10)])

    def test_deterministic(self):
        recs = [rec(i, *"abc"[: i % 3 + 1]) for i in range(40)]
        scenes = [Scene(0, 0, 19), Scene(1, 20, 39)]
        assert annotate_scenes(scenes, recs) == annotate_scenes(scenes, recs)


@pytest.mark.parametrize("kwargs", [dict(group_size=0), dict(weight_factor=0), dict(weight_factor=-1)])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SelectorConfig(**kwargs)
