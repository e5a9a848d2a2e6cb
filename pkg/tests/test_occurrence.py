from __future__ import annotations

import itertools
import json
import random
import statistics

import pytest

from dramalyze.errors import ValidationError
from dramalyze.occurrence import (
    OccurrenceTrack,
    burstiness,
    cluster_positions,
    gantt_data,
    lloyd_1d,
    repetition_forms,
    track_word,
)
from dramalyze.tokenizer import tokenize


def _stream(words):
    return tokenize(" ".join(words))


class TestTrackWord:
    def test_simple(self):
        assert track_word(_stream(["a", "b", "a"]), "a").positions == (0, 2)

    def test_absent_word(self):
        assert track_word(_stream(["a", "b"]), "z").positions == ()

    def test_random_stream_matches_linear_scan(self):
        rng = random.Random(5)
        words = [f"w{rng.randrange(9)}" for _ in range(500)]
        stream = _stream(words)
        for target in ("w0", "w4", "w8"):
            expected = tuple(i for i, w in enumerate(words) if w == target)
            assert track_word(stream, target).positions == expected


def _wss(values, groups):
    total = 0.0
    for group in groups:
        mean = sum(group) / len(group)
        total += sum((x - mean) ** 2 for x in group)
    return total


def _brute_force_optimum(values, k):
    """Exhaustive search over contiguous k-partitions of sorted 1-D data."""
    n = len(values)
    best = None
    best_cuts = None
    for cuts in itertools.combinations(range(1, n), k - 1):
        edges = (0, *cuts, n)
        groups = [values[a:b] for a, b in zip(edges, edges[1:])]
        wss = _wss(values, groups)
        if best is None or wss < best:
            best, best_cuts = wss, edges
    return best, best_cuts


class TestClusterPositions:
    POSITIONS = (1, 2, 3, 100, 101, 200, 201, 202)

    def _tracks(self, positions=POSITIONS):
        return [OccurrenceTrack("w", tuple(positions))]

    def test_three_group_example_is_global_optimum(self):
        values = list(self.POSITIONS)
        best_wss, best_edges = _brute_force_optimum(values, 3)
        assert best_edges == (0, 3, 5, 8)  # {1,2,3} {100,101} {200,201,202}

        assignment = cluster_positions(self._tracks(), k=3, seed=0)
        assert assignment.labels == (0, 0, 0, 1, 1, 2, 2, 2)
        impl_groups = [
            [x for x, lab in zip(assignment.positions, assignment.labels) if lab == j]
            for j in range(3)
        ]
        assert abs(_wss(values, impl_groups) - best_wss) < 1e-9

    def test_k1_centroid_is_exact_mean(self):
        rng = random.Random(2)
        positions = tuple(sorted(rng.sample(range(10000), 37)))
        assignment = cluster_positions(self._tracks(positions), k=1, seed=0)
        assert assignment.centroids == (statistics.mean(positions),)

    def test_boundaries_are_midpoints(self):
        assignment = cluster_positions(self._tracks(), k=3, seed=0)
        assert assignment.boundaries == (51.5, 150.5)

    def test_centroids_within_range(self):
        assignment = cluster_positions(self._tracks(), k=3, seed=0)
        for c in assignment.centroids:
            assert min(self.POSITIONS) <= c <= max(self.POSITIONS)

    def test_k_exceeding_occurrences_rejected(self):
        with pytest.raises(ValidationError, match="k exceeds occurrence count"):
            cluster_positions(self._tracks((4, 9)), k=3, seed=0)

    def test_deterministic_for_identical_seed(self):
        a = cluster_positions(self._tracks(), k=3, seed=42)
        b = cluster_positions(self._tracks(), k=3, seed=42)
        assert a == b
        assert json.dumps(a.labels) == json.dumps(b.labels)

    def test_wss_monotone_non_increasing(self):
        rng = random.Random(9)
        for _ in range(20):
            values = sorted(rng.sample(range(5000), rng.randint(8, 60)))
            k = rng.randint(2, 5)
            _, _, history = lloyd_1d(values, k)
            for earlier, later in zip(history, history[1:]):
                assert later <= earlier + 1e-9

    def test_pooled_across_tracks(self):
        tracks = [OccurrenceTrack("a", (1, 2)), OccurrenceTrack("b", (200, 201))]
        assignment = cluster_positions(tracks, k=2, seed=0)
        assert assignment.positions == (1, 2, 200, 201)
        assert assignment.labels == (0, 0, 1, 1)


class TestBurstiness:
    def test_constant_gaps_give_minus_one(self):
        positions = tuple(range(0, 200, 10))  # 20 occurrences, gap 10
        assert burstiness(positions) == pytest.approx(-1.0, abs=1e-12)

    def test_fewer_than_three_occurrences_undefined(self):
        assert burstiness((3, 17)) is None
        assert burstiness((3,)) is None

    def test_invariant_under_gap_scaling(self):
        rng = random.Random(4)
        positions = [0]
        for _ in range(30):
            positions.append(positions[-1] + rng.randint(1, 40))
        scaled = [3 * p for p in positions]
        assert burstiness(tuple(positions)) == pytest.approx(burstiness(tuple(scaled)), abs=1e-12)


class TestRepetitionForms:
    def test_fragment_initial_word_has_start_share_one(self):
        text = "x aa bb... x cc dd... x ee ff..."
        forms = repetition_forms(tokenize(text), "x", window=2)
        assert forms.positional == {"start": 1.0, "middle": 0.0, "end": 0.0}

    def test_absent_word_errors(self):
        with pytest.raises(ValidationError, match="no occurrences"):
            repetition_forms(_stream(["a", "b"]), "zzz", window=2)

    def test_pmi_matches_hand_computed_value(self):
        # 4 copies of a 10-token block; "skull" always follows "buzzing".
        # With w=1: cooc(buzzing,skull)=4, cooc(buzzing,h)=3, N=40, c=4 each.
        # PMI(skull) = log2(4*40 / (4*4*2*1)) = log2(5)
        # PMI(h)     = log2(3*40 / (4*4*2*1)) = log2(3.75)
        block = ["buzzing", "skull", "a", "b", "c", "d", "e", "f", "g", "h"]
        forms = repetition_forms(_stream(block * 4), "buzzing", window=1)
        assert forms.associative[0][0] == "skull"
        assert forms.associative[0][1] == pytest.approx(2.321928094887362, abs=1e-9)
        by_name = dict(forms.associative)
        assert by_name["h"] == pytest.approx(1.9068905956085187, abs=1e-9)

    def test_pmi_zero_at_exact_independence_rate(self):
        # N=8, c(x)=2, c(y)=4, w=1: expected cooc = 2*4*2/8 = 2 = actual.
        words = ["x", "y", "f1", "y", "x", "f2", "y", "y"]
        forms = repetition_forms(_stream(words), "x", window=1)
        assert dict(forms.associative)["y"] == pytest.approx(0.0, abs=1e-9)

    def test_neighbors_with_single_joint_count_not_scored(self):
        words = ["x", "q", "a", "b", "x", "r", "c", "d"]
        forms = repetition_forms(_stream(words), "x", window=1)
        assert "q" not in dict(forms.associative)

    def test_burstiness_carried_through(self):
        words = []
        for _ in range(10):
            words += ["x"] + ["f"] * 9
        forms = repetition_forms(_stream(words), "x", window=1)
        assert forms.aggregative_burstiness == pytest.approx(-1.0, abs=1e-12)

    def test_positional_fractions_sum_to_one(self):
        rng = random.Random(6)
        words = [rng.choice(["x", "a", "b", "c..."]) for _ in range(300)]
        stream = _stream(words)
        if not track_word(stream, "x").positions:
            words[0] = "x"
            stream = _stream(words)
        forms = repetition_forms(stream, "x", window=3)
        assert sum(forms.positional.values()) == pytest.approx(1.0, abs=1e-9)


class TestGanttData:
    def test_rows_ordered_by_first_occurrence(self):
        rows = gantt_data(
            [OccurrenceTrack("late", (50, 60)), OccurrenceTrack("early", (2, 99))]
        )
        assert [r[0] for r in rows] == ["early", "late"]

    def test_empty_tracks_excluded(self):
        rows = gantt_data([OccurrenceTrack("ghost", ()), OccurrenceTrack("real", (1,))])
        assert [r[0] for r in rows] == ["real"]
