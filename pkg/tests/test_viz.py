from __future__ import annotations

import random
import re
import xml.etree.ElementTree as ET

import pytest

from dramalyze.errors import ValidationError
from dramalyze.viz import ChartSpec, pie_angles, render, wordcloud_layout

_SEVEN_LABELS = ["anger", "disgust", "fear", "joy", "neutral", "sadness", "surprise"]


def _pie(shares):
    return ChartSpec("pie", 640, 420, "pie", {"labels": _SEVEN_LABELS, "shares": shares})


class TestPie:
    def test_four_quarter_slices(self):
        angles = pie_angles([0.25, 0.25, 0.25, 0.25, 0, 0, 0])
        sweeps = [sweep for _, sweep in angles]
        assert sweeps[:4] == [90.0, 90.0, 90.0, 90.0]
        assert sweeps[4:] == [0.0, 0.0, 0.0]
        assert sum(sweeps) == pytest.approx(360.0, abs=1e-6)

    def test_angles_proportional_to_shares(self):
        shares = [0.1, 0.2, 0.3, 0.15, 0.05, 0.1, 0.1]
        angles = pie_angles(shares)
        for share, (_, sweep) in zip(shares, angles):
            assert sweep == pytest.approx(360 * share, abs=1e-9)

    def test_unnormalized_shares_still_sum_to_circle(self):
        sweeps = [s for _, s in pie_angles([2, 1, 1, 0, 0, 0, 0])]
        assert sum(sweeps) == pytest.approx(360.0, abs=1e-6)

    def test_all_zero_rejected(self):
        with pytest.raises(ValidationError):
            pie_angles([0, 0, 0])

    def test_full_circle_single_label_renders(self):
        svg = render(_pie([0, 0, 0, 0, 1.0, 0, 0]))
        assert "<circle" in svg
        ET.fromstring(svg)

    def test_pie_renders_and_parses(self):
        svg = render(_pie([0.1, 0.1, 0.2, 0.1, 0.2, 0.2, 0.1]))
        ET.fromstring(svg)
        assert svg.count("<path") == 7


def _gantt(rows, n):
    return ChartSpec("gantt_scatter", 900, 500, "occ", {"rows": rows, "stream_length": n})


class TestCharts:
    def test_identical_spec_identical_bytes(self):
        spec = _pie([0.3, 0.1, 0.1, 0.1, 0.2, 0.1, 0.1])
        assert render(spec) == render(spec)

    def test_empty_data_has_no_data_text(self):
        for spec in (
            _pie([]),
            _gantt((), 0),
            ChartSpec("motif_bars", 900, 500, "m", {"rows": (), "stream_length": 0}),
            ChartSpec("wordcloud", 800, 500, "w", ()),
        ):
            svg = render(spec)
            assert "no data" in svg
            ET.fromstring(svg)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValidationError, match="unknown chart kind"):
            render(ChartSpec("sparkline", 10, 10, "t", ()))

    def test_gantt_marker_x_monotone_in_token_index(self):
        rows = (("word", (0, 3, 17, 40, 99)),)
        svg = render(_gantt(rows, 100))
        ET.fromstring(svg)
        xs = [float(m) for m in re.findall(r'<circle cx="([0-9.]+)"', svg)]
        assert xs == sorted(xs)
        assert len(xs) == 5

    def test_gantt_rows_carry_labels(self):
        svg = render(_gantt((("alpha", (1,)), ("beta", (2,))), 10))
        assert ">alpha</text>" in svg and ">beta</text>" in svg

    def test_motif_bars_render(self):
        spec = ChartSpec(
            "motif_bars",
            900,
            500,
            "m",
            {"rows": (("a b c", ((0, 3), (7, 10))),), "stream_length": 10},
        )
        svg = render(spec)
        ET.fromstring(svg)
        assert svg.count("<rect") >= 3  # background + two occurrence bars

    def test_title_escaped(self):
        svg = render(ChartSpec("wordcloud", 300, 200, "a <b> & c", ()))
        ET.fromstring(svg)
        assert "a &lt;b&gt; &amp; c" in svg


class TestWordcloud:
    def test_fifty_random_words_no_overlapping_rectangles(self):
        rng = random.Random(99)
        items = []
        for i in range(50):
            word = "".join(rng.choice("abcdefghijklmnop") for _ in range(rng.randint(3, 10)))
            items.append((f"{word}{i}", rng.random() or 0.5))
        placed = wordcloud_layout(items, 800, 600)
        assert len(placed) >= 45  # nearly all fit on the default canvas
        for i, a in enumerate(placed):
            for b in placed[i + 1 :]:
                ax0, ay0, ax1, ay1 = a.rect
                bx0, by0, bx1, by1 = b.rect
                overlaps = ax0 < bx1 and bx0 < ax1 and ay0 < by1 and by0 < ay1
                assert not overlaps, (a.word, b.word)

    def test_layout_deterministic(self):
        items = [("alpha", 1.0), ("beta", 0.5), ("gamma", 0.25)]
        assert wordcloud_layout(items, 400, 300) == wordcloud_layout(items, 400, 300)

    def test_heaviest_word_placed_first_at_center(self):
        placed = wordcloud_layout([("big", 1.0), ("small", 0.1)], 400, 300)
        assert placed[0].word == "big"
        assert placed[0].x == pytest.approx(200.0)
        assert placed[0].y == pytest.approx(150.0)

    def test_font_size_monotone_in_weight(self):
        placed = wordcloud_layout([("aa", 1.0), ("bb", 0.4), ("cc", 0.1)], 500, 400)
        sizes = {p.word: p.font_size for p in placed}
        assert sizes["aa"] > sizes["bb"] > sizes["cc"]

    def test_rendered_svg_parses(self):
        svg = render(ChartSpec("wordcloud", 400, 300, "wc", (("hello", 1.0), ("world", 0.5))))
        ET.fromstring(svg)
        assert ">hello</text>" in svg
