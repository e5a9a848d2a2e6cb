"""Deterministic SVG renderings of the four report charts.

SVG is assembled by hand so output is byte-identical for identical input:
fixed float formatting, fixed element order, no timestamps, no rendering
library. Visual polish is explicitly not the goal; data fidelity is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any
from xml.sax.saxutils import escape

from .emotion import EMOTION_LABELS
from .errors import ValidationError

CHART_KINDS = ("pie", "gantt_scatter", "motif_bars", "wordcloud")

EMOTION_COLORS = {
    "anger": "#c0392b",
    "disgust": "#7f9a40",
    "fear": "#6c3483",
    "joy": "#e3b505",
    "neutral": "#95a5a6",
    "sadness": "#2471a3",
    "surprise": "#e67e22",
}
_BAND_COLORS = ("#2471a3", "#c0392b", "#7f9a40", "#6c3483", "#e67e22", "#148f77", "#b7950b")
_TEXT_COLOR = "#222222"

_SPIRAL_STEP = 0.35
_SPIRAL_GROWTH = 2.2
_SPIRAL_MAX_STEPS = 6000
_MIN_FONT = 12.0
_MAX_FONT = 48.0


@dataclass(frozen=True)
class ChartSpec:
    kind: str
    width: int
    height: int
    title: str
    data: Any


@dataclass(frozen=True)
class PlacedWord:
    word: str
    weight: float
    x: float
    y: float
    font_size: float
    rect: tuple[float, float, float, float]  # x0, y0, x1, y1


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _svg_open(width: int, height: int, title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{_fmt(width / 2)}" y="24" font-family="sans-serif" font-size="16" '
        f'text-anchor="middle" fill="{_TEXT_COLOR}">{escape(title)}</text>',
    ]


def _no_data_svg(spec: ChartSpec) -> str:
    parts = _svg_open(spec.width, spec.height, spec.title)
    parts.append(
        f'<text x="{_fmt(spec.width / 2)}" y="{_fmt(spec.height / 2)}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle" fill="#888888">no data</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render(spec: ChartSpec) -> str:
    """Render a chart spec to an SVG document string."""
    if spec.width <= 0 or spec.height <= 0:
        raise ValidationError("chart width and height must be positive")
    if spec.kind == "pie":
        return _render_pie(spec)
    if spec.kind == "gantt_scatter":
        return _render_gantt(spec)
    if spec.kind == "motif_bars":
        return _render_motif_bars(spec)
    if spec.kind == "wordcloud":
        return _render_wordcloud(spec)
    raise ValidationError(f"unknown chart kind: {spec.kind!r}")


# -- pie ---------------------------------------------------------------------


def pie_angles(shares: tuple[float, ...] | list[float]) -> list[tuple[float, float]]:
    """(start_angle, sweep) in degrees per share; zero shares get zero sweep."""
    total = sum(shares)
    if total <= 0:
        raise ValidationError("pie shares must sum to a positive value")
    angles = []
    start = -90.0
    for share in shares:
        sweep = 360.0 * share / total
        angles.append((start, sweep))
        start += sweep
    return angles


def _arc_point(cx: float, cy: float, r: float, angle_deg: float) -> tuple[float, float]:
    rad = math.radians(angle_deg)
    return cx + r * math.cos(rad), cy + r * math.sin(rad)


def _render_pie(spec: ChartSpec) -> str:
    shares = tuple(spec.data.get("shares", ())) if isinstance(spec.data, dict) else tuple(spec.data)
    labels = spec.data.get("labels", EMOTION_LABELS) if isinstance(spec.data, dict) else EMOTION_LABELS
    if not shares or sum(shares) <= 0:
        return _no_data_svg(spec)
    if len(shares) != len(labels):
        raise ValidationError("pie shares and labels must have equal length")

    cx = spec.width * 0.38
    cy = spec.height / 2 + 12
    r = 0.36 * min(spec.width, spec.height)
    parts = _svg_open(spec.width, spec.height, spec.title)

    for (start, sweep), label in zip(pie_angles(shares), labels):
        if sweep <= 0:
            continue
        color = EMOTION_COLORS.get(label, "#555555")
        if sweep >= 360.0 - 1e-9:
            parts.append(
                f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" fill="{color}" '
                f'stroke="#ffffff" stroke-width="1"/>'
            )
            continue
        x0, y0 = _arc_point(cx, cy, r, start)
        x1, y1 = _arc_point(cx, cy, r, start + sweep)
        large = 1 if sweep > 180.0 else 0
        parts.append(
            f'<path d="M {_fmt(cx)} {_fmt(cy)} L {_fmt(x0)} {_fmt(y0)} '
            f'A {_fmt(r)} {_fmt(r)} 0 {large} 1 {_fmt(x1)} {_fmt(y1)} Z" '
            f'fill="{color}" stroke="#ffffff" stroke-width="1"/>'
        )

    legend_x = spec.width * 0.72
    legend_y = spec.height / 2 - 10.5 * len(labels)
    total = sum(shares)
    for i, (label, share) in enumerate(zip(labels, shares)):
        y = legend_y + 21 * i
        color = EMOTION_COLORS.get(label, "#555555")
        parts.append(f'<rect x="{_fmt(legend_x)}" y="{_fmt(y)}" width="14" height="14" fill="{color}"/>')
        parts.append(
            f'<text x="{_fmt(legend_x + 20)}" y="{_fmt(y + 11)}" font-family="sans-serif" '
            f'font-size="12" fill="{_TEXT_COLOR}">{escape(label)} '
            f"({_fmt(100 * share / total)}%)</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -- gantt scatter -----------------------------------------------------------


def _x_scale(stream_length: int, left: float, plot_width: float):
    span = max(stream_length - 1, 1)
    return lambda pos: left + (pos / span) * plot_width


def _render_gantt(spec: ChartSpec) -> str:
    rows = tuple(spec.data.get("rows", ()))
    stream_length = int(spec.data.get("stream_length", 0))
    if not rows or stream_length < 1:
        return _no_data_svg(spec)

    left, top, right, bottom = 120.0, 40.0, 20.0, 34.0
    plot_w = spec.width - left - right
    plot_h = spec.height - top - bottom
    band = plot_h / len(rows)
    x = _x_scale(stream_length, left, plot_w)

    parts = _svg_open(spec.width, spec.height, spec.title)
    parts.append(
        f'<line x1="{_fmt(left)}" y1="{_fmt(top + plot_h)}" x2="{_fmt(left + plot_w)}" '
        f'y2="{_fmt(top + plot_h)}" stroke="#999999" stroke-width="1"/>'
    )
    for i, (word, positions) in enumerate(rows):
        cy = top + band * (i + 0.5)
        color = _BAND_COLORS[i % len(_BAND_COLORS)]
        parts.append(
            f'<line x1="{_fmt(left)}" y1="{_fmt(cy)}" x2="{_fmt(left + plot_w)}" y2="{_fmt(cy)}" '
            f'stroke="#eeeeee" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(left - 8)}" y="{_fmt(cy + 4)}" font-family="sans-serif" font-size="12" '
            f'text-anchor="end" fill="{_TEXT_COLOR}">{escape(word)}</text>'
        )
        for pos in positions:
            parts.append(
                f'<circle cx="{_fmt(x(pos))}" cy="{_fmt(cy)}" r="2.5" fill="{color}"/>'
            )
    parts.append(
        f'<text x="{_fmt(left)}" y="{_fmt(spec.height - 10)}" font-family="sans-serif" '
        f'font-size="11" fill="#666666">0</text>'
    )
    parts.append(
        f'<text x="{_fmt(left + plot_w)}" y="{_fmt(spec.height - 10)}" font-family="sans-serif" '
        f'font-size="11" text-anchor="end" fill="#666666">{stream_length - 1}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -- motif bars --------------------------------------------------------------


def _render_motif_bars(spec: ChartSpec) -> str:
    rows = tuple(spec.data.get("rows", ()))
    stream_length = int(spec.data.get("stream_length", 0))
    if not rows or stream_length < 1:
        return _no_data_svg(spec)

    left, top, right, bottom = 230.0, 40.0, 20.0, 34.0
    plot_w = spec.width - left - right
    plot_h = spec.height - top - bottom
    band = plot_h / len(rows)
    bar_h = band * 0.55

    parts = _svg_open(spec.width, spec.height, spec.title)
    for i, (display, spans) in enumerate(rows):
        cy = top + band * (i + 0.5)
        color = _BAND_COLORS[i % len(_BAND_COLORS)]
        parts.append(
            f'<text x="{_fmt(left - 8)}" y="{_fmt(cy + 4)}" font-family="sans-serif" font-size="11" '
            f'text-anchor="end" fill="{_TEXT_COLOR}">{escape(display)}</text>'
        )
        for start, end in spans:
            x0 = left + (start / stream_length) * plot_w
            width = max((end - start) / stream_length * plot_w, 1.0)
            parts.append(
                f'<rect x="{_fmt(x0)}" y="{_fmt(cy - bar_h / 2)}" width="{_fmt(width)}" '
                f'height="{_fmt(bar_h)}" fill="{color}" fill-opacity="0.85"/>'
            )
    parts.append(
        f'<text x="{_fmt(left)}" y="{_fmt(spec.height - 10)}" font-family="sans-serif" '
        f'font-size="11" fill="#666666">0</text>'
    )
    parts.append(
        f'<text x="{_fmt(left + plot_w)}" y="{_fmt(spec.height - 10)}" font-family="sans-serif" '
        f'font-size="11" text-anchor="end" fill="#666666">{stream_length}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -- word cloud --------------------------------------------------------------


def _estimate_box(word: str, font_size: float) -> tuple[float, float]:
    # Metrics-free estimate; used consistently for layout and overlap tests.
    return 0.62 * font_size * max(len(word), 1), 1.15 * font_size


def wordcloud_layout(
    items: tuple[tuple[str, float], ...] | list[tuple[str, float]],
    width: int,
    height: int,
) -> tuple[PlacedWord, ...]:
    """Archimedean-spiral placement by descending weight with overlap rejection.

    Deterministic: no randomness anywhere. Words that cannot be placed
    within the spiral budget are skipped.
    """
    ordered = sorted(items, key=lambda it: (-it[1], it[0]))
    cx, cy = width / 2, height / 2
    placed: list[PlacedWord] = []
    for word, weight in ordered:
        font_size = _MIN_FONT + max(0.0, min(1.0, weight)) * (_MAX_FONT - _MIN_FONT)
        bw, bh = _estimate_box(word, font_size)
        for step in range(_SPIRAL_MAX_STEPS):
            t = step * _SPIRAL_STEP
            x = cx + _SPIRAL_GROWTH * t * math.cos(t)
            y = cy + 0.6 * _SPIRAL_GROWTH * t * math.sin(t)
            rect = (x - bw / 2, y - bh / 2, x + bw / 2, y + bh / 2)
            if rect[0] < 4 or rect[1] < 4 or rect[2] > width - 4 or rect[3] > height - 4:
                continue
            if any(_rects_overlap(rect, p.rect) for p in placed):
                continue
            placed.append(PlacedWord(word=word, weight=weight, x=x, y=y, font_size=font_size, rect=rect))
            break
    return tuple(placed)


def _rects_overlap(a: tuple[float, float, float, float], b: tuple[float, float, float, float]) -> bool:
    return a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]


def _render_wordcloud(spec: ChartSpec) -> str:
    items = tuple(spec.data)
    if not items:
        return _no_data_svg(spec)
    parts = _svg_open(spec.width, spec.height, spec.title)
    for p in wordcloud_layout(items, spec.width, spec.height):
        color = _BAND_COLORS[len(p.word) % len(_BAND_COLORS)]
        parts.append(
            f'<text x="{_fmt(p.x)}" y="{_fmt(p.y)}" font-family="sans-serif" '
            f'font-size="{_fmt(p.font_size)}" text-anchor="middle" dominant-baseline="central" '
            f'fill="{color}">{escape(p.word)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
