"""Occurrence tracks, 1-D clustering into implicit acts, repetition-form metrics.

The three repetition forms are operationalized as:

* positional   -- histogram of in-fragment relative positions over thirds
* associative  -- windowed PMI against neighboring words
* aggregative  -- burstiness B = (sigma - mu) / (sigma + mu) of the
                  inter-occurrence gaps (-1 = perfectly periodic)
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .errors import ValidationError
from .tokenizer import TokenStream, positions_in_fragment

DEFAULT_K_CLUSTERS = 3
DEFAULT_COOC_WINDOW = 5
_MAX_LLOYD_ITERATIONS = 100


@dataclass(frozen=True)
class OccurrenceTrack:
    norm: str
    positions: tuple[int, ...]  # strictly increasing token indices


@dataclass(frozen=True)
class ClusterAssignment:
    k: int
    positions: tuple[int, ...]  # pooled, sorted
    centroids: tuple[float, ...]
    labels: tuple[int, ...]  # aligned with positions; non-decreasing
    boundaries: tuple[float, ...]  # k-1 midpoints between adjacent-cluster extremes


@dataclass(frozen=True)
class RepetitionForms:
    positional: dict[str, float]  # {"start": ..., "middle": ..., "end": ...}
    associative: tuple[tuple[str, float], ...]  # (neighbor norm, pmi), pmi desc
    aggregative_burstiness: float | None  # absent with < 3 occurrences


def track_word(stream: TokenStream, norm: str) -> OccurrenceTrack:
    positions = tuple(t.index for t in stream.tokens if t.norm == norm)
    return OccurrenceTrack(norm=norm, positions=positions)


def cluster_positions(
    tracks: list[OccurrenceTrack] | tuple[OccurrenceTrack, ...],
    k: int = DEFAULT_K_CLUSTERS,
    seed: int = 0,
) -> ClusterAssignment:
    """1-D k-means over the pooled positions of all tracks.

    Initialization is deterministic: centroid i starts at the (i+0.5)/k
    quantile of the sorted pool. ``seed`` is accepted for the degenerate
    case of tied quantile seeds; with distinct token positions the seeds
    are always distinct and the seed value never influences the result.
    """
    pooled = sorted(p for track in tracks for p in track.positions)
    if k < 1:
        raise ValidationError("k must be at least 1")
    if len(pooled) < k:
        raise ValidationError("k exceeds occurrence count")
    labels, centroids, _ = lloyd_1d(pooled, k)

    boundaries = []
    for cluster in range(k - 1):
        left_max = max(x for x, lab in zip(pooled, labels) if lab == cluster)
        right_min = min(x for x, lab in zip(pooled, labels) if lab == cluster + 1)
        boundaries.append((left_max + right_min) / 2)

    return ClusterAssignment(
        k=k,
        positions=tuple(pooled),
        centroids=tuple(centroids),
        labels=tuple(labels),
        boundaries=tuple(boundaries),
    )


def lloyd_1d(values: list[int] | list[float], k: int) -> tuple[list[int], list[float], list[float]]:
    """Lloyd iterations on sorted 1-D data with quantile seeding.

    Returns (labels, centroids, wss_history); wss_history holds the
    within-cluster sum of squares after each full iteration and is
    monotone non-increasing.
    """
    n = len(values)
    centroids = [float(values[int((i + 0.5) * n / k)]) for i in range(k)]
    labels = [0] * n
    history: list[float] = []
    for _ in range(_MAX_LLOYD_ITERATIONS):
        new_labels = [_nearest(x, centroids) for x in values]
        sums = [0.0] * k
        counts = [0] * k
        for x, lab in zip(values, new_labels):
            sums[lab] += x
            counts[lab] += 1
        centroids = [
            sums[j] / counts[j] if counts[j] else centroids[j]  # empty cluster keeps its centroid
            for j in range(k)
        ]
        history.append(
            sum((x - centroids[lab]) ** 2 for x, lab in zip(values, new_labels))
        )
        if new_labels == labels:
            break
        labels = new_labels
    return labels, centroids, history


def _nearest(x: float, centroids: list[float]) -> int:
    best = 0
    best_distance = abs(x - centroids[0])
    for j in range(1, len(centroids)):
        d = abs(x - centroids[j])
        if d < best_distance:  # ties resolve to the lower cluster id
            best_distance = d
            best = j
    return best


def repetition_forms(stream: TokenStream, norm: str, window: int = DEFAULT_COOC_WINDOW) -> RepetitionForms:
    """Positional, associative, and aggregative repetition metrics for one word."""
    track = track_word(stream, norm)
    if not track.positions:
        raise ValidationError("no occurrences")
    if window < 1:
        raise ValidationError("co-occurrence window must be positive")

    relative = positions_in_fragment(stream)
    thirds = {"start": 0, "middle": 0, "end": 0}
    for p in track.positions:
        r = relative[p]
        if r < 1 / 3:
            thirds["start"] += 1
        elif r < 2 / 3:
            thirds["middle"] += 1
        else:
            thirds["end"] += 1
    total = len(track.positions)
    positional = {key: value / total for key, value in thirds.items()}

    return RepetitionForms(
        positional=positional,
        associative=_associative_pmi(stream, norm, track.positions, window),
        aggregative_burstiness=burstiness(track.positions),
    )


def _associative_pmi(
    stream: TokenStream, norm: str, positions: tuple[int, ...], window: int
) -> tuple[tuple[str, float], ...]:
    """Neighbors ranked by PMI(x, y) = log2(cooc * N / (c(x) * c(y) * 2w)).

    cooc counts token pairs within ``window`` positions of an occurrence of
    x; only neighbors with joint count >= 2 are scored, and x itself is
    excluded (self-association is the aggregative axis, not this one).
    """
    norms = stream.norms()
    n = len(norms)
    unigram = Counter(norms)
    cooc: Counter[str] = Counter()
    for p in positions:
        for q in range(max(0, p - window), min(n, p + window + 1)):
            if q == p:
                continue
            neighbor = norms[q]
            if neighbor != norm:
                cooc[neighbor] += 1

    scored = []
    for neighbor, joint in cooc.items():
        if joint < 2:
            continue
        pmi = math.log2(joint * n / (unigram[norm] * unigram[neighbor] * 2 * window))
        scored.append((neighbor, pmi))
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return tuple(scored)


def burstiness(positions: tuple[int, ...] | list[int]) -> float | None:
    """B = (sigma - mu) / (sigma + mu) over inter-occurrence gaps.

    Undefined (None) with fewer than 3 occurrences. Uses the population
    standard deviation, so constant gaps give exactly -1.
    """
    if len(positions) < 3:
        return None
    gaps = [b - a for a, b in zip(positions, positions[1:])]
    mu = sum(gaps) / len(gaps)
    sigma = math.sqrt(sum((g - mu) ** 2 for g in gaps) / len(gaps))
    return (sigma - mu) / (sigma + mu)


def gantt_data(
    tracks: list[OccurrenceTrack] | tuple[OccurrenceTrack, ...],
) -> tuple[tuple[str, tuple[int, ...]], ...]:
    """One row per non-empty track, ordered by first occurrence."""
    rows = [(track.norm, track.positions) for track in tracks if track.positions]
    rows.sort(key=lambda row: row[1][0])
    return tuple(rows)
