"""Per-segment emotion distributions over the canonical 7 labels.

Two backends feed this module: the built-in lexicon scorer below, and
score files imported from an external classifier (see ``import_scores``
for the exchange schema). Both produce the same EmotionScore shape.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError, ValidationError
from .tokenizer import plain_norm

EMOTION_LABELS = ("anger", "disgust", "fear", "joy", "neutral", "sadness", "surprise")
_NEUTRAL_INDEX = EMOTION_LABELS.index("neutral")

NEUTRAL_SMOOTHING = 0.5  # added to neutral so lexicon-sparse fragments degrade to neutral
_SUM_TOLERANCE = 1e-6


class ScoreNormalizationWarning(UserWarning):
    """Imported scores were renormalized because they did not sum to 1."""


@dataclass(frozen=True)
class EmotionScore:
    segment_index: int
    scores: tuple[float, ...]  # 7 non-negative floats summing to 1


@dataclass(frozen=True)
class EmotionProfile:
    per_segment: tuple[EmotionScore, ...]  # ordered by segment_index
    aggregate_mean: tuple[float, ...]
    dominant_counts: dict[str, int]  # label -> segments where it is argmax
    backend_id: str


def load_lexicon(path: str | Path) -> dict[str, tuple[float, ...]]:
    """Lexicon rows are "word,anger,disgust,fear,joy,neutral,sadness,surprise".

    A first line that repeats the column names verbatim is treated as a
    header. Malformed rows fail with their line number.
    """
    try:
        text = Path(path).read_text("utf-8")
    except FileNotFoundError as exc:
        raise InputError(f"missing lexicon file: {path}") from exc
    lexicon: dict[str, tuple[float, ...]] = {}
    header = "word," + ",".join(EMOTION_LABELS)
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if lineno == 1 and line == header:
            continue
        fields = line.split(",")
        if len(fields) != 8:
            raise ValidationError(f"lexicon line {lineno}: expected 8 comma-separated fields")
        word = fields[0].strip().lower()
        if not word:
            raise ValidationError(f"lexicon line {lineno}: empty word")
        try:
            weights = tuple(float(f) for f in fields[1:])
        except ValueError as exc:
            raise ValidationError(f"lexicon line {lineno}: non-numeric weight") from exc
        if any(w < 0 for w in weights):
            raise ValidationError(f"lexicon line {lineno}: negative weight")
        lexicon[word] = weights
    return lexicon


def score_lexicon(
    segment_text: str,
    lexicon: dict[str, tuple[float, ...]],
    segment_index: int = 0,
) -> EmotionScore:
    """Sum lexicon vectors of the segment's tokens, smooth toward neutral, normalize."""
    vector = [0.0] * len(EMOTION_LABELS)
    for chunk in segment_text.split():
        weights = lexicon.get(plain_norm(chunk))
        if weights is not None:
            for i, w in enumerate(weights):
                vector[i] += w
    vector[_NEUTRAL_INDEX] += NEUTRAL_SMOOTHING
    total = sum(vector)
    return EmotionScore(segment_index=segment_index, scores=tuple(v / total for v in vector))


@dataclass(frozen=True)
class ScoreImport:
    backend: str
    scores: tuple[EmotionScore, ...]


def load_score_document(path: str | Path, expected_segments: int) -> ScoreImport:
    """Parse and validate a score-import JSON file.

    Sums further than 1e-6 from 1 are renormalized with a
    ScoreNormalizationWarning; every other deviation from the schema is an
    error.
    """
    try:
        raw = Path(path).read_text("utf-8")
    except FileNotFoundError as exc:
        raise InputError(f"missing score file: {path}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"score file is not valid JSON: {exc}") from exc

    if not isinstance(doc, dict):
        raise ValidationError("score file must be a JSON object")
    if doc.get("labels") != list(EMOTION_LABELS):
        raise ValidationError(f"labels must be exactly {list(EMOTION_LABELS)}")
    backend = doc.get("backend")
    if not isinstance(backend, str):
        raise ValidationError("backend must be a string")
    segments = doc.get("segments")
    if not isinstance(segments, list):
        raise ValidationError("segments must be a list")

    by_index: dict[int, tuple[float, ...]] = {}
    for item in segments:
        if not isinstance(item, dict) or "index" not in item or "scores" not in item:
            raise ValidationError("each segment needs 'index' and 'scores'")
        idx = item["index"]
        if not isinstance(idx, int) or idx < 0:
            raise ValidationError(f"bad segment index: {idx!r}")
        if idx in by_index:
            raise ValidationError(f"segment {idx} duplicated")
        values = item["scores"]
        if not isinstance(values, list) or len(values) != len(EMOTION_LABELS):
            raise ValidationError(f"segment {idx}: expected {len(EMOTION_LABELS)} scores")
        floats = []
        for v in values:
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise ValidationError(f"segment {idx}: non-numeric score")
            if v < 0:
                raise ValidationError(f"segment {idx}: negative score")
            floats.append(float(v))
        by_index[idx] = tuple(floats)

    for idx in range(expected_segments):
        if idx not in by_index:
            raise ValidationError(f"segment {idx} absent")
    if len(by_index) != expected_segments:
        extra = sorted(set(by_index) - set(range(expected_segments)))
        raise ValidationError(f"unexpected segment indices: {extra}")

    scores = []
    for idx in range(expected_segments):
        values = by_index[idx]
        total = sum(values)
        if total <= 0:
            raise ValidationError(f"segment {idx}: scores sum to zero")
        if abs(total - 1.0) > _SUM_TOLERANCE:
            warnings.warn(
                f"segment {idx}: scores sum to {total:.6f}, renormalizing",
                ScoreNormalizationWarning,
                stacklevel=2,
            )
            values = tuple(v / total for v in values)
        scores.append(EmotionScore(segment_index=idx, scores=values))
    return ScoreImport(backend=backend, scores=tuple(scores))


def import_scores(path: str | Path, expected_segments: int) -> tuple[EmotionScore, ...]:
    return load_score_document(path, expected_segments).scores


def serialize_scores(scores: tuple[EmotionScore, ...] | list[EmotionScore], backend: str) -> str:
    """Canonical score-file serialization (the import schema, byte-stable)."""
    doc = {
        "labels": list(EMOTION_LABELS),
        "backend": backend,
        "segments": [
            {"index": s.segment_index, "scores": list(s.scores)}
            for s in sorted(scores, key=lambda s: s.segment_index)
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def aggregate(
    per_segment: list[EmotionScore] | tuple[EmotionScore, ...],
    backend_id: str = "unknown",
) -> EmotionProfile:
    """Mean score vector plus dominant-label counts (argmax, ties to label order)."""
    if not per_segment:
        raise ValidationError("no segment scores to aggregate")
    ordered = tuple(sorted(per_segment, key=lambda s: s.segment_index))
    n = len(ordered)
    mean = tuple(sum(s.scores[i] for s in ordered) / n for i in range(len(EMOTION_LABELS)))
    dominant = {label: 0 for label in EMOTION_LABELS}
    for s in ordered:
        best = max(range(len(EMOTION_LABELS)), key=lambda i: (s.scores[i], -i))
        dominant[EMOTION_LABELS[best]] += 1
    return EmotionProfile(
        per_segment=ordered,
        aggregate_mean=mean,
        dominant_counts=dominant,
        backend_id=backend_id,
    )
