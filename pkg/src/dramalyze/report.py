"""Assembly and serialization of the single machine-readable analysis report.

The report is one JSON document with a fixed key order plus per-table CSV
files. Serialization is byte-stable: serializing, parsing, and serializing
again reproduces the identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .emotion import EMOTION_LABELS, EmotionProfile, EmotionScore
from .errors import ConsistencyError
from .lexstats import DiversityReport, FrequencyTable, PunctuationStats
from .motif import Motif
from .occurrence import ClusterAssignment, OccurrenceTrack, RepetitionForms
from .segment import Segment, segment_text
from .tokenizer import TokenStream

SCHEMA_VERSION = "1.0"

_REQUIRED_CONFIG_KEYS = (
    "token_mode",
    "segment_size",
    "stopwords_sha256",
    "top_n",
    "k_clusters",
    "cooc_window",
    "mattr_window",
    "motif_top_k",
    "motif_min_count",
    "motif_overlap",
    "emotion_backend",
    "seed",
)


@dataclass(frozen=True)
class StreamInfo:
    token_count: int
    fragment_count: int
    segment_count: int


@dataclass(frozen=True)
class AnalysisReport:
    schema_version: str
    config: dict
    stream: StreamInfo
    frequency: FrequencyTable
    diversity: DiversityReport | None
    punctuation: PunctuationStats
    tracks: tuple[OccurrenceTrack, ...]
    clusters: ClusterAssignment | None
    repetition_forms: dict[str, RepetitionForms]
    motifs: tuple[Motif, ...]
    emotions: EmotionProfile | None

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "config": self.config,
            "stream": {
                "token_count": self.stream.token_count,
                "fragment_count": self.stream.fragment_count,
                "segment_count": self.stream.segment_count,
            },
            "frequency": self.frequency.to_dict(),
            "diversity": None
            if self.diversity is None
            else {
                "ttr": self.diversity.ttr,
                "mattr": self.diversity.mattr,
                "window": self.diversity.window,
                "per_segment_ttr": list(self.diversity.per_segment_ttr),
            },
            "punctuation": {
                "counts": dict(self.punctuation.counts),
                "terminal_mark": self.punctuation.terminal_mark,
            },
            "tracks": [
                {"norm": t.norm, "positions": list(t.positions)} for t in self.tracks
            ],
            "clusters": None
            if self.clusters is None
            else {
                "k": self.clusters.k,
                "positions": list(self.clusters.positions),
                "centroids": list(self.clusters.centroids),
                "labels": list(self.clusters.labels),
                "boundaries": list(self.clusters.boundaries),
            },
            "repetition_forms": {
                word: {
                    "positional": dict(forms.positional),
                    "associative": [[neighbor, pmi] for neighbor, pmi in forms.associative],
                    "aggregative_burstiness": forms.aggregative_burstiness,
                }
                for word, forms in self.repetition_forms.items()
            },
            "motifs": [
                {
                    "display": m.display,
                    "length": m.length,
                    "count": m.count,
                    "occurrences": list(m.occurrences),
                }
                for m in self.motifs
            ],
            "emotions": None
            if self.emotions is None
            else {
                "labels": list(EMOTION_LABELS),
                "backend": self.emotions.backend_id,
                "segments": [
                    {"index": s.segment_index, "scores": list(s.scores)}
                    for s in self.emotions.per_segment
                ],
                "aggregate_mean": list(self.emotions.aggregate_mean),
                "dominant_counts": dict(self.emotions.dominant_counts),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def from_dict(d: dict) -> AnalysisReport:
    """Rebuild a report from its parsed JSON form (inverse of ``to_dict``)."""
    diversity = d["diversity"]
    clusters = d["clusters"]
    emotions = d["emotions"]
    return AnalysisReport(
        schema_version=d["schema_version"],
        config=d["config"],
        stream=StreamInfo(
            token_count=d["stream"]["token_count"],
            fragment_count=d["stream"]["fragment_count"],
            segment_count=d["stream"]["segment_count"],
        ),
        frequency=FrequencyTable.from_dict(d["frequency"]),
        diversity=None
        if diversity is None
        else DiversityReport(
            ttr=diversity["ttr"],
            mattr=diversity["mattr"],
            window=diversity["window"],
            per_segment_ttr=tuple(diversity["per_segment_ttr"]),
        ),
        punctuation=PunctuationStats(
            counts=dict(d["punctuation"]["counts"]),
            terminal_mark=d["punctuation"]["terminal_mark"],
        ),
        tracks=tuple(
            OccurrenceTrack(norm=t["norm"], positions=tuple(t["positions"])) for t in d["tracks"]
        ),
        clusters=None
        if clusters is None
        else ClusterAssignment(
            k=clusters["k"],
            positions=tuple(clusters["positions"]),
            centroids=tuple(clusters["centroids"]),
            labels=tuple(clusters["labels"]),
            boundaries=tuple(clusters["boundaries"]),
        ),
        repetition_forms={
            word: RepetitionForms(
                positional=dict(forms["positional"]),
                associative=tuple((n, p) for n, p in forms["associative"]),
                aggregative_burstiness=forms["aggregative_burstiness"],
            )
            for word, forms in d["repetition_forms"].items()
        },
        motifs=tuple(
            Motif(
                token_norms=(),  # not serialized; display + occurrences are canonical
                length=m["length"],
                occurrences=tuple(m["occurrences"]),
                count=m["count"],
                display=m["display"],
            )
            for m in d["motifs"]
        ),
        emotions=None
        if emotions is None
        else EmotionProfile(
            per_segment=tuple(
                EmotionScore(segment_index=s["index"], scores=tuple(s["scores"]))
                for s in emotions["segments"]
            ),
            aggregate_mean=tuple(emotions["aggregate_mean"]),
            dominant_counts=dict(emotions["dominant_counts"]),
            backend_id=emotions["backend"],
        ),
    )


def parse_report(text: str) -> AnalysisReport:
    return from_dict(json.loads(text))


def assemble(
    *,
    config: dict,
    stream: StreamInfo,
    frequency: FrequencyTable,
    diversity: DiversityReport | None,
    punctuation: PunctuationStats,
    tracks: tuple[OccurrenceTrack, ...],
    clusters: ClusterAssignment | None,
    repetition_forms: dict[str, RepetitionForms],
    motifs: tuple[Motif, ...] | list[Motif],
    emotions: EmotionProfile | None,
) -> AnalysisReport:
    """Build the report and validate its internal cross-references."""
    n = stream.token_count

    for key in _REQUIRED_CONFIG_KEYS:
        if key not in config:
            raise ConsistencyError(f"config: missing key {key!r}")

    counted = sum(e.count for e in frequency.entries)
    if counted != frequency.total_counted:
        raise ConsistencyError("frequency.total_counted: does not equal the sum of counts")

    for track in tracks:
        if any(not (0 <= p < n) for p in track.positions):
            raise ConsistencyError(f"tracks.positions: {track.norm!r} outside [0, {n})")

    if clusters is not None:
        if len(clusters.labels) != len(clusters.positions):
            raise ConsistencyError("clusters.labels: length differs from positions")
        if list(clusters.labels) != sorted(clusters.labels):
            raise ConsistencyError("clusters.labels: not non-decreasing over sorted positions")

    for motif in motifs:
        for occ in motif.occurrences:
            if occ + motif.length > n:
                raise ConsistencyError(
                    f"motifs.occurrences: occurrence {occ} of length {motif.length} exceeds {n} tokens"
                )

    if emotions is not None:
        indices = [s.segment_index for s in emotions.per_segment]
        if indices != list(range(len(indices))):
            raise ConsistencyError("emotions.per_segment: segment indices not 0..n-1")
        if stream.segment_count != len(indices):
            raise ConsistencyError("emotions.per_segment: count differs from segment_count")

    return AnalysisReport(
        schema_version=SCHEMA_VERSION,
        config=config,
        stream=stream,
        frequency=frequency,
        diversity=diversity,
        punctuation=punctuation,
        tracks=tuple(tracks),
        clusters=clusters,
        repetition_forms=repetition_forms,
        motifs=tuple(motifs),
        emotions=emotions,
    )


# -- file outputs --------------------------------------------------------------


def _csv_text(rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def write_tables(report: AnalysisReport, out_dir: str | Path) -> list[Path]:
    """Write the per-table CSVs under <out_dir>/tables and return their paths."""
    tables_dir = Path(out_dir) / "tables"
    tables_dir.mkdir(parents=True, exist_ok=True)
    written = []

    freq_rows: list[list] = [["rank", "word", "count"]]
    freq_rows += [[e.rank, e.norm, e.count] for e in report.frequency.entries]
    written.append(_write_text(tables_dir / "frequency.csv", _csv_text(freq_rows)))

    occ_rows: list[list] = [["word", "position"]]
    for track in report.tracks:
        occ_rows += [[track.norm, p] for p in track.positions]
    written.append(_write_text(tables_dir / "occurrences.csv", _csv_text(occ_rows)))

    if report.diversity is not None:
        div_rows: list[list] = [["segment", "ttr"]]
        div_rows += [[i, ttr] for i, ttr in enumerate(report.diversity.per_segment_ttr)]
        written.append(_write_text(tables_dir / "diversity.csv", _csv_text(div_rows)))

    if report.emotions is not None:
        emo_rows: list[list] = [["segment", *EMOTION_LABELS]]
        emo_rows += [
            [s.segment_index, *s.scores] for s in report.emotions.per_segment
        ]
        written.append(_write_text(tables_dir / "emotions.csv", _csv_text(emo_rows)))

    return written


def _write_text(path: Path, text: str) -> Path:
    path.write_bytes(text.encode("utf-8"))
    return path


def write_report(report: AnalysisReport, out_dir: str | Path) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "report.json"
    _write_text(path, report.to_json())
    return path


def segments_export_json(stream: TokenStream, segments: tuple[Segment, ...]) -> str:
    """The segment export consumed by external scoring adapters."""
    doc = {
        "segments": [
            {"index": seg.index, "text": segment_text(stream, seg)} for seg in segments
        ]
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
