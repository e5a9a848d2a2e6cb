"""Command-line interface.

Subcommands: analyze (full pipeline), freq, motifs, occurrences, emotions,
clean. Exit codes: 0 success, 1 usage error, 2 data/validation error.
Diagnostics go to stderr; results go to files or stdout.

Option precedence: built-in defaults < config file (--config or the
DRAMALYZE_CONFIG environment variable; "key = value" lines with the same
keys as the flags) < explicit flags.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import emotion as emo
from . import lexstats, motif, occurrence, report, segment, textio, tokenizer, viz
from .errors import DramalyzeError, ValidationError

CONFIG_ENV_VAR = "DRAMALYZE_CONFIG"

_DEFAULTS: dict = {
    "token_mode": tokenizer.MODE_PLAIN,
    "segment_size": segment.DEFAULT_SEGMENT_SIZE,
    "stopwords": None,
    "top_n": lexstats.DEFAULT_TOP_N,
    "mattr_window": lexstats.DEFAULT_MATTR_WINDOW,
    "k_clusters": occurrence.DEFAULT_K_CLUSTERS,
    "cooc_window": occurrence.DEFAULT_COOC_WINDOW,
    "track_words": None,
    "motif_top_k": motif.DEFAULT_TOP_K,
    "motif_min_count": motif.DEFAULT_MIN_COUNT,
    "motif_overlap": "forbid",
    "emotion_backend": "lexicon",
    "emotion_scores": None,
    "lexicon": None,
    "pie": "mean",
    "seed": 0,
}

_CLEAN_RULE_KEYS = (
    "clean_unicode_nfc",
    "clean_unify_ellipsis",
    "clean_collapse_whitespace",
    "clean_strip_stage_directions",
    "clean_charset_filter",
)

_INT_KEYS = {
    "segment_size",
    "top_n",
    "mattr_window",
    "k_clusters",
    "cooc_window",
    "motif_top_k",
    "motif_min_count",
    "seed",
}


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    input_path: str
    out_dir: str = "out"
    token_mode: str = tokenizer.MODE_PLAIN
    segment_size: int = segment.DEFAULT_SEGMENT_SIZE
    stopwords: str | None = None
    top_n: int = lexstats.DEFAULT_TOP_N
    mattr_window: int = lexstats.DEFAULT_MATTR_WINDOW
    k_clusters: int = occurrence.DEFAULT_K_CLUSTERS
    cooc_window: int = occurrence.DEFAULT_COOC_WINDOW
    track_words: list[str] | None = None
    motif_top_k: int = motif.DEFAULT_TOP_K
    motif_min_count: int = motif.DEFAULT_MIN_COUNT
    motif_overlap: str = "forbid"
    emotion_backend: str = "lexicon"
    emotion_scores: str | None = None
    lexicon: str | None = None
    pie: str = "mean"
    seed: int = 0
    export_segments: str | None = None
    cleaning: textio.CleaningConfig = field(default_factory=textio.CleaningConfig)


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _parse_bool(raw: str, key: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValidationError(f"config key {key}: expected a boolean, got {raw!r}")


def _read_config_file(path: str) -> dict:
    """Parse "key = value" lines; keys use the flag names (dashes or underscores)."""
    try:
        text = Path(path).read_text("utf-8")
    except FileNotFoundError as exc:
        raise ValidationError(f"config file not found: {path}") from exc
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"config line {lineno}: expected 'key = value'")
        key, raw = line.split("=", 1)
        key = key.strip().lower().replace("-", "_")
        raw = raw.strip()
        if key in _CLEAN_RULE_KEYS:
            values[key] = _parse_bool(raw, key)
        elif key in _INT_KEYS:
            try:
                values[key] = int(raw)
            except ValueError as exc:
                raise ValidationError(f"config key {key}: expected an integer, got {raw!r}") from exc
        elif key in _DEFAULTS or key in ("out", "export_segments"):
            values[key] = raw
        else:
            raise ValidationError(f"config line {lineno}: unknown key {key!r}")
    return values


def _add_common_flags(sub: argparse.ArgumentParser, defaults: dict) -> None:
    sub.add_argument("input", help="UTF-8 plain-text file to analyze")
    sub.add_argument(
        "--token-mode",
        choices=tokenizer.MODES,
        default=defaults["token_mode"],
        help="plain strips trailing ?!., from norms; punct-attached keeps ? and !",
    )
    sub.add_argument("--segment-size", type=int, default=defaults["segment_size"],
                     help="tokens per performance segment")
    sub.add_argument("--stopwords", default=defaults["stopwords"], metavar="FILE",
                     help="stoplist file, one norm per line (default: pinned built-in list)")
    sub.add_argument("--top-n", type=int, default=defaults["top_n"],
                     help="entries in the frequency table / word cloud")
    sub.add_argument("--mattr-window", type=int, default=defaults["mattr_window"],
                     help="window size for moving-average TTR")
    sub.add_argument("--k-clusters", type=int, default=defaults["k_clusters"],
                     help="clusters for pooled occurrence positions")
    sub.add_argument("--cooc-window", type=int, default=defaults["cooc_window"],
                     help="co-occurrence window (tokens each side) for PMI")
    sub.add_argument("--track-words", default=defaults["track_words"], metavar="W1,W2,...",
                     help="words to track (default: the top-N frequency words)")
    sub.add_argument("--motif-top-k", type=int, default=defaults["motif_top_k"],
                     help="number of motifs to report")
    sub.add_argument("--motif-min-count", type=int, default=defaults["motif_min_count"],
                     help="minimum occurrence count for a motif")
    sub.add_argument("--motif-overlap", choices=("allow", "forbid"),
                     default=defaults["motif_overlap"],
                     help="whether motif occurrences may overlap")
    sub.add_argument("--emotion-backend", choices=("lexicon", "import"),
                     default=defaults["emotion_backend"])
    sub.add_argument("--emotion-scores", default=defaults["emotion_scores"], metavar="FILE",
                     help="score-import JSON file (required with --emotion-backend import)")
    sub.add_argument("--lexicon", default=defaults["lexicon"], metavar="FILE",
                     help="emotion lexicon CSV (default: bundled demo lexicon)")
    sub.add_argument("--pie", choices=("mean", "dominant"), default=defaults["pie"],
                     help="pie chart semantics: mean probabilities or dominant-label shares")
    sub.add_argument("--seed", type=int, default=defaults["seed"],
                     help="seed echoed into the report; breaks clustering ties if any")


def build_parser(defaults: dict | None = None) -> _Parser:
    defaults = {**_DEFAULTS, **(defaults or {})}
    parser = _Parser(prog="dramalyze",
                     description="Rhythm, repetition, and emotion analytics for dramatic texts.")
    parser.add_argument("--config", metavar="FILE",
                        help=f"config file (also via ${CONFIG_ENV_VAR})")
    subs = parser.add_subparsers(dest="command", required=True)

    analyze = subs.add_parser("analyze", help="full pipeline: report, tables, and charts")
    _add_common_flags(analyze, defaults)
    analyze.add_argument("--out", default=defaults.get("out", "out"), metavar="DIR",
                         help="output directory")
    analyze.add_argument("--export-segments", default=defaults.get("export_segments"),
                         metavar="FILE", help="also write the segment export JSON for scoring adapters")

    for name, help_text in (
        ("freq", "word frequency table to stdout (CSV)"),
        ("motifs", "longest repeated motifs to stdout (JSON)"),
        ("occurrences", "word,position rows to stdout (CSV)"),
        ("emotions", "per-segment emotion profile to stdout (JSON)"),
        ("clean", "cleaned text to stdout"),
    ):
        sub = subs.add_parser(name, help=help_text)
        _add_common_flags(sub, defaults)

    return parser


def _cleaning_from_config(values: dict) -> textio.CleaningConfig:
    return textio.CleaningConfig(
        unicode_nfc=values.get("clean_unicode_nfc", True),
        unify_ellipsis=values.get("clean_unify_ellipsis", True),
        collapse_whitespace=values.get("clean_collapse_whitespace", True),
        strip_stage_directions=values.get("clean_strip_stage_directions", True),
        charset_filter=values.get("clean_charset_filter", True),
    )


def _config_from_args(args: argparse.Namespace, cleaning: textio.CleaningConfig) -> RunConfig:
    track_words = None
    if args.track_words:
        track_words = [w.strip() for w in args.track_words.split(",") if w.strip()]
    return RunConfig(
        input_path=args.input,
        out_dir=getattr(args, "out", "out"),
        token_mode=args.token_mode,
        segment_size=args.segment_size,
        stopwords=args.stopwords,
        top_n=args.top_n,
        mattr_window=args.mattr_window,
        k_clusters=args.k_clusters,
        cooc_window=args.cooc_window,
        track_words=track_words,
        motif_top_k=args.motif_top_k,
        motif_min_count=args.motif_min_count,
        motif_overlap=args.motif_overlap,
        emotion_backend=args.emotion_backend,
        emotion_scores=args.emotion_scores,
        lexicon=args.lexicon,
        pie=args.pie,
        seed=args.seed,
        export_segments=getattr(args, "export_segments", None),
        cleaning=cleaning,
    )


# -- pipeline ------------------------------------------------------------------


@dataclass
class PipelineResult:
    raw: textio.RawDocument
    clean_doc: textio.CleanDocument
    stream: tokenizer.TokenStream
    segments: tuple[segment.Segment, ...]
    stopwords: frozenset[str]
    stopwords_sha256: str
    frequency: lexstats.FrequencyTable


def _stopword_bytes(path: str | None) -> bytes:
    if path is None:
        return resources.files("dramalyze").joinpath("data/stopwords_en_v1.txt").read_bytes()
    return Path(path).read_bytes()


def _lexicon_path_bytes(path: str | None) -> tuple[str, bytes]:
    if path is None:
        data = resources.files("dramalyze").joinpath("data/lexicon_demo_v1.csv")
        return str(data), data.read_bytes()
    return path, Path(path).read_bytes()


def _load_pipeline(cfg: RunConfig) -> PipelineResult:
    raw = textio.load_document(cfg.input_path)
    clean_doc = textio.clean(raw, cfg.cleaning)
    stream = tokenizer.tokenize(clean_doc, cfg.token_mode)
    segments = segment.segment_stream(stream, cfg.segment_size)
    stop_bytes = _stopword_bytes(cfg.stopwords)
    stopwords = lexstats.load_stopwords(cfg.stopwords)
    frequency = lexstats.word_frequencies(stream, stopwords)
    return PipelineResult(
        raw=raw,
        clean_doc=clean_doc,
        stream=stream,
        segments=segments,
        stopwords=stopwords,
        stopwords_sha256=_sha256(stop_bytes),
        frequency=frequency,
    )


def _resolve_track_words(cfg: RunConfig, frequency: lexstats.FrequencyTable) -> list[str]:
    if cfg.track_words:
        return cfg.track_words
    return [e.norm for e in frequency.entries[: cfg.top_n]]


def _score_segments(cfg: RunConfig, pipe: PipelineResult) -> tuple[emo.EmotionProfile | None, dict]:
    """Returns (profile, provenance) where provenance feeds the config echo."""
    provenance: dict = {"lexicon_sha256": None, "scores_sha256": None}
    if not pipe.segments:
        return None, provenance
    if cfg.emotion_backend == "lexicon":
        lex_path, lex_bytes = _lexicon_path_bytes(cfg.lexicon)
        lexicon = emo.load_lexicon(lex_path)
        digest = _sha256(lex_bytes)
        provenance["lexicon_sha256"] = digest
        scores = [
            emo.score_lexicon(segment.segment_text(pipe.stream, seg), lexicon, seg.index)
            for seg in pipe.segments
        ]
        backend_id = f"lexicon:{digest[:12]}"
    elif cfg.emotion_backend == "import":
        if not cfg.emotion_scores:
            raise ValidationError("--emotion-scores is required with --emotion-backend import")
        doc = emo.load_score_document(cfg.emotion_scores, len(pipe.segments))
        provenance["scores_sha256"] = _sha256(Path(cfg.emotion_scores).read_bytes())
        scores = list(doc.scores)
        backend_id = doc.backend
    else:
        raise ValidationError(f"unknown emotion backend: {cfg.emotion_backend!r}")
    return emo.aggregate(scores, backend_id), provenance


def run_analysis(cfg: RunConfig) -> tuple[report.AnalysisReport, dict[str, str]]:
    """Run the full pipeline; returns the report and the four SVG documents."""
    pipe = _load_pipeline(cfg)
    stream = pipe.stream

    diversity = (
        lexstats.lexical_diversity(stream, cfg.mattr_window, pipe.segments)
        if stream.tokens
        else None
    )
    punctuation = lexstats.punctuation_stats(pipe.clean_doc)

    track_words = _resolve_track_words(cfg, pipe.frequency)
    tracks = tuple(occurrence.track_word(stream, w) for w in track_words)
    pooled = sum(len(t.positions) for t in tracks)
    clusters = (
        occurrence.cluster_positions(tracks, cfg.k_clusters, cfg.seed)
        if 1 <= cfg.k_clusters <= pooled
        else None
    )
    rep_forms = {
        t.norm: occurrence.repetition_forms(stream, t.norm, cfg.cooc_window)
        for t in tracks
        if t.positions
    }

    # Motifs always run on plain-mode norms so punctuation variants do not
    # break motif identity.
    motif_stream = (
        stream
        if cfg.token_mode == tokenizer.MODE_PLAIN
        else tokenizer.tokenize(pipe.clean_doc, tokenizer.MODE_PLAIN)
    )
    if len(motif_stream) >= 2:
        index = motif.build_suffix_index(motif_stream)
        motifs = motif.longest_repeats(
            index,
            motif_stream,
            top_k=cfg.motif_top_k,
            min_count=cfg.motif_min_count,
            allow_overlap=(cfg.motif_overlap == "allow"),
        )
    else:
        motifs = []

    emotions, emotion_provenance = _score_segments(cfg, pipe)

    config_echo = {
        "input_path": cfg.input_path,
        "input_sha256": _sha256(pipe.raw.content.encode("utf-8")),
        "cleaning": {
            "unicode_nfc": cfg.cleaning.unicode_nfc,
            "unify_ellipsis": cfg.cleaning.unify_ellipsis,
            "collapse_whitespace": cfg.cleaning.collapse_whitespace,
            "strip_stage_directions": cfg.cleaning.strip_stage_directions,
            "charset_filter": cfg.cleaning.charset_filter,
        },
        "applied_rules": list(pipe.clean_doc.applied_rules),
        "token_mode": cfg.token_mode,
        "segment_size": cfg.segment_size,
        "stopwords_sha256": pipe.stopwords_sha256,
        "top_n": cfg.top_n,
        "mattr_window": cfg.mattr_window,
        "track_words": track_words,
        "k_clusters": cfg.k_clusters,
        "cooc_window": cfg.cooc_window,
        "motif_top_k": cfg.motif_top_k,
        "motif_min_count": cfg.motif_min_count,
        "motif_overlap": cfg.motif_overlap,
        "emotion_backend": cfg.emotion_backend,
        "emotion_backend_id": emotions.backend_id if emotions else None,
        "lexicon_sha256": emotion_provenance["lexicon_sha256"],
        "scores_sha256": emotion_provenance["scores_sha256"],
        "pie": cfg.pie,
        "seed": cfg.seed,
    }

    result = report.assemble(
        config=config_echo,
        stream=report.StreamInfo(
            token_count=len(stream),
            fragment_count=stream.fragment_count,
            segment_count=len(pipe.segments),
        ),
        frequency=pipe.frequency,
        diversity=diversity,
        punctuation=punctuation,
        tracks=tracks,
        clusters=clusters,
        repetition_forms=rep_forms,
        motifs=motifs,
        emotions=emotions,
    )

    charts = _render_charts(cfg, result, motif_stream_length=len(motif_stream))
    return result, charts


def _pie_shares(rep: report.AnalysisReport, mode: str) -> tuple[float, ...]:
    if rep.emotions is None:
        return ()
    if mode == "dominant":
        total = sum(rep.emotions.dominant_counts.values())
        if total == 0:
            return ()
        return tuple(rep.emotions.dominant_counts[label] / total for label in emo.EMOTION_LABELS)
    return rep.emotions.aggregate_mean


def _render_charts(
    cfg: RunConfig, rep: report.AnalysisReport, motif_stream_length: int
) -> dict[str, str]:
    pie_spec = viz.ChartSpec(
        kind="pie",
        width=640,
        height=420,
        title=f"Emotion distribution ({cfg.pie})",
        data={"labels": list(emo.EMOTION_LABELS), "shares": list(_pie_shares(rep, cfg.pie))},
    )
    gantt_spec = viz.ChartSpec(
        kind="gantt_scatter",
        width=900,
        height=500,
        title="Word occurrences",
        data={
            "rows": occurrence.gantt_data(rep.tracks),
            "stream_length": rep.stream.token_count,
        },
    )
    motif_spec = viz.ChartSpec(
        kind="motif_bars",
        width=900,
        height=500,
        title="Longest repeated motifs",
        data={
            "rows": motif.motif_chart_data(list(rep.motifs), motif_stream_length),
            "stream_length": motif_stream_length,
        },
    )
    cloud_spec = viz.ChartSpec(
        kind="wordcloud",
        width=800,
        height=500,
        title="Word cloud",
        data=lexstats.wordcloud_data(rep.frequency, cfg.top_n) if rep.frequency.entries else (),
    )
    return {
        "pie.svg": viz.render(pie_spec),
        "occurrences.svg": viz.render(gantt_spec),
        "motifs.svg": viz.render(motif_spec),
        "wordcloud.svg": viz.render(cloud_spec),
    }


# -- subcommands ---------------------------------------------------------------


def _cmd_analyze(cfg: RunConfig) -> int:
    result, charts = run_analysis(cfg)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.write_report(result, out)
    report.write_tables(result, out)
    for name, svg_text in charts.items():
        (out / name).write_bytes(svg_text.encode("utf-8"))
    if cfg.export_segments:
        pipe = _load_pipeline(cfg)
        Path(cfg.export_segments).write_bytes(
            report.segments_export_json(pipe.stream, pipe.segments).encode("utf-8")
        )
    print(f"wrote report and charts to {out}", file=sys.stderr)
    return 0


def _cmd_clean(cfg: RunConfig) -> int:
    raw = textio.load_document(cfg.input_path)
    sys.stdout.write(textio.clean(raw, cfg.cleaning).content + "\n")
    return 0


def _cmd_freq(cfg: RunConfig) -> int:
    pipe = _load_pipeline(cfg)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["rank", "word", "count"])
    for entry in pipe.frequency.entries[: cfg.top_n]:
        writer.writerow([entry.rank, entry.norm, entry.count])
    return 0


def _cmd_occurrences(cfg: RunConfig) -> int:
    pipe = _load_pipeline(cfg)
    track_words = _resolve_track_words(cfg, pipe.frequency)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["word", "position"])
    for word in track_words:
        for position in occurrence.track_word(pipe.stream, word).positions:
            writer.writerow([word, position])
    return 0


def _cmd_motifs(cfg: RunConfig) -> int:
    pipe = _load_pipeline(cfg)
    motif_stream = (
        pipe.stream
        if cfg.token_mode == tokenizer.MODE_PLAIN
        else tokenizer.tokenize(pipe.clean_doc, tokenizer.MODE_PLAIN)
    )
    if len(motif_stream) >= 2:
        index = motif.build_suffix_index(motif_stream)
        motifs = motif.longest_repeats(
            index,
            motif_stream,
            top_k=cfg.motif_top_k,
            min_count=cfg.motif_min_count,
            allow_overlap=(cfg.motif_overlap == "allow"),
        )
    else:
        motifs = []
    doc = [
        {"display": m.display, "length": m.length, "count": m.count, "occurrences": list(m.occurrences)}
        for m in motifs
    ]
    sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    return 0


def _cmd_emotions(cfg: RunConfig) -> int:
    pipe = _load_pipeline(cfg)
    profile, _ = _score_segments(cfg, pipe)
    if profile is None:
        doc = {
            "labels": list(emo.EMOTION_LABELS),
            "backend": None,
            "segments": [],
            "aggregate_mean": None,
            "dominant_counts": None,
        }
    else:
        doc = {
            "labels": list(emo.EMOTION_LABELS),
            "backend": profile.backend_id,
            "segments": [
                {"index": s.segment_index, "scores": list(s.scores)} for s in profile.per_segment
            ],
            "aggregate_mean": list(profile.aggregate_mean),
            "dominant_counts": dict(profile.dominant_counts),
        }
    sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    return 0


_COMMANDS = {
    "analyze": _cmd_analyze,
    "clean": _cmd_clean,
    "freq": _cmd_freq,
    "occurrences": _cmd_occurrences,
    "motifs": _cmd_motifs,
    "emotions": _cmd_emotions,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)

    pre = _Parser(add_help=False)
    pre.add_argument("--config")
    try:
        known, _ = pre.parse_known_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config_path = known.config or os.environ.get(CONFIG_ENV_VAR)

    try:
        file_values = _read_config_file(config_path) if config_path else {}
    except DramalyzeError as exc:
        print(f"dramalyze: error: {exc}", file=sys.stderr)
        return 2

    parser = build_parser({k: v for k, v in file_values.items() if k not in _CLEAN_RULE_KEYS})
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits for usage errors and --help
        return int(exc.code or 0)
    cleaning = _cleaning_from_config(file_values)

    try:
        cfg = _config_from_args(args, cleaning)
        return _COMMANDS[args.command](cfg)
    except DramalyzeError as exc:
        print(f"dramalyze: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"dramalyze: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
