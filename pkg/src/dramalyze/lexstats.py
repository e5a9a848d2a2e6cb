"""Word frequency, stopword filtering, lexical diversity, punctuation stats."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ValidationError
from .segment import Segment
from .textio import EM_DASH, CleanDocument
from .tokenizer import TokenStream

DEFAULT_MATTR_WINDOW = 50
DEFAULT_TOP_N = 7

PUNCTUATION_MARKS = (".", "?", "!", "...", EM_DASH, ",")

_DOT_RUN_RE = re.compile(r"\.+")


@dataclass(frozen=True)
class FrequencyEntry:
    norm: str
    count: int
    rank: int  # 1-based


@dataclass(frozen=True)
class FrequencyTable:
    entries: tuple[FrequencyEntry, ...]
    total_counted: int

    def to_dict(self) -> dict:
        return {
            "entries": [{"norm": e.norm, "count": e.count, "rank": e.rank} for e in self.entries],
            "total_counted": self.total_counted,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FrequencyTable":
        entries = tuple(FrequencyEntry(e["norm"], e["count"], e["rank"]) for e in d["entries"])
        return cls(entries=entries, total_counted=d["total_counted"])


@dataclass(frozen=True)
class DiversityReport:
    ttr: float
    mattr: float
    window: int
    per_segment_ttr: tuple[float, ...]


@dataclass(frozen=True)
class PunctuationStats:
    counts: dict[str, int]
    terminal_mark: str | None


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """One norm per line; blank lines and '#' comment lines are ignored.

    Without a path the pinned list shipped with the package is used.
    """
    if path is None:
        text = resources.files("dramalyze").joinpath("data/stopwords_en_v1.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


def word_frequencies(stream: TokenStream, stopwords: frozenset[str] = frozenset()) -> FrequencyTable:
    """Count norms outside the stoplist; rank by count desc, ties by norm asc."""
    counts = Counter(t.norm for t in stream.tokens if t.norm not in stopwords)
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    entries = tuple(
        FrequencyEntry(norm=norm, count=count, rank=rank)
        for rank, (norm, count) in enumerate(ordered, start=1)
    )
    return FrequencyTable(entries=entries, total_counted=sum(counts.values()))


def lexical_diversity(
    stream: TokenStream,
    window: int = DEFAULT_MATTR_WINDOW,
    segments: tuple[Segment, ...] = (),
) -> DiversityReport:
    """Plain TTR plus moving-average TTR over sliding windows of ``window`` tokens."""
    if not stream.tokens:
        raise ValidationError("diversity undefined on empty stream")
    if window < 1:
        raise ValidationError("diversity window must be positive")
    norms = stream.norms()
    ttr = len(set(norms)) / len(norms)
    per_segment = tuple(
        len(set(norms[s.start : s.end])) / (s.end - s.start) for s in segments if s.end > s.start
    )
    return DiversityReport(ttr=ttr, mattr=_mattr(norms, window), window=window, per_segment_ttr=per_segment)


def _mattr(norms: list[str], window: int) -> float:
    n = len(norms)
    if n <= window:
        return len(set(norms)) / n
    counts: Counter[str] = Counter(norms[:window])
    distinct = len(counts)
    acc = distinct / window
    for lead in range(window, n):
        out = norms[lead - window]
        counts[out] -= 1
        if counts[out] == 0:
            del counts[out]
            distinct -= 1
        entering = norms[lead]
        if counts[entering] == 0:
            distinct += 1
        counts[entering] += 1
        acc += distinct / window
    return acc / (n - window + 1)


def punctuation_stats(doc: CleanDocument) -> PunctuationStats:
    """Exact counts for the tracked marks.

    A maximal run of three or more dots counts as exactly one ellipsis;
    runs of one or two dots count as that many periods.
    """
    text = doc.content
    counts = {mark: 0 for mark in PUNCTUATION_MARKS}
    for match in _DOT_RUN_RE.finditer(text):
        run = len(match.group())
        if run >= 3:
            counts["..."] += 1
        else:
            counts["."] += run
    counts["?"] = text.count("?")
    counts["!"] = text.count("!")
    counts[EM_DASH] = text.count(EM_DASH)
    counts[","] = text.count(",")
    return PunctuationStats(counts=counts, terminal_mark=_terminal_mark(text))


def _terminal_mark(text: str) -> str | None:
    stripped = text.rstrip()
    if not stripped:
        return None
    last = stripped[-1]
    if last != ".":
        return last
    # distinguish a closing ellipsis from a plain period
    run = len(stripped) - len(stripped.rstrip("."))
    return "..." if run >= 3 else "."


def wordcloud_data(table: FrequencyTable, top_n: int = DEFAULT_TOP_N) -> tuple[tuple[str, float], ...]:
    """Top entries with weight = count / max count; first weight is 1.0."""
    if top_n < 1:
        raise ValidationError("top_n must be positive")
    if not table.entries:
        return ()
    top = table.entries[0].count
    return tuple((e.norm, e.count / top) for e in table.entries[:top_n])
