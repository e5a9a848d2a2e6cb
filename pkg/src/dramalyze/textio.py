"""Loading and rule-based cleaning of raw play texts.

Cleaning is a fixed pipeline of individually toggleable rules, applied in a
fixed order so that the result is deterministic and idempotent:

    unicode_nfc -> unify_ellipsis -> collapse_whitespace
    -> strip_stage_directions -> charset_filter
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError

EM_DASH = "—"

# Punctuation that survives the charset filter. The em dash is kept because
# terminal dashes are part of the punctuation analysis.
RETAINED_PUNCT = frozenset(".?!,'-\"()") | {EM_DASH}

# Typographic variants are folded into their retained equivalents instead of
# being dropped outright, so "can't" never degrades to "cant".
_CHAR_EQUIV = {
    "‘": "'",  # left single quote
    "’": "'",  # right single quote / apostrophe
    "‚": "'",
    "ʼ": "'",
    "“": '"',
    "”": '"',
    "„": '"',
    "–": EM_DASH,  # en dash
    "―": EM_DASH,  # horizontal bar
    "‐": "-",
    "‑": "-",
}

_ELLIPSIS = "…"
_STAGE_RE = re.compile(r"\[[^\[\]]*\]")
_MULTISPACE_RE = re.compile(r" {2,}")


@dataclass(frozen=True)
class RawDocument:
    source_path: str
    content: str
    byte_length: int


@dataclass(frozen=True)
class CleanDocument:
    content: str
    applied_rules: tuple[str, ...]
    original_ref: str


@dataclass(frozen=True)
class CleaningConfig:
    """Per-rule switches; all on by default."""

    unicode_nfc: bool = True
    unify_ellipsis: bool = True
    collapse_whitespace: bool = True
    strip_stage_directions: bool = True
    charset_filter: bool = True


def load_document(path: str | Path) -> RawDocument:
    """Read a UTF-8 text file verbatim; no normalization is performed."""
    p = Path(path)
    try:
        data = p.read_bytes()
    except FileNotFoundError as exc:
        raise InputError(f"missing file: {p}") from exc
    try:
        content = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"invalid UTF-8 at byte {exc.start} in {p}") from exc
    return RawDocument(source_path=str(p), content=content, byte_length=len(data))


def clean(doc: RawDocument, rules: CleaningConfig | None = None) -> CleanDocument:
    """Apply the cleaning rules in fixed order.

    ``applied_rules`` records, in order, the rules that actually changed the
    text; an enabled rule that found nothing to do is not recorded.
    """
    cfg = rules if rules is not None else CleaningConfig()
    text = doc.content
    applied: list[str] = []

    for name, enabled, fn in (
        ("unicode_nfc", cfg.unicode_nfc, _normalize_nfc),
        ("unify_ellipsis", cfg.unify_ellipsis, _unify_ellipsis),
        ("collapse_whitespace", cfg.collapse_whitespace, _collapse_whitespace),
        ("strip_stage_directions", cfg.strip_stage_directions, _strip_stage_directions),
        ("charset_filter", cfg.charset_filter, _filter_charset),
    ):
        if not enabled:
            continue
        out = fn(text)
        if out != text:
            applied.append(name)
            text = out

    return CleanDocument(content=text, applied_rules=tuple(applied), original_ref=doc.source_path)


def _normalize_nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _unify_ellipsis(text: str) -> str:
    return text.replace(_ELLIPSIS, "...")


def _collapse_whitespace(text: str) -> str:
    # Equivalent to split-on-whitespace + join-with-space; line structure is
    # deliberately not preserved (stage text is one stream).
    return " ".join(text.split())


def _strip_stage_directions(text: str) -> str:
    out = text
    prev = None
    while prev != out:  # innermost-first so nested brackets disappear too
        prev = out
        out = _STAGE_RE.sub(" ", out)
    if out != text:
        out = _MULTISPACE_RE.sub(" ", out).strip()
    return out


def _keep_char(ch: str) -> bool:
    if ch == " " or ch == "\n":
        return True
    if ch in RETAINED_PUNCT:
        return True
    cat = unicodedata.category(ch)
    return cat.startswith("L") or cat == "Nd"


def _filter_charset(text: str) -> str:
    mapped = (_CHAR_EQUIV.get(ch, ch) for ch in text)
    return "".join(ch for ch in mapped if _keep_char(ch))
