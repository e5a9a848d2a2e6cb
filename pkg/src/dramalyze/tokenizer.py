"""Whitespace tokenization with breath-unit (fragment) boundaries.

A fragment is the stand-in for a sentence in stage text that runs on
ellipses: a new fragment opens after any token whose surface ends with
".", "...", "?", "!" or an em dash.

Two modes exist because some analyses count "what?" as a word of its own
while others want bare "what":

* ``plain``          -- trailing "?", "!", ".", "," are stripped from norms
* ``punct-attached`` -- trailing "?" and "!" stay attached; "." and "," are
                        still stripped
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from .errors import ValidationError
from .textio import EM_DASH, CleanDocument

MODE_PLAIN = "plain"
MODE_PUNCT_ATTACHED = "punct-attached"
MODES = (MODE_PLAIN, MODE_PUNCT_ATTACHED)

_BOUNDARY_CHARS = frozenset({".", "?", "!", EM_DASH})
_STRIP_PLAIN = "?!.,"
_STRIP_PUNCT_ATTACHED = ".,"
_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    surface: str
    norm: str
    index: int
    char_offset: int
    fragment_id: int
    punct_attached: bool


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]
    fragment_count: int
    mode: str

    def __len__(self) -> int:
        return len(self.tokens)

    def norms(self) -> list[str]:
        return [t.norm for t in self.tokens]


def _norm(surface: str, strip: str) -> str:
    lowered = surface.lower()
    stripped = lowered.rstrip(strip)
    # Pure-punctuation tokens (e.g. "..") would strip to nothing; they keep
    # their full lowercased surface as norm instead.
    return stripped if stripped else lowered


def plain_norm(surface: str) -> str:
    """The plain-mode norm of a single surface form."""
    return _norm(surface, _STRIP_PLAIN)


def tokenize(doc: CleanDocument | str, mode: str = MODE_PLAIN) -> TokenStream:
    """Split on whitespace and assign fragment ids; never emits empty tokens."""
    if mode not in MODES:
        raise ValidationError(f"unknown tokenization mode: {mode!r}")
    content = doc.content if isinstance(doc, CleanDocument) else doc
    strip = _STRIP_PLAIN if mode == MODE_PLAIN else _STRIP_PUNCT_ATTACHED

    tokens: list[Token] = []
    fragment_id = 0
    boundary_pending = False
    for index, match in enumerate(_TOKEN_RE.finditer(content)):
        if boundary_pending:
            fragment_id += 1
            boundary_pending = False
        surface = match.group()
        norm = _norm(surface, strip)
        tokens.append(
            Token(
                surface=surface,
                norm=norm,
                index=index,
                char_offset=match.start(),
                fragment_id=fragment_id,
                punct_attached=(mode == MODE_PUNCT_ATTACHED and norm != plain_norm(surface)),
            )
        )
        if surface[-1] in _BOUNDARY_CHARS:
            boundary_pending = True

    fragment_count = fragment_id + 1 if tokens else 0
    return TokenStream(tokens=tuple(tokens), fragment_count=fragment_count, mode=mode)


def positions_in_fragment(stream: TokenStream) -> tuple[float, ...]:
    """Relative position of each token within its fragment, in [0, 1].

    A fragment of length n maps its tokens to k/(n-1); single-token
    fragments map to 0.5 by convention.
    """
    if not stream.tokens:
        raise ValidationError("no tokens")
    lengths = Counter(t.fragment_id for t in stream.tokens)
    seen: Counter[int] = Counter()
    out: list[float] = []
    for token in stream.tokens:
        n = lengths[token.fragment_id]
        k = seen[token.fragment_id]
        seen[token.fragment_id] += 1
        out.append(0.5 if n == 1 else k / (n - 1))
    return tuple(out)
