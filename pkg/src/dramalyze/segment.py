"""Fixed-size performance units: non-overlapping token windows.

The default window of 30 tokens approximates 10 to 15 seconds of stage
time. The last window may be short; it is kept, not dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .tokenizer import TokenStream

DEFAULT_SEGMENT_SIZE = 30


@dataclass(frozen=True)
class Segment:
    index: int
    start: int  # inclusive token index
    end: int  # exclusive token index

    @property
    def token_count(self) -> int:
        return self.end - self.start


def segment_stream(stream: TokenStream, size: int = DEFAULT_SEGMENT_SIZE) -> tuple[Segment, ...]:
    """Tile the stream into ceil(N/size) segments."""
    if size < 1:
        raise ValidationError("segment size must be positive")
    n = len(stream.tokens)
    return tuple(
        Segment(index=i, start=start, end=min(start + size, n))
        for i, start in enumerate(range(0, n, size))
    )


def segment_text(stream: TokenStream, seg: Segment) -> str:
    """Surfaces of the segment's tokens joined by single spaces."""
    if not (0 <= seg.start <= seg.end <= len(stream.tokens)):
        raise ValidationError(
            f"segment [{seg.start},{seg.end}) out of bounds for stream of {len(stream.tokens)} tokens"
        )
    return " ".join(t.surface for t in stream.tokens[seg.start : seg.end])
