"""Maximal repeated token sequences (motifs) via suffix array + LCP array.

The suffix array is built over dense integer ids of the normalized tokens
with prefix-doubling (O(N log N)); the LCP array with Kasai's algorithm.
Maximal repeats are enumerated as LCP intervals (right-maximality) whose
preceding-token multiset is not uniform (left-maximality).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .tokenizer import TokenStream

DEFAULT_TOP_K = 10
DEFAULT_MIN_COUNT = 2


@dataclass(frozen=True)
class TokenAlphabet:
    norm_to_id: dict[str, int]
    id_to_norm: tuple[str, ...]

    @classmethod
    def from_norms(cls, norms: list[str]) -> "TokenAlphabet":
        vocab = sorted(set(norms))
        return cls(norm_to_id={n: i for i, n in enumerate(vocab)}, id_to_norm=tuple(vocab))


@dataclass(frozen=True)
class SuffixIndex:
    ids: np.ndarray  # int64 token ids, length N
    sa: np.ndarray  # suffix array, permutation of 0..N-1
    lcp: np.ndarray  # lcp[i] = LCP(suffix sa[i-1], suffix sa[i]); lcp[0] = 0
    alphabet: TokenAlphabet


@dataclass(frozen=True)
class Motif:
    token_norms: tuple[str, ...]
    length: int
    occurrences: tuple[int, ...]  # strictly increasing start indices
    count: int
    display: str


def build_suffix_index(stream: TokenStream) -> SuffixIndex:
    norms = stream.norms()
    alphabet = TokenAlphabet.from_norms(norms)
    ids = np.fromiter((alphabet.norm_to_id[n] for n in norms), dtype=np.int64, count=len(norms))
    sa = suffix_array(ids)
    lcp = lcp_array(ids, sa)
    return SuffixIndex(ids=ids, sa=sa, lcp=lcp, alphabet=alphabet)


def _radix_argsort(keys: np.ndarray) -> np.ndarray:
    """Stable argsort of non-negative keys < 2**32 in O(N).

    numpy's stable sort radix-sorts 16-bit integers, so two digit passes
    cover the full range; a single pass suffices for small keys.
    """
    if len(keys) == 0:
        return np.empty(0, dtype=np.int64)
    if keys.max() < 65536:
        return np.argsort(keys.astype(np.uint16), kind="stable")
    perm = np.argsort((keys & 0xFFFF).astype(np.uint16), kind="stable")
    high = (keys >> 16).astype(np.uint16)
    return perm[np.argsort(high[perm], kind="stable")]


def suffix_array(ids: np.ndarray) -> np.ndarray:
    """Prefix-doubling suffix sort, O(N) radix passes per doubling step.

    Out-of-range second halves rank below every real rank, so shorter
    suffixes sort before their extensions.
    """
    n = len(ids)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    if n == 1:
        return np.zeros(1, dtype=np.int64)

    ids = np.asarray(ids, dtype=np.int64)
    if ids.min() < 0 or ids.max() >= 2**31:
        _, ids = np.unique(ids, return_inverse=True)  # compress exotic id ranges
    rank = ids

    k = 1
    while True:
        second = np.zeros(n, dtype=np.int64)  # 0 marks "past the end"
        second[: n - k] = rank[k:] + 1
        perm = _radix_argsort(second)
        sa = perm[_radix_argsort(rank[perm])]

        r1, r2 = rank[sa], second[sa]
        changed = np.empty(n, dtype=np.int64)
        changed[0] = 0
        changed[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        fresh = np.cumsum(changed)
        if fresh[-1] == n - 1:
            return sa
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = fresh
        k <<= 1


def lcp_array(ids: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """Kasai's algorithm; linear time. Plain lists: scalar numpy stores are slow."""
    n = len(sa)
    if n < 2:
        return np.zeros(n, dtype=np.int64)
    rank = [0] * n
    sa_list = sa.tolist()
    ids_list = ids.tolist()
    for row, suffix in enumerate(sa_list):
        rank[suffix] = row
    lcp = [0] * n
    h = 0
    for i in range(n):
        row = rank[i]
        if row == 0:
            h = 0
            continue
        j = sa_list[row - 1]
        while i + h < n and j + h < n and ids_list[i + h] == ids_list[j + h]:
            h += 1
        lcp[row] = h
        if h:
            h -= 1
    return np.array(lcp, dtype=np.int64)


def _lcp_intervals(lcp: np.ndarray) -> list[tuple[int, int, int]]:
    """All LCP intervals as (depth, first_row, last_row), depth > 0.

    Each interval corresponds to a right-maximal repeated id sequence of
    ``depth`` tokens whose occurrences are sa[first_row..last_row].
    """
    n = len(lcp)
    lcp_list = lcp.tolist()
    intervals: list[tuple[int, int, int]] = []
    stack: list[tuple[int, int]] = []  # (depth, leftmost row where depth became active)
    for i in range(1, n + 1):
        current = lcp_list[i] if i < n else 0
        left = i
        while stack and stack[-1][0] > current:
            depth, left = stack.pop()
            intervals.append((depth, left - 1, i - 1))
        if current > 0 and (not stack or stack[-1][0] < current):
            stack.append((current, left))
    return intervals


def _is_left_maximal(ids_list: list[int], occurrences: list[int]) -> bool:
    # Left-maximal iff the preceding tokens are not all identical; an
    # occurrence at position 0 has no predecessor and counts as distinct.
    first = occurrences[0]
    if first == 0:
        return True
    prev = ids_list[first - 1]
    for occ in occurrences[1:]:
        if occ == 0 or ids_list[occ - 1] != prev:
            return True
    return False


def motif_display(norms: tuple[str, ...]) -> str:
    """First three words + "..." + last two words once six or more tokens."""
    if len(norms) >= 6:
        return " ".join(norms[:3]) + "..." + " ".join(norms[-2:])
    return " ".join(norms)


def _greedy_non_overlapping(occurrences: list[int], length: int) -> list[int]:
    kept: list[int] = []
    next_free = -1
    for occ in occurrences:
        if occ >= next_free:
            kept.append(occ)
            next_free = occ + length
    return kept


def longest_repeats(
    index: SuffixIndex,
    stream: TokenStream,
    top_k: int = DEFAULT_TOP_K,
    min_count: int = DEFAULT_MIN_COUNT,
    allow_overlap: bool = False,
) -> list[Motif]:
    """Maximal repeats ranked by length desc, count desc, first occurrence asc.

    With ``allow_overlap=False`` each motif's occurrences are reduced to the
    greedy left-to-right non-overlapping subset before the ``min_count``
    filter applies.
    """
    if top_k < 1:
        raise ValidationError("top_k must be positive")
    if min_count < 2:
        raise ValidationError("min_count must be at least 2")
    n = len(index.sa)
    if n < 2:
        return []

    ids_list = index.ids.tolist()
    sa_list = index.sa.tolist()
    norms = stream.norms()

    motifs: list[Motif] = []
    for depth, first_row, last_row in _lcp_intervals(index.lcp):
        occurrences = sorted(sa_list[first_row : last_row + 1])
        if not _is_left_maximal(ids_list, occurrences):
            continue
        if not allow_overlap:
            occurrences = _greedy_non_overlapping(occurrences, depth)
        if len(occurrences) < min_count:
            continue
        start = occurrences[0]
        token_norms = tuple(norms[start : start + depth])
        motifs.append(
            Motif(
                token_norms=token_norms,
                length=depth,
                occurrences=tuple(occurrences),
                count=len(occurrences),
                display=motif_display(token_norms),
            )
        )

    motifs.sort(key=lambda m: (-m.length, -m.count, m.occurrences[0]))
    return motifs[:top_k]


def motif_chart_data(
    motifs: list[Motif], stream_length: int
) -> tuple[tuple[str, tuple[tuple[int, int], ...]], ...]:
    """One row per motif: (display, occurrence intervals [occ, occ+L))."""
    rows = []
    for motif in motifs:
        spans = tuple((occ, occ + motif.length) for occ in motif.occurrences)
        for _, end in spans:
            if end > stream_length:
                raise ValidationError(
                    f"motif span end {end} exceeds stream length {stream_length}"
                )
        rows.append((motif.display, spans))
    return tuple(rows)
