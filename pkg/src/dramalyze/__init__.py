"""dramalyze: rhythm, repetition, and emotion analytics for dramatic texts."""

from .emotion import EMOTION_LABELS, EmotionProfile, EmotionScore, aggregate, import_scores, score_lexicon
from .lexstats import (
    DiversityReport,
    FrequencyTable,
    PunctuationStats,
    lexical_diversity,
    punctuation_stats,
    word_frequencies,
    wordcloud_data,
)
from .motif import Motif, build_suffix_index, longest_repeats, motif_chart_data
from .occurrence import (
    ClusterAssignment,
    OccurrenceTrack,
    RepetitionForms,
    cluster_positions,
    gantt_data,
    repetition_forms,
    track_word,
)
from .segment import Segment, segment_stream, segment_text
from .textio import CleanDocument, CleaningConfig, RawDocument, clean, load_document
from .tokenizer import Token, TokenStream, positions_in_fragment, tokenize

__version__ = "0.1.0"

__all__ = [
    "EMOTION_LABELS",
    "EmotionProfile",
    "EmotionScore",
    "aggregate",
    "import_scores",
    "score_lexicon",
    "DiversityReport",
    "FrequencyTable",
    "PunctuationStats",
    "lexical_diversity",
    "punctuation_stats",
    "word_frequencies",
    "wordcloud_data",
    "Motif",
    "build_suffix_index",
    "longest_repeats",
    "motif_chart_data",
    "ClusterAssignment",
    "OccurrenceTrack",
    "RepetitionForms",
    "cluster_positions",
    "gantt_data",
    "repetition_forms",
    "track_word",
    "Segment",
    "segment_stream",
    "segment_text",
    "CleanDocument",
    "CleaningConfig",
    "RawDocument",
    "clean",
    "load_document",
    "Token",
    "TokenStream",
    "positions_in_fragment",
    "tokenize",
    "__version__",
]
