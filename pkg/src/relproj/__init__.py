"""relproj: cross-lingual projection of open relation triples.

Given a source-language sentence, its English translation, and the word
alignment between them, the toolkit maps (arg1; rel; arg2) phrases
extracted over the English side back onto the source sentence, choosing
among alignment-consistent phrase pairs by smoothed sentence-level BLEU
and falling back to word-level alignment projection when nothing
overlaps. An evaluation harness scores projected relations against
human annotations and measures inter-annotator agreement.
"""

__version__ = "0.1.0"

# version of the on-disk JSONL/alignment formats, bumped on breaking changes
FORMAT_VERSION = "1"

from .bleu import BleuConfig, Smoothing, ngram_counts, sentence_bleu
from .corpus import (
    BackendBundle,
    ParallelRecord,
    read_gold,
    read_parallel,
    read_projected,
    read_triples,
    write_projected,
)
from .errors import (
    CorpusError,
    EmptyField,
    EmptyInput,
    EmptyProjection,
    InvalidAnnotation,
    JoinFailure,
    LengthMismatch,
    LineCountMismatch,
    MalformedAlignment,
    MalformedRecord,
    OutOfRangeLink,
    RelProjError,
)
from .evaluation import AgreementReport, EvalReport, agreement, evaluate
from .model import (
    AlignmentSet,
    GoldAnnotation,
    PhrasePair,
    ProjectedPhrase,
    ProjectedRelation,
    ProjectionMethod,
    RelationTriple,
    Sentence,
    Span,
    make_alignment,
    validate_alignment,
)
from .phrases import ExtractConfig, is_consistent, phrase_extract
from .projection import (
    ProjectionConfig,
    locate_in_target,
    project_phrase,
    project_relation,
    word_alignment_projection,
)

__all__ = [
    "__version__",
    "FORMAT_VERSION",
    "AgreementReport",
    "AlignmentSet",
    "BackendBundle",
    "BleuConfig",
    "CorpusError",
    "EmptyField",
    "EmptyInput",
    "EmptyProjection",
    "EvalReport",
    "ExtractConfig",
    "GoldAnnotation",
    "InvalidAnnotation",
    "JoinFailure",
    "LengthMismatch",
    "LineCountMismatch",
    "MalformedAlignment",
    "MalformedRecord",
    "OutOfRangeLink",
    "ParallelRecord",
    "PhrasePair",
    "ProjectedPhrase",
    "ProjectedRelation",
    "ProjectionConfig",
    "ProjectionMethod",
    "RelProjError",
    "RelationTriple",
    "Sentence",
    "Smoothing",
    "Span",
    "agreement",
    "evaluate",
    "is_consistent",
    "locate_in_target",
    "make_alignment",
    "ngram_counts",
    "phrase_extract",
    "project_phrase",
    "project_relation",
    "read_gold",
    "read_parallel",
    "read_projected",
    "read_triples",
    "sentence_bleu",
    "validate_alignment",
    "word_alignment_projection",
    "write_projected",
]
