"""Domain types shared by all modules.

All types are immutable value objects; token sequences are stored as tuples
so instances are hashable and safe to share across threads or processes.
Token indices are 0-based everywhere, spans are inclusive on both ends.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import LengthMismatch, OutOfRangeLink


def _check_tokens(tokens: Sequence[str], what: str) -> tuple[str, ...]:
    out = tuple(tokens)
    for tok in out:
        if not isinstance(tok, str) or not tok:
            raise ValueError(f"{what}: tokens must be non-empty strings, got {tok!r}")
        if any(ch.isspace() for ch in tok):
            raise ValueError(f"{what}: token {tok!r} contains whitespace")
    return out


@dataclass(frozen=True, slots=True)
class Sentence:
    """A pre-tokenized sentence; may be empty until it enters projection."""

    id: str
    tokens: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", _check_tokens(self.tokens, "Sentence"))

    def __len__(self) -> int:
        return len(self.tokens)

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "tokens": list(self.tokens)}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Sentence":
        return cls(id=d["id"], tokens=tuple(d["tokens"]))


@dataclass(frozen=True, slots=True)
class Span:
    """Contiguous token range, inclusive on both ends."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not (0 <= self.start <= self.end):
            raise ValueError(f"invalid span [{self.start},{self.end}]")

    @property
    def stop(self) -> int:
        """Exclusive end, for slicing."""
        return self.end + 1

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def to_list(self) -> list[int]:
        return [self.start, self.end]

    @classmethod
    def from_list(cls, pair: Sequence[int]) -> "Span":
        return cls(int(pair[0]), int(pair[1]))


@dataclass(frozen=True, slots=True)
class AlignmentSet:
    """Word alignment as a set of (source index, target index) links.

    Construction only checks that links are non-negative integer pairs;
    range checks against actual sentences happen in validate_alignment,
    so malformed corpora can be surfaced with precise errors.
    """

    links: frozenset[tuple[int, int]]
    src_len: int
    tgt_len: int

    def __post_init__(self) -> None:
        links = frozenset((int(i), int(j)) for i, j in self.links)
        for i, j in links:
            if i < 0 or j < 0:
                raise ValueError(f"negative alignment link ({i},{j})")
        object.__setattr__(self, "links", links)
        if self.src_len < 0 or self.tgt_len < 0:
            raise ValueError("alignment lengths must be non-negative")

    def sorted_links(self) -> list[tuple[int, int]]:
        return sorted(self.links)

    def to_dict(self) -> dict[str, Any]:
        return {
            "links": [[i, j] for i, j in self.sorted_links()],
            "src_len": self.src_len,
            "tgt_len": self.tgt_len,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "AlignmentSet":
        return cls(
            links=frozenset((int(i), int(j)) for i, j in d["links"]),
            src_len=int(d["src_len"]),
            tgt_len=int(d["tgt_len"]),
        )


@dataclass(frozen=True, slots=True)
class PhrasePair:
    """A contiguous source span paired with a contiguous target span."""

    src: Span
    tgt: Span

    def to_dict(self) -> dict[str, Any]:
        return {"src": self.src.to_list(), "tgt": self.tgt.to_list()}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "PhrasePair":
        return cls(src=Span.from_list(d["src"]), tgt=Span.from_list(d["tgt"]))


@dataclass(frozen=True, slots=True)
class RelationTriple:
    """(arg1; rel; arg2) phrases over the target-language side.

    Phrase fields are token lists, not spans: extractors may normalize
    them (e.g. "is president of" -> "be president of"), so they are not
    guaranteed to occur verbatim in the sentence.
    """

    sentence_id: str
    arg1: tuple[str, ...]
    rel: tuple[str, ...]
    arg2: tuple[str, ...]

    def __post_init__(self) -> None:
        for name in ("arg1", "rel", "arg2"):
            toks = _check_tokens(getattr(self, name), f"RelationTriple.{name}")
            if not toks:
                raise ValueError(f"RelationTriple.{name} must be non-empty")
            object.__setattr__(self, name, toks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "sentence_id": self.sentence_id,
            "arg1": " ".join(self.arg1),
            "rel": " ".join(self.rel),
            "arg2": " ".join(self.arg2),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RelationTriple":
        return cls(
            sentence_id=d["sentence_id"],
            arg1=tuple(d["arg1"].split(" ")),
            rel=tuple(d["rel"].split(" ")),
            arg2=tuple(d["arg2"].split(" ")),
        )


class ProjectionMethod(enum.Enum):
    """How a phrase was carried over to the source side."""

    PHRASE_MATCH = "phrase"
    WORD_ALIGN_FALLBACK = "fallback"
    UNPROJECTED = "none"


@dataclass(frozen=True, slots=True)
class ProjectedPhrase:
    """A phrase mapped onto the source sentence.

    source_span is present iff the projected tokens form one contiguous
    run; the word-alignment fallback can produce non-contiguous output.
    bleu_score is defined only for phrase-pair matches.
    """

    tokens: tuple[str, ...]
    source_span: Span | None
    method: ProjectionMethod
    bleu_score: float | None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", _check_tokens(self.tokens, "ProjectedPhrase"))
        if self.method is ProjectionMethod.PHRASE_MATCH:
            if self.source_span is None or self.bleu_score is None or not self.tokens:
                raise ValueError("phrase match requires span, score and tokens")
        elif self.method is ProjectionMethod.WORD_ALIGN_FALLBACK:
            if self.bleu_score is not None:
                raise ValueError("fallback projection carries no BLEU score")
            if not self.tokens:
                raise ValueError("fallback projection requires tokens")
        else:
            if self.tokens or self.source_span is not None or self.bleu_score is not None:
                raise ValueError("unprojected slot must be empty")

    def to_dict(self) -> dict[str, Any]:
        return {
            "text": " ".join(self.tokens),
            "span": self.source_span.to_list() if self.source_span else None,
            "method": self.method.value,
            "bleu": self.bleu_score,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ProjectedPhrase":
        text = d["text"]
        return cls(
            tokens=tuple(text.split(" ")) if text else (),
            source_span=Span.from_list(d["span"]) if d["span"] is not None else None,
            method=ProjectionMethod(d["method"]),
            bleu_score=d["bleu"],
        )

    @classmethod
    def unprojected(cls) -> "ProjectedPhrase":
        return cls(tokens=(), source_span=None, method=ProjectionMethod.UNPROJECTED, bleu_score=None)


@dataclass(frozen=True, slots=True)
class ProjectedRelation:
    """A triple mapped to source-side phrases; no slot is ever dropped."""

    sentence_id: str
    arg1: ProjectedPhrase
    rel: ProjectedPhrase
    arg2: ProjectedPhrase

    def to_dict(self) -> dict[str, Any]:
        return {
            "sentence_id": self.sentence_id,
            "arg1": self.arg1.to_dict(),
            "rel": self.rel.to_dict(),
            "arg2": self.arg2.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ProjectedRelation":
        return cls(
            sentence_id=d["sentence_id"],
            arg1=ProjectedPhrase.from_dict(d["arg1"]),
            rel=ProjectedPhrase.from_dict(d["rel"]),
            arg2=ProjectedPhrase.from_dict(d["arg2"]),
        )


@dataclass(frozen=True, slots=True)
class GoldAnnotation:
    """Human judgement: either the most relevant contiguous relation
    phrase for the argument pair, or a verdict that none exists."""

    sentence_id: str
    valid: bool
    gold_rel: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "gold_rel", _check_tokens(self.gold_rel, "GoldAnnotation"))
        if self.valid and not self.gold_rel:
            raise ValueError("valid annotation requires a non-empty gold_rel")
        if not self.valid and self.gold_rel:
            raise ValueError("invalid annotation must have an empty gold_rel")

    def to_dict(self) -> dict[str, Any]:
        return {
            "sentence_id": self.sentence_id,
            "valid": self.valid,
            "gold_rel": " ".join(self.gold_rel),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "GoldAnnotation":
        gold = d["gold_rel"]
        return cls(
            sentence_id=d["sentence_id"],
            valid=bool(d["valid"]),
            gold_rel=tuple(gold.split(" ")) if gold else (),
        )


def validate_alignment(a: AlignmentSet, s: Sentence, t: Sentence) -> None:
    """Check an alignment against its sentence pair; raise on violation."""
    if a.src_len != len(s.tokens):
        raise LengthMismatch("source length", len(s.tokens), a.src_len)
    if a.tgt_len != len(t.tokens):
        raise LengthMismatch("target length", len(t.tokens), a.tgt_len)
    for i, j in a.sorted_links():
        if i >= a.src_len or j >= a.tgt_len:
            raise OutOfRangeLink(i, j, a.src_len, a.tgt_len)


def make_alignment(links: Iterable[tuple[int, int]], src_len: int, tgt_len: int) -> AlignmentSet:
    """Convenience constructor from any iterable of (i, j) pairs."""
    return AlignmentSet(links=frozenset(links), src_len=src_len, tgt_len=tgt_len)
