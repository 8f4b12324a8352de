"""Readers and writers for all corpus artifacts.

Formats (all UTF-8, no unicode normalization applied):

- parallel corpus: three line-aligned text files (source, target,
  alignment), one sentence per line, whitespace tokenized; alignment
  lines hold space-separated 0-based "i-j" links (Pharaoh convention),
  an empty line meaning no links;
- relation triples: JSONL with string fields sentence_id, arg1, rel,
  arg2 (each a space-joined token string);
- projected relations: JSONL, one object per triple with per-slot
  text / span / method / bleu fields, byte-identical across runs;
- gold annotations: JSONL with sentence_id, valid, gold_rel.

Readers are lazy generators: memory stays O(1) in corpus length and a
bad line only raises once reached.
"""

from __future__ import annotations

import json
from contextlib import ExitStack
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator, Union

from .errors import (
    CorpusError,
    EmptyField,
    InvalidAnnotation,
    JoinFailure,
    LineCountMismatch,
    MalformedAlignment,
    MalformedRecord,
    RelProjError,
)
from .model import (
    AlignmentSet,
    GoldAnnotation,
    ProjectedRelation,
    RelationTriple,
    Sentence,
    validate_alignment,
)

FileArg = Union[str, Path, IO[str]]

_MISSING = object()


def _entered(stack: ExitStack, f: FileArg) -> IO[str]:
    if isinstance(f, (str, Path)):
        return stack.enter_context(open(f, "r", encoding="utf-8", newline=None))
    return f


def parse_alignment_line(line: str, src_len: int, tgt_len: int, line_no: int) -> AlignmentSet:
    """Parse one Pharaoh alignment line against known sentence lengths."""
    links = set()
    for token in line.split():
        left, sep, right = token.partition("-")
        if not sep or not left.isdigit() or not right.isdigit():
            raise MalformedAlignment(line_no, token)
        links.add((int(left), int(right)))
    return AlignmentSet(links=frozenset(links), src_len=src_len, tgt_len=tgt_len)


@dataclass(frozen=True, slots=True)
class ParallelRecord:
    """One sentence pair with its alignment, already validated."""

    sentence_id: str
    source: Sentence
    target: Sentence
    alignment: AlignmentSet

    def __post_init__(self) -> None:
        validate_alignment(self.alignment, self.source, self.target)


def read_parallel(
    source_file: FileArg,
    target_file: FileArg,
    alignment_file: FileArg,
    ids_file: FileArg | None = None,
    min_len: int | None = None,
    max_len: int | None = None,
) -> Iterator[ParallelRecord]:
    """Stream line-aligned (source, target, alignment) files as records.

    sentence_id is the 0-based line number unless an ids file supplies
    one id per line. min_len/max_len filter on source token count;
    filtered lines still advance the line numbering.
    """
    with ExitStack() as stack:
        src = _entered(stack, source_file)
        tgt = _entered(stack, target_file)
        aln = _entered(stack, alignment_file)
        ids = _entered(stack, ids_file) if ids_file is not None else None
        k = 0
        while True:
            s_line = next(src, _MISSING)
            t_line = next(tgt, _MISSING)
            a_line = next(aln, _MISSING)
            id_line = next(ids, _MISSING) if ids is not None else None
            got = [x is not _MISSING for x in (s_line, t_line, a_line)]
            if ids is not None:
                got.append(id_line is not _MISSING)
            if not any(got):
                return
            if not all(got):
                raise LineCountMismatch(
                    f"input files end at different lengths (first short file at line {k + 1})"
                )
            line_no = k + 1
            sentence_id = id_line.strip() if ids is not None else str(k)
            if ids is not None and not sentence_id:
                raise MalformedRecord(line_no, "empty sentence id")
            k += 1
            s_tokens = tuple(s_line.split())
            if min_len is not None and len(s_tokens) < min_len:
                continue
            if max_len is not None and len(s_tokens) > max_len:
                continue
            source = Sentence(id=sentence_id, tokens=s_tokens)
            target = Sentence(id=sentence_id, tokens=tuple(t_line.split()))
            alignment = parse_alignment_line(
                a_line, len(source.tokens), len(target.tokens), line_no
            )
            try:
                yield ParallelRecord(sentence_id, source, target, alignment)
            except RelProjError as exc:
                raise CorpusError(str(exc), line_no) from exc


def _json_object(line: str, line_no: int) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(line_no, f"invalid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise MalformedRecord(line_no, "expected a JSON object")
    return obj


def _string_field(obj: dict, field: str, line_no: int) -> str:
    if field not in obj:
        raise MalformedRecord(line_no, f"missing field {field!r}")
    value = obj[field]
    if not isinstance(value, str):
        raise MalformedRecord(line_no, f"field {field!r} must be a string")
    return value


def _split_tokens(text: str, field: str, line_no: int) -> tuple[str, ...]:
    tokens = tuple(text.split(" "))
    if any(tok == "" for tok in tokens):
        raise MalformedRecord(line_no, f"field {field!r} has an empty token")
    return tokens


def read_triples(file: FileArg) -> Iterator[RelationTriple]:
    """Stream relation triples from JSONL; blank lines are skipped."""
    with ExitStack() as stack:
        f = _entered(stack, file)
        for line_no, line in enumerate(f, 1):
            if not line.strip():
                continue
            obj = _json_object(line, line_no)
            sentence_id = _string_field(obj, "sentence_id", line_no)
            fields = {}
            for name in ("arg1", "rel", "arg2"):
                text = _string_field(obj, name, line_no)
                if not text:
                    raise EmptyField(line_no, name)
                fields[name] = _split_tokens(text, name, line_no)
            if not sentence_id:
                raise EmptyField(line_no, "sentence_id")
            try:
                yield RelationTriple(sentence_id=sentence_id, **fields)
            except ValueError as exc:
                raise MalformedRecord(line_no, str(exc)) from exc


def encode_projected(rec: ProjectedRelation) -> str:
    """One byte-stable JSONL line for a projected relation (no newline)."""
    return json.dumps(rec.to_dict(), ensure_ascii=False, separators=(",", ":"))


def write_projected(records: Iterable[ProjectedRelation], out: FileArg) -> None:
    """Write projected relations as newline-terminated JSONL."""
    with ExitStack() as stack:
        f = out
        if isinstance(out, (str, Path)):
            f = stack.enter_context(open(out, "w", encoding="utf-8", newline="\n"))
        for rec in records:
            f.write(encode_projected(rec))
            f.write("\n")


def read_projected(file: FileArg) -> Iterator[ProjectedRelation]:
    """Stream projected relations back; inverse of write_projected."""
    with ExitStack() as stack:
        f = _entered(stack, file)
        for line_no, line in enumerate(f, 1):
            if not line.strip():
                continue
            obj = _json_object(line, line_no)
            try:
                yield ProjectedRelation.from_dict(obj)
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedRecord(line_no, str(exc)) from exc


def read_gold(file: FileArg) -> Iterator[GoldAnnotation]:
    """Stream gold annotations from JSONL, enforcing their invariants."""
    with ExitStack() as stack:
        f = _entered(stack, file)
        for line_no, line in enumerate(f, 1):
            if not line.strip():
                continue
            obj = _json_object(line, line_no)
            sentence_id = _string_field(obj, "sentence_id", line_no)
            if "valid" not in obj or not isinstance(obj["valid"], bool):
                raise MalformedRecord(line_no, "field 'valid' must be a boolean")
            text = _string_field(obj, "gold_rel", line_no)
            tokens = _split_tokens(text, "gold_rel", line_no) if text else ()
            try:
                yield GoldAnnotation(
                    sentence_id=sentence_id, valid=obj["valid"], gold_rel=tokens
                )
            except ValueError as exc:
                raise InvalidAnnotation(line_no, str(exc)) from exc


@dataclass(slots=True)
class BackendBundle:
    """File-backed stand-in for the translation and extraction services:
    a stream of aligned sentence pairs plus the triples extracted over
    their target sides, keyed by sentence_id."""

    parallel: Iterator[ParallelRecord]
    triples: Iterator[RelationTriple]

    def joined(self) -> Iterator[tuple[ParallelRecord, list[RelationTriple]]]:
        """Merge-join triples onto parallel records, in stream order.

        Triples must arrive grouped by sentence, following corpus order;
        sentences without triples are passed over silently. O(1) memory.
        """
        rec: ParallelRecord | None = None
        group: list[RelationTriple] = []
        for line_no, triple in enumerate(self.triples, 1):
            if rec is not None and triple.sentence_id == rec.sentence_id:
                group.append(triple)
                continue
            if rec is not None and group:
                yield rec, group
            rec = None
            for candidate in self.parallel:
                if candidate.sentence_id == triple.sentence_id:
                    rec = candidate
                    break
            if rec is None:
                raise JoinFailure(
                    triple.sentence_id,
                    "no matching parallel record (triples must be grouped in corpus order)",
                    line_no,
                )
            group = [triple]
        if rec is not None and group:
            yield rec, group
