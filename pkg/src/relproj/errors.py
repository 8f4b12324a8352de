"""Exception hierarchy shared by all relproj modules."""

from __future__ import annotations


class RelProjError(Exception):
    """Base class for all toolkit errors."""


class LengthMismatch(RelProjError):
    """Alignment declares lengths that disagree with the sentences."""

    def __init__(self, what: str, expected: int, got: int):
        self.what = what
        self.expected = expected
        self.got = got
        super().__init__(f"{what}: alignment declares {got}, sentence has {expected}")


class OutOfRangeLink(RelProjError):
    """An alignment link points outside the sentence pair."""

    def __init__(self, i: int, j: int, src_len: int, tgt_len: int):
        self.i = i
        self.j = j
        super().__init__(
            f"link ({i},{j}) out of range for lengths ({src_len},{tgt_len})"
        )


class EmptyInput(RelProjError):
    """A non-empty token sequence was required."""


class EmptyProjection(RelProjError):
    """Word-alignment fallback found no aligned source token for the phrase."""

    def __init__(self, phrase: tuple[str, ...]):
        self.phrase = phrase
        super().__init__(f"no source token aligned to any token of {' '.join(phrase)!r}")


class CorpusError(RelProjError):
    """Base for file-format errors; carries a 1-based line number when known."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


class LineCountMismatch(CorpusError):
    def __init__(self, message: str):
        super().__init__(message)


class MalformedAlignment(CorpusError):
    def __init__(self, line_no: int, token: str):
        self.token = token
        super().__init__(f"malformed alignment token {token!r} (expected 'i-j')", line_no)


class MalformedRecord(CorpusError):
    def __init__(self, line_no: int, reason: str):
        self.reason = reason
        super().__init__(f"malformed record: {reason}", line_no)


class EmptyField(CorpusError):
    def __init__(self, line_no: int, field: str):
        self.field = field
        super().__init__(f"field {field!r} is empty", line_no)


class InvalidAnnotation(CorpusError):
    def __init__(self, line_no: int, reason: str):
        self.reason = reason
        super().__init__(f"invalid annotation: {reason}", line_no)


class JoinFailure(RelProjError):
    """A sentence_id could not be matched 1-1 across the joined streams."""

    def __init__(self, sentence_id: str, reason: str, line_no: int | None = None):
        self.sentence_id = sentence_id
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{prefix}sentence_id {sentence_id!r}: {reason}")
