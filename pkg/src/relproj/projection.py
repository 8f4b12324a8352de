"""Projection of target-side phrases onto the source sentence.

Selection rule: among all consistent phrase pairs whose target side
shares at least one token type with the query phrase, take the target
phrase with the highest BLEU relative to the query (first wins on ties,
in extraction order); among the source phrases paired with that target
phrase, return the shortest (smallest start index on ties). When no
target phrase overlaps the query at all, fall back to naive word-level
alignment projection, which may be non-contiguous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .bleu import BleuConfig, ReferenceProfile, _fold
from .errors import EmptyInput, EmptyProjection
from .model import (
    AlignmentSet,
    ProjectedPhrase,
    ProjectedRelation,
    ProjectionMethod,
    RelationTriple,
    Sentence,
    Span,
    validate_alignment,
)
from .phrases import DEFAULT_EXTRACT, ExtractConfig, _extract_raw

DEFAULT_MAX_ORDER = 3


@dataclass(frozen=True, slots=True)
class ProjectionConfig:
    bleu: BleuConfig = BleuConfig(max_order=DEFAULT_MAX_ORDER)
    extract: ExtractConfig = DEFAULT_EXTRACT


DEFAULT_PROJECTION = ProjectionConfig()


def locate_in_target(t: Sentence, p_t: Sequence[str]) -> list[Span]:
    """Spans of t whose token sequence equals p_t exactly (may overlap)."""
    p = tuple(p_t)
    if not p or len(p) > len(t.tokens):
        return []
    toks = t.tokens
    width = len(p)
    return [
        Span(k, k + width - 1)
        for k in range(len(toks) - width + 1)
        if toks[k : k + width] == p
    ]


def word_alignment_projection(
    s: Sentence,
    t: Sentence,
    a: AlignmentSet,
    p_t: Sequence[str],
) -> ProjectedPhrase:
    """Map every query token to source tokens through the raw alignment.

    Query tokens are matched against target positions by surface form,
    leftmost unconsumed position first, so repeated tokens consume
    distinct positions. Raises EmptyProjection when nothing is aligned.
    """
    if not p_t:
        raise EmptyInput("phrase must be non-empty")
    t_toks = t.tokens
    consumed: set[int] = set()
    for tok in p_t:
        for j, tj in enumerate(t_toks):
            if tj == tok and j not in consumed:
                consumed.add(j)
                break
    hit = sorted({i for i, j in a.links if j in consumed})
    if not hit:
        raise EmptyProjection(tuple(p_t))
    contiguous = hit[-1] - hit[0] + 1 == len(hit)
    return ProjectedPhrase(
        tokens=tuple(s.tokens[i] for i in hit),
        source_span=Span(hit[0], hit[-1]) if contiguous else None,
        method=ProjectionMethod.WORD_ALIGN_FALLBACK,
        bleu_score=None,
    )


def _project_against_raw(
    s: Sentence,
    t: Sentence,
    a: AlignmentSet,
    p_t: Sequence[str],
    raw_pairs: list[tuple[int, int, int, int]],
    cfg: ProjectionConfig,
) -> ProjectedPhrase:
    """Run the selection rule against a precomputed pair list."""
    profile = ReferenceProfile(p_t, cfg.bleu)
    t_toks: Sequence[str] = _fold(t.tokens) if cfg.bleu.case_fold else t.tokens

    # O(1) overlap test per span: prefix counts of positions whose token
    # type occurs in the query
    types = profile.token_types
    pref = [0] * (len(t_toks) + 1)
    acc = 0
    for j, tok in enumerate(t_toks):
        if tok in types:
            acc += 1
        pref[j + 1] = acc

    max_order = cfg.bleu.max_order
    use_bp = cfg.bleu.brevity_penalty
    ref_len = profile.length

    best_score = -1.0
    best_srcs: list[tuple[int, int]] | None = None
    cur_tgt: tuple[int, int] | None = None
    cur_srcs: list[tuple[int, int]] = []

    def consider(tgt: tuple[int, int], srcs: list[tuple[int, int]]) -> None:
        nonlocal best_score, best_srcs
        j1, j2 = tgt
        matchable = pref[j2 + 1] - pref[j1]
        if matchable == 0:
            return  # overlap guard: smoothing must never rescue such pairs
        clen = j2 - j1 + 1
        if best_srcs is not None:
            # cheap upper bound on the achievable score; safe to skip when
            # it cannot strictly beat the incumbent (ties keep the first)
            m_ub = matchable if matchable < ref_len else ref_len
            k = clen if clen < max_order else max_order
            bound = (m_ub / clen) ** (1.0 / k)
            if use_bp and clen < ref_len:
                bound *= math.exp(1.0 - ref_len / clen)
            if bound * (1.0 + 1e-9) + 1e-12 <= best_score:
                return
        score = profile.score_folded(t_toks[j1 : j2 + 1])
        if score > best_score:
            best_score = score
            best_srcs = srcs

    for j1, j2, i1, i2 in raw_pairs:
        if cur_tgt == (j1, j2):
            cur_srcs.append((i1, i2))
            continue
        if cur_tgt is not None:
            consider(cur_tgt, cur_srcs)
        cur_tgt = (j1, j2)
        cur_srcs = [(i1, i2)]
    if cur_tgt is not None:
        consider(cur_tgt, cur_srcs)

    if best_srcs is None:
        return word_alignment_projection(s, t, a, p_t)

    i1, i2 = min(best_srcs, key=lambda span: (span[1] - span[0], span[0]))
    return ProjectedPhrase(
        tokens=tuple(s.tokens[i1 : i2 + 1]),
        source_span=Span(i1, i2),
        method=ProjectionMethod.PHRASE_MATCH,
        bleu_score=best_score,
    )


def _check_projectable(s: Sentence, t: Sentence, a: AlignmentSet) -> None:
    if not s.tokens or not t.tokens:
        raise EmptyInput("sentences entering projection must be non-empty")
    validate_alignment(a, s, t)


def project_phrase(
    s: Sentence,
    t: Sentence,
    a: AlignmentSet,
    p_t: Sequence[str],
    cfg: ProjectionConfig = DEFAULT_PROJECTION,
) -> ProjectedPhrase:
    """Project one target-side phrase onto the source sentence.

    Raises EmptyProjection when even the word-alignment fallback finds
    no aligned source token.
    """
    if not p_t:
        raise EmptyInput("phrase must be non-empty")
    _check_projectable(s, t, a)
    raw = _extract_raw(len(s.tokens), len(t.tokens), a.links, cfg.extract)
    return _project_against_raw(s, t, a, p_t, raw, cfg)


def project_relation(
    triple: RelationTriple,
    s: Sentence,
    t: Sentence,
    a: AlignmentSet,
    cfg: ProjectionConfig = DEFAULT_PROJECTION,
) -> ProjectedRelation:
    """Project all three slots of a triple; the pair list is computed once.

    A slot whose projection comes up empty is recorded as unprojected
    rather than aborting the sentence.
    """
    if triple.sentence_id != s.id:
        raise ValueError(
            f"triple belongs to sentence {triple.sentence_id!r}, got {s.id!r}"
        )
    _check_projectable(s, t, a)
    raw = _extract_raw(len(s.tokens), len(t.tokens), a.links, cfg.extract)
    slots = {}
    for name in ("arg1", "rel", "arg2"):
        try:
            slots[name] = _project_against_raw(s, t, a, getattr(triple, name), raw, cfg)
        except EmptyProjection:
            slots[name] = ProjectedPhrase.unprojected()
    return ProjectedRelation(sentence_id=s.id, **slots)
