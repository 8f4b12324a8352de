"""Extraction of all alignment-consistent phrase pairs from a sentence pair.

A pair of contiguous spans is consistent when no alignment link has
exactly one endpoint inside the pair and at least one link falls inside
both spans. Unaligned words adjacent to a consistent pair can always be
absorbed without breaking consistency, which is where the combinatorial
growth of the pair set comes from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import AlignmentSet, PhrasePair, Sentence, Span, validate_alignment


@dataclass(frozen=True, slots=True)
class ExtractConfig:
    """Limits for phrase-pair enumeration; None means unlimited.

    include_unaligned_extensions controls whether source spans may start
    or end on an unaligned token (absorbing adjacent unaligned source
    words); target-side looseness is governed by consistency alone.
    """

    max_src_len: int | None = None
    max_tgt_len: int | None = None
    include_unaligned_extensions: bool = True

    def __post_init__(self) -> None:
        for name in ("max_src_len", "max_tgt_len"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be >= 1 when finite, got {value}")


DEFAULT_EXTRACT = ExtractConfig()


def is_consistent(pair: PhrasePair, a: AlignmentSet) -> bool:
    """True iff no link crosses the pair's boundary and >= 1 link is inside."""
    i1, i2 = pair.src.start, pair.src.end
    j1, j2 = pair.tgt.start, pair.tgt.end
    inside = False
    for i, j in a.links:
        in_src = i1 <= i <= i2
        if in_src != (j1 <= j <= j2):
            return False
        if in_src:
            inside = True
    return inside


def _extract_raw(
    n: int,
    m: int,
    links: Iterable[tuple[int, int]],
    cfg: ExtractConfig = DEFAULT_EXTRACT,
) -> list[tuple[int, int, int, int]]:
    """Enumerate consistent pairs as (j1, j2, i1, i2) tuples, sorted.

    For each source span the links it covers pin down a minimal target
    block; the span pairs with that block and every widening of it
    across adjacent unaligned target words, provided no link enters the
    block from outside the source span. Runs in O(N*M + N^2 + output).
    """
    links = list(links)
    if not links or n == 0 or m == 0:
        return []

    jfirst = [m] * n
    jlast = [-1] * n
    ifirst = [n] * m
    ilast = [-1] * m
    for i, j in links:
        if j < jfirst[i]:
            jfirst[i] = j
        if j > jlast[i]:
            jlast[i] = j
        if i < ifirst[j]:
            ifirst[j] = i
        if i > ilast[j]:
            ilast[j] = i
    src_aligned = [jlast[i] >= 0 for i in range(n)]
    tgt_aligned = [ilast[j] >= 0 for j in range(m)]

    # lowest j1 reachable from j across unaligned words below, and the
    # highest reachable j2 above
    ext_lo = [0] * m
    run = 0
    for j in range(m):
        ext_lo[j] = j - run
        run = 0 if tgt_aligned[j] else run + 1
    ext_hi = [0] * m
    run = 0
    for j in range(m - 1, -1, -1):
        ext_hi[j] = j + run
        run = 0 if tgt_aligned[j] else run + 1

    # range-min of ifirst / range-max of ilast over [j1..j2], built lazily
    # per j1 actually queried (at most one row per distinct block start)
    min_rows: dict[int, list[int]] = {}
    max_rows: dict[int, list[int]] = {}

    def rows_for(j1: int) -> tuple[list[int], list[int]]:
        got = min_rows.get(j1)
        if got is not None:
            return got, max_rows[j1]
        lo_row = [n] * m
        hi_row = [-1] * m
        lo = n
        hi = -1
        for j2 in range(j1, m):
            if ifirst[j2] < lo:
                lo = ifirst[j2]
            if ilast[j2] > hi:
                hi = ilast[j2]
            lo_row[j2] = lo
            hi_row[j2] = hi
        min_rows[j1] = lo_row
        max_rows[j1] = hi_row
        return lo_row, hi_row

    cap_s = cfg.max_src_len if cfg.max_src_len is not None else n
    cap_t = cfg.max_tgt_len if cfg.max_tgt_len is not None else m
    loose_src = cfg.include_unaligned_extensions

    out: list[tuple[int, int, int, int]] = []
    for i1 in range(n):
        if not loose_src and not src_aligned[i1]:
            continue
        jmin = m
        jmax = -1
        for i2 in range(i1, min(n, i1 + cap_s)):
            if src_aligned[i2]:
                if jfirst[i2] < jmin:
                    jmin = jfirst[i2]
                if jlast[i2] > jmax:
                    jmax = jlast[i2]
            elif not loose_src:
                continue
            if jmax < 0:
                continue  # span covers no links yet
            lo_row, hi_row = rows_for(jmin)
            if lo_row[jmax] < i1 or hi_row[jmax] > i2:
                continue  # a link enters the target block from outside
            if jmax - jmin + 1 > cap_t:
                continue
            for j1 in range(ext_lo[jmin], jmin + 1):
                for j2 in range(jmax, min(ext_hi[jmax], j1 + cap_t - 1) + 1):
                    out.append((j1, j2, i1, i2))
    out.sort()
    return out


def phrase_extract(
    s: Sentence,
    t: Sentence,
    a: AlignmentSet,
    cfg: ExtractConfig = DEFAULT_EXTRACT,
) -> list[PhrasePair]:
    """All consistent phrase pairs of (s, t, a), deterministically ordered
    by (tgt.start, tgt.end, src.start, src.end).

    An empty alignment yields an empty list; that is legal input and the
    caller falls back to word-level projection downstream.
    """
    validate_alignment(a, s, t)
    raw = _extract_raw(len(s.tokens), len(t.tokens), a.links, cfg)
    return [PhrasePair(src=Span(i1, i2), tgt=Span(j1, j2)) for j1, j2, i1, i2 in raw]
