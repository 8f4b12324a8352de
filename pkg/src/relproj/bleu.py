"""Smoothed sentence-level BLEU between two token lists.

The score is the geometric mean of modified n-gram precisions up to
max_order (default 3), optionally scaled by a brevity penalty. With
add-one smoothing the unigram precision stays unsmoothed, so candidates
sharing no unigram with the reference always score exactly 0.0, and any
candidate sharing at least one unigram scores strictly above it. Orders
the candidate is too short for are skipped from the geometric mean.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyInput


class Smoothing(enum.Enum):
    ADD_ONE = "add_one"


@dataclass(frozen=True, slots=True)
class BleuConfig:
    max_order: int = 3
    smoothing: Smoothing = Smoothing.ADD_ONE
    brevity_penalty: bool = True
    case_fold: bool = False

    def __post_init__(self) -> None:
        if self.max_order < 1:
            raise ValueError(f"max_order must be >= 1, got {self.max_order}")


DEFAULT_BLEU = BleuConfig()


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    """All contiguous n-grams of a token list, with multiplicity."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return Counter(tuple(tokens[k : k + n]) for k in range(len(tokens) - n + 1))


def _fold(tokens: Sequence[str]) -> list[str]:
    return [tok.casefold() for tok in tokens]


class ReferenceProfile:
    """Reference-side n-gram counts precomputed once and scored against
    many candidates; the hot path of phrase selection.

    Unigram counts are keyed by plain token, higher orders by tuple.
    """

    __slots__ = ("cfg", "length", "unigrams", "higher", "token_types")

    def __init__(self, reference: Sequence[str], cfg: BleuConfig = DEFAULT_BLEU):
        if not reference:
            raise EmptyInput("reference must be non-empty")
        ref = _fold(reference) if cfg.case_fold else list(reference)
        self.cfg = cfg
        self.length = len(ref)
        self.unigrams = Counter(ref)
        self.higher = [
            Counter(tuple(ref[k : k + n]) for k in range(len(ref) - n + 1))
            for n in range(2, cfg.max_order + 1)
        ]
        self.token_types = frozenset(ref)

    def score(self, candidate: Sequence[str]) -> float:
        """Score a raw candidate (folds it if the config says so)."""
        if not candidate:
            raise EmptyInput("candidate must be non-empty")
        return self.score_folded(_fold(candidate) if self.cfg.case_fold else candidate)

    def score_folded(self, candidate: Sequence[str]) -> float:
        """Score a candidate already in comparison form.

        Exact same arithmetic regardless of entry point, so results are
        bit-identical between one-shot and precomputed scoring.
        """
        clen = len(candidate)
        if clen == 0:
            raise EmptyInput("candidate must be non-empty")
        log_sum = 0.0
        orders = 0
        for n in range(1, self.cfg.max_order + 1):
            possible = clen - n + 1
            if possible <= 0:
                break  # this and all higher orders have no candidate n-grams
            matches = 0
            if n == 1:
                ref_counts = self.unigrams
                for gram, c in Counter(candidate).items():
                    r = ref_counts.get(gram, 0)
                    matches += c if c <= r else r
                if matches == 0:
                    return 0.0
                p = matches / possible
            else:
                ref_counts = self.higher[n - 2]
                cand = Counter(tuple(candidate[k : k + n]) for k in range(possible))
                for gram, c in cand.items():
                    r = ref_counts.get(gram, 0)
                    matches += c if c <= r else r
                p = (matches + 1) / (possible + 1)
            log_sum += math.log(p)
            orders += 1
        score = math.exp(log_sum / orders)
        if self.cfg.brevity_penalty:
            score *= math.exp(min(0.0, 1.0 - self.length / clen))
        if score < 0.0:
            return 0.0
        if score > 1.0:
            return 1.0
        return score


def sentence_bleu(
    candidate: Sequence[str],
    reference: Sequence[str],
    cfg: BleuConfig = DEFAULT_BLEU,
) -> float:
    """Smoothed sentence-level BLEU of candidate against one reference.

    Raises EmptyInput when either side is empty. Deterministic: the same
    inputs and config give a bit-identical float.
    """
    return ReferenceProfile(reference, cfg).score(candidate)
