"""Corpus-level measurement of projected relations against human judgements.

The evaluator reports the share of valid argument pairs, the BLEU of
each automatically projected relation phrase against the annotated one
(candidate = auto, reference = gold), a 10-bin score histogram with 1.0
merged into the top bin, and average phrase lengths in words. A second
entry point measures agreement between two annotation passes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Iterable

from .bleu import BleuConfig, sentence_bleu
from .errors import JoinFailure
from .model import GoldAnnotation, ProjectedRelation, ProjectionMethod

N_BINS = 10

_BIN_LABELS = [f"[{k / 10:.1f},{(k + 1) / 10:.1f})" for k in range(N_BINS - 1)] + ["[0.9,1.0]"]


def bin_index(score: float) -> int:
    """10 equal-width bins over [0,1]; a perfect 1.0 lands in the top bin."""
    return min(int(math.floor(score * N_BINS)), N_BINS - 1)


def _fmt(value: float | None, spec: str, suffix: str = "") -> str:
    return "n/a" if value is None else format(value, spec) + suffix


@dataclass(frozen=True, slots=True)
class EvalReport:
    n_total: int
    n_valid: int
    pct_valid: float | None
    mean_bleu: float | None
    bins: tuple[int, ...]
    avg_len_gold: float | None
    avg_len_auto: float | None
    n_empty_auto: int

    def __post_init__(self) -> None:
        if len(self.bins) != N_BINS:
            raise ValueError(f"expected {N_BINS} bins, got {len(self.bins)}")
        if sum(self.bins) != self.n_valid:
            raise ValueError("bin counts must sum to the number of valid items")

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_total": self.n_total,
            "n_valid": self.n_valid,
            "pct_valid": self.pct_valid,
            "mean_bleu": self.mean_bleu,
            "bins": list(self.bins),
            "avg_len_gold": self.avg_len_gold,
            "avg_len_auto": self.avg_len_auto,
            "n_empty_auto": self.n_empty_auto,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    def to_table(self, show_bins: bool = False) -> str:
        header = f"{'relations':>10}  {'% valid':>8}  {'BLEU':>6}  {'len(gold)':>9}  {'len(auto)':>9}"
        row = "  ".join(
            [
                f"{self.n_total:>10}",
                f"{_fmt(self.pct_valid, '.1f', '%'):>8}",
                f"{_fmt(self.mean_bleu, '.2f'):>6}",
                f"{_fmt(self.avg_len_gold, '.1f'):>9}",
                f"{_fmt(self.avg_len_auto, '.1f'):>9}",
            ]
        )
        lines = [header, row]
        if self.n_empty_auto:
            lines.append(f"(empty auto phrases scored 0: {self.n_empty_auto})")
        if show_bins:
            lines.append("")
            lines.append(f"{'bin':>3}  {'BLEU range':>10}  {'relations':>9}")
            for k, count in enumerate(self.bins):
                lines.append(f"{k:>3}  {_BIN_LABELS[k]:>10}  {count:>9}")
        return "\n".join(lines)


@dataclass(frozen=True, slots=True)
class AgreementReport:
    n_pairs: int
    n_both_valid: int
    perfect_rate: float | None
    mean_pairwise_bleu: float | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_pairs": self.n_pairs,
            "n_both_valid": self.n_both_valid,
            "perfect_rate": self.perfect_rate,
            "mean_pairwise_bleu": self.mean_pairwise_bleu,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    def to_table(self) -> str:
        header = f"{'pairs':>6}  {'both valid':>10}  {'perfect agreement':>17}  {'mean BLEU':>9}"
        row = "  ".join(
            [
                f"{self.n_pairs:>6}",
                f"{self.n_both_valid:>10}",
                f"{_fmt(self.perfect_rate, '.1f', '%'):>17}",
                f"{_fmt(self.mean_pairwise_bleu, '.2f'):>9}",
            ]
        )
        return "\n".join([header, row])


def _index_by_id(annotations: Iterable[GoldAnnotation], side: str) -> dict[str, GoldAnnotation]:
    by_id: dict[str, GoldAnnotation] = {}
    for ann in annotations:
        if ann.sentence_id in by_id:
            raise JoinFailure(ann.sentence_id, f"duplicate {side} annotation")
        by_id[ann.sentence_id] = ann
    return by_id


def evaluate(
    projected: Iterable[ProjectedRelation],
    gold: Iterable[GoldAnnotation],
    cfg: BleuConfig = BleuConfig(),
) -> EvalReport:
    """Join projections with gold annotations 1-1 on sentence_id and score.

    Invalid-argument items count toward the total only. An item the
    projector left unprojected scores 0 when gold says valid, and is
    flagged in the report. The report is independent of input order.
    """
    gold_by_id = _index_by_id(gold, "gold")
    n_total = 0
    scores: list[float] = []
    gold_lens: list[int] = []
    auto_lens: list[int] = []
    bins = [0] * N_BINS
    n_empty = 0
    for rec in projected:
        ann = gold_by_id.pop(rec.sentence_id, None)
        if ann is None:
            raise JoinFailure(rec.sentence_id, "no gold annotation for projected relation")
        n_total += 1
        if not ann.valid:
            continue
        auto = rec.rel.tokens
        if rec.rel.method is ProjectionMethod.UNPROJECTED or not auto:
            score = 0.0
            n_empty += 1
        else:
            score = sentence_bleu(auto, ann.gold_rel, cfg)
        bins[bin_index(score)] += 1
        scores.append(score)
        gold_lens.append(len(ann.gold_rel))
        auto_lens.append(len(auto))
    if gold_by_id:
        leftover = min(gold_by_id)
        raise JoinFailure(leftover, "gold annotation has no projected relation")
    n_valid = len(scores)
    return EvalReport(
        n_total=n_total,
        n_valid=n_valid,
        pct_valid=100.0 * n_valid / n_total if n_total else None,
        mean_bleu=math.fsum(scores) / n_valid if n_valid else None,
        bins=tuple(bins),
        avg_len_gold=math.fsum(gold_lens) / n_valid if n_valid else None,
        avg_len_auto=math.fsum(auto_lens) / n_valid if n_valid else None,
        n_empty_auto=n_empty,
    )


def agreement(
    annotations_a: Iterable[GoldAnnotation],
    annotations_b: Iterable[GoldAnnotation],
    cfg: BleuConfig = BleuConfig(),
) -> AgreementReport:
    """Compare two annotation passes over the same sentences.

    A pair agrees perfectly when both sides give the same validity and,
    if valid, the same token sequence. BLEU is averaged over pairs valid
    on both sides, scoring pass A against pass B as reference.
    """
    a_by_id = _index_by_id(annotations_a, "first-pass")
    n_pairs = 0
    n_perfect = 0
    pair_scores: list[float] = []
    for ann_b in annotations_b:
        ann_a = a_by_id.pop(ann_b.sentence_id, None)
        if ann_a is None:
            raise JoinFailure(ann_b.sentence_id, "no first-pass annotation")
        n_pairs += 1
        if ann_a.valid == ann_b.valid and (not ann_a.valid or ann_a.gold_rel == ann_b.gold_rel):
            n_perfect += 1
        if ann_a.valid and ann_b.valid:
            pair_scores.append(sentence_bleu(ann_a.gold_rel, ann_b.gold_rel, cfg))
    if a_by_id:
        raise JoinFailure(min(a_by_id), "first-pass annotation has no second-pass match")
    return AgreementReport(
        n_pairs=n_pairs,
        n_both_valid=len(pair_scores),
        perfect_rate=100.0 * n_perfect / n_pairs if n_pairs else None,
        mean_pairwise_bleu=math.fsum(pair_scores) / len(pair_scores) if pair_scores else None,
    )
