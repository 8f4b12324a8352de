"""Pydantic request/response models for the HTTP service.

Token sequences travel as JSON arrays of strings; alignments as arrays
of [source_index, target_index] pairs, 0-based. Responses mirror the
JSONL file formats where one exists.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class BleuOptions(BaseModel):
    max_order: int = 3
    brevity_penalty: bool = True
    case_fold: bool = False


class ExtractOptions(BaseModel):
    max_src_len: Optional[int] = None
    max_tgt_len: Optional[int] = None
    include_unaligned_extensions: bool = True


class SentencePair(BaseModel):
    source_tokens: list[str]
    target_tokens: list[str]
    alignment: list[tuple[int, int]] = Field(default_factory=list)


class BleuRequest(BaseModel):
    candidate: list[str]
    reference: list[str]
    options: BleuOptions = BleuOptions()


class BleuResponse(BaseModel):
    score: float


class PhrasePairModel(BaseModel):
    src_start: int
    src_end: int
    tgt_start: int
    tgt_end: int
    src_text: str
    tgt_text: str


class ExtractRequest(SentencePair):
    options: ExtractOptions = ExtractOptions()


class ExtractResponse(BaseModel):
    pairs: list[PhrasePairModel]


class ProjectedPhraseModel(BaseModel):
    text: str
    span: Optional[tuple[int, int]]
    method: Literal["phrase", "fallback", "none"]
    bleu: Optional[float]


class ProjectPhraseRequest(SentencePair):
    phrase: list[str]
    bleu: BleuOptions = BleuOptions()
    extract: ExtractOptions = ExtractOptions()


class TripleModel(BaseModel):
    arg1: list[str]
    rel: list[str]
    arg2: list[str]


class ProjectRelationRequest(SentencePair):
    sentence_id: str = "0"
    triple: TripleModel
    bleu: BleuOptions = BleuOptions()
    extract: ExtractOptions = ExtractOptions()


class ProjectedRelationModel(BaseModel):
    sentence_id: str
    arg1: ProjectedPhraseModel
    rel: ProjectedPhraseModel
    arg2: ProjectedPhraseModel


class GoldAnnotationModel(BaseModel):
    sentence_id: str
    valid: bool
    gold_rel: list[str] = Field(default_factory=list)


class EvaluateRequest(BaseModel):
    projected: list[ProjectedRelationModel]
    gold: list[GoldAnnotationModel]
    options: BleuOptions = BleuOptions()


class EvalReportModel(BaseModel):
    n_total: int
    n_valid: int
    pct_valid: Optional[float]
    mean_bleu: Optional[float]
    bins: list[int]
    avg_len_gold: Optional[float]
    avg_len_auto: Optional[float]
    n_empty_auto: int


class AgreementRequest(BaseModel):
    annotations_a: list[GoldAnnotationModel]
    annotations_b: list[GoldAnnotationModel]
    options: BleuOptions = BleuOptions()


class AgreementReportModel(BaseModel):
    n_pairs: int
    n_both_valid: int
    perfect_rate: Optional[float]
    mean_pairwise_bleu: Optional[float]


class HealthResponse(BaseModel):
    status: str


class VersionResponse(BaseModel):
    toolkit: str
    format: str
