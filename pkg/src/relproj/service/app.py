"""FastAPI application exposing the toolkit's operations over HTTP.

The service is stateless; every request carries its full inputs, so
instances can be replicated freely. Domain validation failures map to
HTTP 422 with the library's error message.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import FORMAT_VERSION, __version__
from ..bleu import BleuConfig, sentence_bleu
from ..errors import EmptyProjection, RelProjError
from ..evaluation import agreement, evaluate
from ..model import (
    AlignmentSet,
    GoldAnnotation,
    ProjectedPhrase,
    ProjectedRelation,
    RelationTriple,
    Sentence,
)
from ..phrases import ExtractConfig, phrase_extract
from ..projection import ProjectionConfig, project_phrase, project_relation
from . import schemas


def _bleu_config(opts: schemas.BleuOptions) -> BleuConfig:
    return BleuConfig(
        max_order=opts.max_order,
        brevity_penalty=opts.brevity_penalty,
        case_fold=opts.case_fold,
    )


def _extract_config(opts: schemas.ExtractOptions) -> ExtractConfig:
    return ExtractConfig(
        max_src_len=opts.max_src_len,
        max_tgt_len=opts.max_tgt_len,
        include_unaligned_extensions=opts.include_unaligned_extensions,
    )


def _sentence_pair(req: schemas.SentencePair) -> tuple[Sentence, Sentence, AlignmentSet]:
    source = Sentence(id="0", tokens=tuple(req.source_tokens))
    target = Sentence(id="0", tokens=tuple(req.target_tokens))
    align = AlignmentSet(
        links=frozenset((i, j) for i, j in req.alignment),
        src_len=len(source.tokens),
        tgt_len=len(target.tokens),
    )
    return source, target, align


def _phrase_model(slot: ProjectedPhrase) -> schemas.ProjectedPhraseModel:
    d = slot.to_dict()
    return schemas.ProjectedPhraseModel(
        text=d["text"],
        span=tuple(d["span"]) if d["span"] is not None else None,
        method=d["method"],
        bleu=d["bleu"],
    )


def _relation_model(rec: ProjectedRelation) -> schemas.ProjectedRelationModel:
    return schemas.ProjectedRelationModel(
        sentence_id=rec.sentence_id,
        arg1=_phrase_model(rec.arg1),
        rel=_phrase_model(rec.rel),
        arg2=_phrase_model(rec.arg2),
    )


def _domain_relation(model: schemas.ProjectedRelationModel) -> ProjectedRelation:
    def slot(m: schemas.ProjectedPhraseModel) -> ProjectedPhrase:
        return ProjectedPhrase.from_dict(
            {"text": m.text, "span": list(m.span) if m.span else None, "method": m.method, "bleu": m.bleu}
        )

    return ProjectedRelation(
        sentence_id=model.sentence_id,
        arg1=slot(model.arg1),
        rel=slot(model.rel),
        arg2=slot(model.arg2),
    )


def _domain_gold(model: schemas.GoldAnnotationModel) -> GoldAnnotation:
    return GoldAnnotation(
        sentence_id=model.sentence_id,
        valid=model.valid,
        gold_rel=tuple(model.gold_rel),
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="relproj",
        version=__version__,
        description="Cross-lingual projection of open relation triples",
    )

    @app.exception_handler(RelProjError)
    async def _domain_error(request: Request, exc: RelProjError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok")

    @app.get("/version", response_model=schemas.VersionResponse)
    def version() -> schemas.VersionResponse:
        return schemas.VersionResponse(toolkit=__version__, format=FORMAT_VERSION)

    @app.post("/bleu", response_model=schemas.BleuResponse)
    def bleu(req: schemas.BleuRequest) -> schemas.BleuResponse:
        score = sentence_bleu(req.candidate, req.reference, _bleu_config(req.options))
        return schemas.BleuResponse(score=score)

    @app.post("/extract-phrases", response_model=schemas.ExtractResponse)
    def extract(req: schemas.ExtractRequest) -> schemas.ExtractResponse:
        source, target, align = _sentence_pair(req)
        pairs = phrase_extract(source, target, align, _extract_config(req.options))
        return schemas.ExtractResponse(
            pairs=[
                schemas.PhrasePairModel(
                    src_start=p.src.start,
                    src_end=p.src.end,
                    tgt_start=p.tgt.start,
                    tgt_end=p.tgt.end,
                    src_text=" ".join(source.tokens[p.src.start : p.src.stop]),
                    tgt_text=" ".join(target.tokens[p.tgt.start : p.tgt.stop]),
                )
                for p in pairs
            ]
        )

    @app.post("/project-phrase", response_model=schemas.ProjectedPhraseModel)
    def project_one(req: schemas.ProjectPhraseRequest) -> schemas.ProjectedPhraseModel:
        source, target, align = _sentence_pair(req)
        cfg = ProjectionConfig(bleu=_bleu_config(req.bleu), extract=_extract_config(req.extract))
        try:
            slot = project_phrase(source, target, align, tuple(req.phrase), cfg)
        except EmptyProjection:
            slot = ProjectedPhrase.unprojected()
        return _phrase_model(slot)

    @app.post("/project-relation", response_model=schemas.ProjectedRelationModel)
    def project_rel(req: schemas.ProjectRelationRequest) -> schemas.ProjectedRelationModel:
        source, target, align = _sentence_pair(req)
        source = Sentence(id=req.sentence_id, tokens=source.tokens)
        target = Sentence(id=req.sentence_id, tokens=target.tokens)
        triple = RelationTriple(
            sentence_id=req.sentence_id,
            arg1=tuple(req.triple.arg1),
            rel=tuple(req.triple.rel),
            arg2=tuple(req.triple.arg2),
        )
        cfg = ProjectionConfig(bleu=_bleu_config(req.bleu), extract=_extract_config(req.extract))
        return _relation_model(project_relation(triple, source, target, align, cfg))

    @app.post("/evaluate", response_model=schemas.EvalReportModel)
    def run_evaluate(req: schemas.EvaluateRequest) -> schemas.EvalReportModel:
        report = evaluate(
            (_domain_relation(m) for m in req.projected),
            (_domain_gold(m) for m in req.gold),
            _bleu_config(req.options),
        )
        return schemas.EvalReportModel(**report.to_dict())

    @app.post("/agreement", response_model=schemas.AgreementReportModel)
    def run_agreement(req: schemas.AgreementRequest) -> schemas.AgreementReportModel:
        report = agreement(
            (_domain_gold(m) for m in req.annotations_a),
            (_domain_gold(m) for m in req.annotations_b),
            _bleu_config(req.options),
        )
        return schemas.AgreementReportModel(**report.to_dict())

    return app


app = create_app()
