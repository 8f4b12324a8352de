"""Command-line front end wiring the library into a file-backed pipeline.

Subcommands: extract-phrases, project, pipeline, evaluate, agreement,
serve. Data goes to stdout or --out (written atomically: partial files
are removed on failure); logging goes to stderr only. Exit codes:
0 success, 1 validation/join errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator

from . import FORMAT_VERSION, __version__
from .bleu import BleuConfig
from .corpus import (
    BackendBundle,
    ParallelRecord,
    encode_projected,
    read_gold,
    read_parallel,
    read_projected,
    read_triples,
)
from .errors import EmptyProjection, RelProjError
from .evaluation import agreement, evaluate
from .model import ProjectedPhrase, RelationTriple
from .phrases import ExtractConfig, phrase_extract
from .projection import ProjectionConfig, project_phrase, project_relation

log = logging.getLogger("relproj")


def _add_parallel_opts(p: argparse.ArgumentParser, d) -> None:
    p.add_argument("--src", required=True, help="source-language sentences, one per line")
    p.add_argument("--tgt", required=True, help="target-side translations, one per line")
    p.add_argument("--align", required=True, help="Pharaoh alignment file (0-based i-j pairs)")
    p.add_argument("--ids", default=d(None), help="optional file with one sentence id per line")
    p.add_argument("--min-len", type=int, default=d(None), help="drop sentences with fewer source tokens")
    p.add_argument("--max-len", type=int, default=d(None), help="drop sentences with more source tokens")


def _add_bleu_opts(p: argparse.ArgumentParser, d) -> None:
    p.add_argument("--bleu-order", type=int, default=d(3), help="maximum n-gram order (default 3)")
    p.add_argument("--case-fold", action="store_true", default=d(False), help="case-fold tokens for overlap and BLEU")
    p.add_argument("--no-brevity-penalty", action="store_true", default=d(False), help="disable the brevity penalty")


def _add_extract_opts(p: argparse.ArgumentParser, d) -> None:
    p.add_argument("--max-src-len", type=int, default=d(None), help="cap source phrase length")
    p.add_argument("--max-tgt-len", type=int, default=d(None), help="cap target phrase length")
    p.add_argument("--no-extensions", action="store_true", default=d(False),
                   help="forbid source phrases starting/ending on unaligned tokens")


def _add_out_opt(p: argparse.ArgumentParser, d) -> None:
    p.add_argument("--out", default=d(None), help="output path (default: stdout)")


def build_parser(suppress_defaults: bool = False) -> argparse.ArgumentParser:
    def d(value):
        return argparse.SUPPRESS if suppress_defaults else value

    parser = argparse.ArgumentParser(
        prog="relproj",
        description="Project open relation triples across a word-aligned sentence pair "
                    "and evaluate the projections.",
    )
    parser.add_argument(
        "--version", action="version",
        version=f"relproj {__version__} (format {FORMAT_VERSION})",
    )
    parser.add_argument("--config", default=d(None),
                        help="JSON file of option defaults; explicit flags override it")
    parser.add_argument("-v", "--verbose", action="store_true", default=d(False),
                        help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("extract-phrases", help="emit all consistent phrase pairs per sentence")
    _add_parallel_opts(p, d)
    _add_extract_opts(p, d)
    _add_out_opt(p, d)

    p = sub.add_parser("project", help="project one phrase across every sentence pair")
    _add_parallel_opts(p, d)
    p.add_argument("--phrase", required=True, help="space-separated tokens to project")
    _add_bleu_opts(p, d)
    _add_extract_opts(p, d)
    _add_out_opt(p, d)

    p = sub.add_parser("pipeline", help="project relation triples over a corpus")
    _add_parallel_opts(p, d)
    p.add_argument("--triples", required=True, help="extracted relations (JSONL)")
    _add_bleu_opts(p, d)
    _add_extract_opts(p, d)
    p.add_argument("--jobs", type=int, default=d(1),
                   help="worker processes; output order is input order regardless")
    _add_out_opt(p, d)

    p = sub.add_parser("evaluate", help="score projected relations against gold annotations")
    p.add_argument("--projected", required=True, help="projected relations (JSONL)")
    p.add_argument("--gold", required=True, help="gold annotations (JSONL)")
    _add_bleu_opts(p, d)
    p.add_argument("--bins", action="store_true", default=d(False),
                   help="print the BLEU histogram as counts per bin")
    p.add_argument("--json", action="store_true", default=d(False),
                   help="print the machine-readable JSON report instead of the table")
    _add_out_opt(p, d)

    p = sub.add_parser("agreement", help="compare two annotation passes")
    p.add_argument("--a", dest="ann_a", required=True, help="first-pass annotations (JSONL)")
    p.add_argument("--b", dest="ann_b", required=True, help="second-pass annotations (JSONL)")
    _add_bleu_opts(p, d)
    p.add_argument("--json", action="store_true", default=d(False))
    _add_out_opt(p, d)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default=d("127.0.0.1"))
    p.add_argument("--port", type=int, default=d(8000))

    return parser


def _apply_config(parser: argparse.ArgumentParser, args: argparse.Namespace, argv) -> None:
    """Fill options from the JSON config file where no explicit flag was given."""
    explicit = vars(build_parser(suppress_defaults=True).parse_args(argv))
    try:
        with open(args.config, encoding="utf-8") as f:
            values = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read config file {args.config}: {exc}")
    if not isinstance(values, dict):
        parser.error(f"config file {args.config} must hold a JSON object")
    known = set(vars(args))
    for key, value in values.items():
        if key in ("config", "command"):
            continue
        if key not in known:
            parser.error(f"config file {args.config}: unknown option {key!r}")
        if key not in explicit:
            setattr(args, key, value)


@contextmanager
def _open_output(path: str | None):
    """Yield a text sink; file outputs are atomic and cleaned up on failure."""
    if path is None or path == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    target = Path(path)
    tmp = tempfile.NamedTemporaryFile(
        "w",
        encoding="utf-8",
        newline="\n",
        dir=target.parent if str(target.parent) else ".",
        prefix=target.name + ".",
        suffix=".part",
        delete=False,
    )
    try:
        with tmp as f:
            yield f
        os.replace(tmp.name, target)
    except BaseException:
        try:
            os.unlink(tmp.name)
        except FileNotFoundError:
            pass
        raise


def _bleu_config(args) -> BleuConfig:
    return BleuConfig(
        max_order=args.bleu_order,
        brevity_penalty=not args.no_brevity_penalty,
        case_fold=args.case_fold,
    )


def _extract_config(args) -> ExtractConfig:
    return ExtractConfig(
        max_src_len=args.max_src_len,
        max_tgt_len=args.max_tgt_len,
        include_unaligned_extensions=not args.no_extensions,
    )


def _records(args, min_len=None, max_len=None) -> Iterator[ParallelRecord]:
    return read_parallel(
        args.src, args.tgt, args.align,
        ids_file=args.ids, min_len=min_len, max_len=max_len,
    )


def cmd_extract_phrases(args) -> int:
    cfg = _extract_config(args)
    with _open_output(args.out) as out:
        for rec in _records(args, args.min_len, args.max_len):
            src_toks = rec.source.tokens
            tgt_toks = rec.target.tokens
            for pair in phrase_extract(rec.source, rec.target, rec.alignment, cfg):
                out.write(
                    f"{pair.src.start}-{pair.src.end}\t{pair.tgt.start}-{pair.tgt.end}\t"
                    f"{' '.join(src_toks[pair.src.start:pair.src.stop])}\t"
                    f"{' '.join(tgt_toks[pair.tgt.start:pair.tgt.stop])}\n"
                )
    return 0


def cmd_project(args) -> int:
    phrase = tuple(args.phrase.split())
    if not phrase:
        print("relproj project: --phrase must contain at least one token", file=sys.stderr)
        return 2
    cfg = ProjectionConfig(bleu=_bleu_config(args), extract=_extract_config(args))
    with _open_output(args.out) as out:
        for rec in _records(args, args.min_len, args.max_len):
            try:
                slot = project_phrase(rec.source, rec.target, rec.alignment, phrase, cfg)
            except EmptyProjection:
                slot = ProjectedPhrase.unprojected()
            payload = {"sentence_id": rec.sentence_id, **slot.to_dict()}
            out.write(json.dumps(payload, ensure_ascii=False, separators=(",", ":")) + "\n")
    return 0


def _pipeline_task(payload) -> list[str]:
    rec, triples, cfg = payload
    return [
        encode_projected(project_relation(tr, rec.source, rec.target, rec.alignment, cfg))
        for tr in triples
    ]


def _length_ok(rec: ParallelRecord, min_len, max_len) -> bool:
    n = len(rec.source.tokens)
    if min_len is not None and n < min_len:
        return False
    if max_len is not None and n > max_len:
        return False
    return True


def cmd_pipeline(args) -> int:
    cfg = ProjectionConfig(bleu=_bleu_config(args), extract=_extract_config(args))
    bundle = BackendBundle(_records(args), read_triples(args.triples))
    # the length filter drops whole sentences after the join so that
    # triples of filtered sentences are consumed, not reported as errors
    tasks = (
        (rec, triples, cfg)
        for rec, triples in bundle.joined()
        if _length_ok(rec, args.min_len, args.max_len)
    )
    done = 0
    with _open_output(args.out) as out:
        if args.jobs <= 1:
            for task in tasks:
                for line in _pipeline_task(task):
                    out.write(line + "\n")
                done += 1
                if args.verbose and done % 1000 == 0:
                    log.info("projected %d sentences", done)
        else:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                for lines in pool.map(_pipeline_task, tasks, chunksize=16):
                    for line in lines:
                        out.write(line + "\n")
                    done += 1
                    if args.verbose and done % 1000 == 0:
                        log.info("projected %d sentences", done)
    if args.verbose:
        log.info("pipeline finished: %d sentences with triples", done)
    return 0


def _emit_report(args, report) -> None:
    if args.out:
        with _open_output(args.out) as f:
            f.write(report.to_json() + "\n")
        print(report.to_table(**({"show_bins": args.bins} if hasattr(args, "bins") else {})))
    elif args.json:
        print(report.to_json())
    else:
        print(report.to_table(**({"show_bins": args.bins} if hasattr(args, "bins") else {})))


def cmd_evaluate(args) -> int:
    report = evaluate(read_projected(args.projected), read_gold(args.gold), _bleu_config(args))
    _emit_report(args, report)
    return 0


def cmd_agreement(args) -> int:
    report = agreement(read_gold(args.ann_a), read_gold(args.ann_b), _bleu_config(args))
    _emit_report(args, report)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


_COMMANDS = {
    "extract-phrases": cmd_extract_phrases,
    "project": cmd_project,
    "pipeline": cmd_pipeline,
    "evaluate": cmd_evaluate,
    "agreement": cmd_agreement,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    if args.config:
        _apply_config(parser, args, argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
    )
    try:
        return _COMMANDS[args.command](args)
    except RelProjError as exc:
        print(f"relproj: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"relproj: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
