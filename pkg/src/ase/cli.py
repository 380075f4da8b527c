"""Command-line surface over the engine. Exit codes: 0 success, 1 domain
error (code printed on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import benchmark as benchmark_mod
from .config import load_config
from .engine import Engine
from .errors import EngineError, InvalidRequest, NotFound
from .metrics import METRIC_IDS
from .scoring import DualScore, format_percent, interpret
from .summarize import SummaryRequest


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--store", help="store root directory (overrides config)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--embedding-kind", choices=("deterministic", "remote"))
    parser.add_argument("--embedding-url")
    parser.add_argument("--embedding-model")
    parser.add_argument("--embedding-dim", type=int)
    parser.add_argument(
        "--remove-stopwords", action="store_const", const=True, default=None,
        help="drop stopwords before the token-based metrics",
    )
    parser.add_argument("--stopword-file", help="newline-delimited stopword list")


def _build_engine(args: argparse.Namespace) -> Engine:
    overrides = {
        "store_root": args.store,
        "embedding_kind": args.embedding_kind,
        "embedding_url": args.embedding_url,
        "embedding_model": args.embedding_model,
        "embedding_dim": args.embedding_dim,
        "remove_stopwords": args.remove_stopwords,
        "stopword_file": args.stopword_file,
    }
    for attr, key in (
        ("llm_url", "llm_url"),
        ("llm_model", "llm_model"),
        ("bind", "bind_address"),
    ):
        if getattr(args, attr, None) is not None:
            overrides[key] = getattr(args, attr)
    config = load_config(args.config, overrides=overrides)
    return Engine(config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ase",
        description="Score how well a written understanding matches a document "
        "and its summary.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="load a document into the store")
    p_ingest.add_argument("--title", required=True)
    source = p_ingest.add_mutually_exclusive_group(required=True)
    source.add_argument("--text-file", help="plain-text file to ingest")
    source.add_argument("--pdf", help="PDF file, extracted via pdf_extractor_command")
    _add_common_flags(p_ingest)

    p_sum = sub.add_parser("summarize", help="summarize a stored document")
    p_sum.add_argument("--doc", required=True, help="document id")
    p_sum.add_argument("--summarizer", choices=("extractive", "llm"))
    p_sum.add_argument("--target-sentences", type=int)
    p_sum.add_argument("--chunk-chars", type=int)
    p_sum.add_argument("--llm-url")
    p_sum.add_argument("--llm-model")
    _add_common_flags(p_sum)

    p_score = sub.add_parser("score", help="score an understanding attempt")
    p_score.add_argument("--doc", required=True, help="document id")
    p_score.add_argument("--summary", required=True, help="summary id")
    understanding = p_score.add_mutually_exclusive_group(required=True)
    understanding.add_argument(
        "--understanding", help="understanding text, or '-' to read stdin"
    )
    understanding.add_argument("--understanding-file", help="file with the text")
    p_score.add_argument("--headline-metric", choices=METRIC_IDS)
    _add_common_flags(p_score)

    p_bench = sub.add_parser("benchmark", help="run the benchmark corpus")
    p_bench.add_argument("--corpus", help="corpus file (default: bundled corpus)")
    p_bench.add_argument("--out", help="directory for the machine-readable report")
    _add_common_flags(p_bench)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--bind", help="host:port (default from config)")
    _add_common_flags(p_serve)

    p_health = sub.add_parser("health", help="report dependency health")
    _add_common_flags(p_health)

    return parser


def _emit(args: argparse.Namespace, payload: dict | list, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(text)


def _cmd_ingest(args: argparse.Namespace) -> int:
    engine = _build_engine(args)
    if args.text_file:
        path = Path(args.text_file)
        if not path.is_file():
            raise NotFound(f"text file not found: {path}")
        doc = engine.ingest_text(
            args.title, path.read_text(encoding="utf-8"), source="text_file"
        )
    else:
        doc = engine.ingest_pdf(args.title, args.pdf)
    _emit(
        args,
        doc.to_record(),
        f"document {doc.document_id} ({len(doc.sentences)} sentences)",
    )
    return 0


def _cmd_summarize(args: argparse.Namespace) -> int:
    engine = _build_engine(args)
    defaults = engine.default_summary_request()
    backend = defaults.backend
    if args.summarizer:
        backend = "llm_chain" if args.summarizer == "llm" else "extractive"
    request = SummaryRequest(
        backend=backend,
        target_sentences=defaults.target_sentences
        if args.target_sentences is None
        else args.target_sentences,
        chunk_chars=defaults.chunk_chars if args.chunk_chars is None else args.chunk_chars,
    ).validate()
    summary = engine.summarize_document(args.doc, request)
    _emit(
        args,
        summary.to_record(),
        f"summary {summary.summary_id} [{summary.backend}]\n{summary.text}",
    )
    return 0


def _read_understanding(args: argparse.Namespace) -> str:
    if args.understanding_file:
        path = Path(args.understanding_file)
        if not path.is_file():
            raise NotFound(f"understanding file not found: {path}")
        return path.read_text(encoding="utf-8")
    if args.understanding == "-":
        return sys.stdin.read()
    return args.understanding or ""


def _cmd_score(args: argparse.Namespace) -> int:
    engine = _build_engine(args)
    attempt = engine.score(
        args.doc,
        args.summary,
        _read_understanding(args),
        headline_metric=args.headline_metric,
    )
    lines = [f"{'metric':<10} {'vs_summary':>11} {'vs_original':>12} {'mean':>7}"]
    for metric_id in METRIC_IDS:
        result = attempt.breakdown[metric_id]
        if isinstance(result, DualScore):
            lines.append(
                f"{metric_id:<10} {result.vs_summary:>11.4f} "
                f"{result.vs_original:>12.4f} {result.mean:>7.4f}"
            )
        else:
            lines.append(f"{metric_id:<10} error: {result.error}")
    percent = format_percent(attempt.comprehension_percent / 100.0)
    band = interpret(attempt.comprehension_percent)
    lines.append(f"comprehension ({attempt.headline_metric}): {percent} [{band}]")
    _emit(args, attempt.to_record(), "\n".join(lines))
    return 0


def _cmd_benchmark(args: argparse.Namespace) -> int:
    engine = _build_engine(args)  # validates config; benchmark builds its own scratch store
    corpus_path = args.corpus or benchmark_mod.bundled_corpus_path()
    entries = benchmark_mod.load_corpus(corpus_path)
    report = benchmark_mod.run_benchmark(entries, engine.config)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        report_path = out_dir / "benchmark_report.json"
        report_path.write_text(
            json.dumps(report.to_record(), indent=2) + "\n", encoding="utf-8"
        )
    _emit(args, report.to_record(), benchmark_mod.render_report(report).rstrip("\n"))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    engine = _build_engine(args)
    bind = engine.config.bind_address
    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise InvalidRequest(f"bind address must be host:port, got {bind!r}")
    app = create_app(engine)
    uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    return 0


def _cmd_health(args: argparse.Namespace) -> int:
    engine = _build_engine(args)
    statuses = engine.health()
    text_lines = []
    for name, status in statuses.items():
        detail = f" ({status['detail']})" if status.get("detail") else ""
        text_lines.append(f"{name}: {status['status']}{detail}")
    _emit(args, statuses, "\n".join(text_lines))
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "summarize": _cmd_summarize,
    "score": _cmd_score,
    "benchmark": _cmd_benchmark,
    "serve": _cmd_serve,
    "health": _cmd_health,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except EngineError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
