"""Headless driver: ingest, entity dumps, recommendations, comparisons,
file reports, and the development server.

Machine output goes to stdout, diagnostics to stderr. Exit codes: 0 on
success, 2 for usage or input errors, 1 for internal failures. JSON output
is byte-identical to the corresponding service endpoint body.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import payloads
from .config import ServiceConfig, build_resolver, load_config
from .errors import (
    ChemvisError,
    EmptyDocument,
    EmptyInput,
    InvalidWeights,
    MalformedDocument,
    MalformedFormula,
    UnknownDocument,
    UnknownElement,
    UnsupportedFormat,
)
from .ingestion import CorpusStore, ingest_document
from .recommend import SimilarityWeights, align_entities, recommend

_INPUT_ERRORS = (
    UnsupportedFormat,
    MalformedDocument,
    EmptyDocument,
    MalformedFormula,
    UnknownElement,
    EmptyInput,
    UnknownDocument,
    InvalidWeights,
    FileNotFoundError,
    IsADirectoryError,
    PermissionError,
    ValueError,
)


def _config_for(args) -> ServiceConfig:
    config = load_config(getattr(args, "config", None))
    if getattr(args, "store", None):
        config.store_dir = args.store
    return config


def _runtime(args) -> tuple[ServiceConfig, CorpusStore, object]:
    config = _config_for(args)
    return config, CorpusStore(config.store_dir), build_resolver(config)


def _emit_json(payload: dict) -> None:
    sys.stdout.write(payloads.to_json(payload))


def _emit_table(headers: list[str], rows: list[list[str]]) -> None:
    widths = [
        max(len(str(h)), *(len(str(row[i])) for row in rows)) if rows else len(str(h))
        for i, h in enumerate(headers)
    ]
    line = "  ".join(str(h).ljust(w) for h, w in zip(headers, widths))
    sys.stdout.write(line.rstrip() + "\n")
    sys.stdout.write("  ".join("-" * w for w in widths) + "\n")
    for row in rows:
        sys.stdout.write("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _weights_from(args) -> SimilarityWeights:
    config = load_config(getattr(args, "config", None))
    w_entity = config.w_entity if args.w_entity is None else args.w_entity
    w_text = config.w_text if args.w_text is None else args.w_text
    return SimilarityWeights(w_entity, w_text)


def _detect_format(path: Path, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "xml" if path.suffix.lower() == ".xml" else "plaintext"


def cmd_ingest(args) -> int:
    config, store, resolver = _runtime(args)
    for name in args.paths:
        path = Path(name)
        payload = path.read_bytes()
        fmt = _detect_format(path, args.format)
        title = None if fmt == "xml" else path.stem
        doc_id = ingest_document(
            store, payload, fmt, title, resolver=resolver, tag_map=config.tag_map
        )
        sys.stdout.write(doc_id + "\n")
    return 0


def cmd_entities(args) -> int:
    _, store, resolver = _runtime(args)
    payload = payloads.document_entities_payload(store, args.id, resolver)
    if args.output_format == "json":
        _emit_json(payload)
    else:
        rows = [
            [
                e["cid"] if e["cid"] is not None else "",
                e["name"],
                e["formula"] or "",
                e["weight"] if e["weight"] is not None else "",
                e["frequency"],
                e["status"],
            ]
            for e in payload["entities"]
        ]
        _emit_table(["CID", "Name", "Formula", "Weight", "Freq", "Status"], rows)
    return 0


def cmd_recommend(args) -> int:
    _, store, _ = _runtime(args)
    weights = _weights_from(args)
    ranked = recommend(store, args.id, args.k, weights)
    payload = payloads.recommendations_payload(args.id, args.k, weights, ranked)
    if args.output_format == "json":
        _emit_json(payload)
    else:
        rows = [
            [rank, r["id"], f"{r['score']:.6f}", f"{r['entity_component']:.6f}", f"{r['text_component']:.6f}"]
            for rank, r in enumerate(payload["recommendations"], start=1)
        ]
        _emit_table(["Rank", "Id", "Score", "Entity", "Text"], rows)
    return 0


def cmd_compare(args) -> int:
    _, store, resolver = _runtime(args)
    rows = align_entities(store, args.input, args.candidate, resolver)
    payload = payloads.compare_payload(args.input, args.candidate, rows)
    if args.output_format == "json":
        _emit_json(payload)
    else:
        table_rows = [
            [
                r["entity"]["cid"] if r["entity"]["cid"] is not None else "",
                r["entity"]["name"],
                r["entity"]["formula"] or "",
                r["entity"]["weight"] if r["entity"]["weight"] is not None else "",
                r["freq_input"],
                r["freq_candidate"],
                "yes" if r["matched"] else "no",
                r["shade"],
            ]
            for r in payload["rows"]
        ]
        _emit_table(
            ["CID", "Name", "Formula", "Weight", "FreqIn", "FreqCand", "Match", "Shade"],
            table_rows,
        )
    return 0


def cmd_report(args) -> int:
    from .report import write_report  # matplotlib import is heavy; keep it lazy

    _, store, resolver = _runtime(args)
    weights = _weights_from(args)
    rows = align_entities(store, args.input, args.candidate, resolver)
    compare_data = payloads.compare_payload(args.input, args.candidate, rows)
    ranked = recommend(store, args.input, args.k, weights)
    recommendations_data = payloads.recommendations_payload(args.input, args.k, weights, ranked)
    for path in write_report(compare_data, recommendations_data, args.out):
        sys.stdout.write(str(path) + "\n")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = _config_for(args)
    if args.listen:
        config.listen = args.listen
    if args.static:
        config.static_dir = args.static
    host, port = config.host_and_port
    uvicorn.run(create_app(config), host=host, port=port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chemvis")
    parser.add_argument("--config", help="path to a JSON config file")
    subparsers = parser.add_subparsers(dest="command", required=True)

    ingest = subparsers.add_parser("ingest", help="ingest documents, print one id per line")
    ingest.add_argument("paths", nargs="+", metavar="path")
    ingest.add_argument("--format", choices=["xml", "plaintext"], default=None)
    ingest.add_argument("--store")
    ingest.set_defaults(func=cmd_ingest)

    entities = subparsers.add_parser("entities", help="entity dump for a document")
    entities.add_argument("id")
    entities.add_argument("--format", dest="output_format", choices=["table", "json"], default="table")
    entities.add_argument("--store")
    entities.set_defaults(func=cmd_entities)

    rec = subparsers.add_parser("recommend", help="ranked candidates for a document")
    rec.add_argument("id")
    rec.add_argument("-k", type=int, default=10)
    rec.add_argument("--w-entity", dest="w_entity", type=float, default=None)
    rec.add_argument("--w-text", dest="w_text", type=float, default=None)
    rec.add_argument("--format", dest="output_format", choices=["table", "json"], default="table")
    rec.add_argument("--store")
    rec.set_defaults(func=cmd_recommend)

    compare = subparsers.add_parser("compare", help="entity alignment between two documents")
    compare.add_argument("input")
    compare.add_argument("candidate")
    compare.add_argument("--format", dest="output_format", choices=["table", "json"], default="table")
    compare.add_argument("--store")
    compare.set_defaults(func=cmd_compare)

    report = subparsers.add_parser("report", help="write alignment/recommendation TSVs and figures")
    report.add_argument("input")
    report.add_argument("candidate")
    report.add_argument("-k", type=int, default=10)
    report.add_argument("--w-entity", dest="w_entity", type=float, default=None)
    report.add_argument("--w-text", dest="w_text", type=float, default=None)
    report.add_argument("--out", default="chemvis-report")
    report.add_argument("--store")
    report.set_defaults(func=cmd_report)

    serve = subparsers.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--listen", default=None, metavar="host:port")
    serve.add_argument("--store")
    serve.add_argument("--static", default=None, help="directory of built UI assets to serve")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ChemvisError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
