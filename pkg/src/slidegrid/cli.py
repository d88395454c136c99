"""Operator command line: extract, validate, heatmap, query, serve.

Exit codes are uniform: 0 success, 1 domain failure (invalid records, empty
draft or corpus), 2 usage or environment failure (bad flags, missing files,
unusable config). Output is plain text or JSON so runs are machine-checkable.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from pathlib import Path

from .corpus import CorpusFormatError, load_corpus, load_draft, scan_corpus
from .extractor import EmptyFrameSourceError, ExtractorConfig, extract_directory
from .heatmap import DEFAULT_HEATMAP_G, HeatmapMode, compute_heatmap, grid_to_record
from .index import DEFAULT_K, DuplicateIdError, build_index, query
from .layout import LayoutValidationError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slidegrid",
        description="Slide layout corpus tools and retrieval service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract slides from a frame directory")
    p_extract.add_argument("--frames", required=True, help="directory of ordered frame images")
    p_extract.add_argument("--out", required=True, help="output directory for slides + manifest")
    p_extract.add_argument("--threshold", type=int, default=10, help="transition threshold (bits)")
    p_extract.add_argument("--window", type=int, default=5, help="stability window (frames)")
    p_extract.add_argument("--dedup", type=int, default=4, help="dedup threshold (bits)")

    p_validate = sub.add_parser("validate", help="check a corpus annotation file")
    p_validate.add_argument("--corpus", required=True, help="corpus annotation file")

    p_query = sub.add_parser("query", help="rank corpus layouts against a draft")
    p_query.add_argument("--corpus", required=True, help="corpus annotation file")
    p_query.add_argument("--draft", required=True, help="draft layout JSON file")
    p_query.add_argument("-k", type=int, default=DEFAULT_K, help="results to return")

    p_heatmap = sub.add_parser("heatmap", help="print a corpus density grid")
    p_heatmap.add_argument("--corpus", required=True, help="corpus annotation file")
    p_heatmap.add_argument(
        "--mode", required=True, choices=["title", "text", "figure", "all"]
    )
    p_heatmap.add_argument("--g", type=int, default=DEFAULT_HEATMAP_G, help="grid size")

    p_serve = sub.add_parser("serve", help="run the retrieval HTTP service")
    p_serve.add_argument("--config", required=True, help="flat JSON config file")
    p_serve.add_argument("--host", help="override the configured bind address")
    p_serve.add_argument("--port", type=int, help="override the configured port")

    return parser


def _cmd_extract(args: argparse.Namespace) -> int:
    try:
        config = ExtractorConfig(
            transition_threshold=args.threshold,
            stability_window=args.window,
            dedup_threshold=args.dedup,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        slides = extract_directory(Path(args.frames), Path(args.out), config)
    except EmptyFrameSourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"extracted {len(slides)} slides")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    path = Path(args.corpus)
    try:
        scan = scan_corpus(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return 2
    if not scan.ok:
        for line_no, message in scan.problems:
            print(f"line {line_no}: {message}")
        return 1
    counts = Counter(el.category.value for layout in scan.layouts for el in layout.elements)
    print(
        f"{len(scan.layouts)} slides, {counts.get('title', 0)} title, "
        f"{counts.get('text', 0)} text, {counts.get('figure', 0)} figure"
    )
    return 0


def _cmd_query(args: argparse.Namespace) -> int:
    try:
        corpus = load_corpus(Path(args.corpus))
        draft = load_draft(Path(args.draft))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CorpusFormatError, LayoutValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not draft.elements:
        print("error: draft has no elements", file=sys.stderr)
        return 1
    if args.k < 1:
        print(f"error: k must be >= 1, got {args.k}", file=sys.stderr)
        return 2
    try:
        index = build_index(corpus)
        result = query(index, draft, args.k)
    except (DuplicateIdError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for rank, hit in enumerate(result.results, start=1):
        print(f"{rank} {hit.id} {hit.score:.6f}")
    return 0


def _cmd_heatmap(args: argparse.Namespace) -> int:
    try:
        corpus = load_corpus(Path(args.corpus))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CorpusFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.g < 1:
        print(f"error: grid size must be >= 1, got {args.g}", file=sys.stderr)
        return 2
    indexable = [layout for layout in corpus if layout.elements]
    if not indexable:
        print("error: corpus holds no layouts with elements", file=sys.stderr)
        return 1
    grid = compute_heatmap(indexable, HeatmapMode(args.mode), args.g)
    print(json.dumps(grid_to_record(grid)))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ConfigError, ServiceConfig, ServiceState, create_app

    try:
        config = ServiceConfig.from_file(Path(args.config))
        if args.host is not None:
            config.host = args.host
        if args.port is not None:
            config.port = args.port
        config.validate()
        state = ServiceState(config)
    except (ConfigError, CorpusFormatError, DuplicateIdError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    app = create_app(state)
    try:
        uvicorn.run(
            app, host=config.host, port=config.port, access_log=False, log_level="warning"
        )
    except SystemExit as exc:  # uvicorn exits nonzero when it cannot bind
        return 2 if exc.code else 0
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "extract": _cmd_extract,
        "validate": _cmd_validate,
        "query": _cmd_query,
        "heatmap": _cmd_heatmap,
        "serve": _cmd_serve,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
