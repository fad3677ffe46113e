"""Batch command line: convert files, run queries, lint corpora, serve HTTP.

Exit codes: 0 ok, 1 input error (unreadable data, parse failures, unknown
corpus), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from semgraph import interchange, penman, sbn
from semgraph.dot import to_dot
from semgraph.graph import Corpus, GraphError, SemGraph
from semgraph.matching import cluster, match_corpus
from semgraph.query import (
    QueryError,
    QuerySyntaxError,
    parse_cluster_key,
    parse_request,
)
from semgraph.recipes import LINT_PACKS, RECIPES, pack_recipes
from semgraph.registry import (
    CONFIG_ENV,
    LISTEN_ENV,
    ConfigError,
    Registry,
    UnknownCorpusError,
    compute_stats,
)

USAGE_ERROR = 2
INPUT_ERROR = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semgraph",
        description="Query semantically annotated corpora as labeled graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    convert = sub.add_parser(
        "convert", help="convert between corpus formats and DOT")
    convert.add_argument("input", nargs="?", default="-",
                         help="input file, '-' for stdin")
    convert.add_argument("--from", dest="from_format", required=True,
                         choices=("penman", "sbn", "interchange"))
    convert.add_argument("--to", dest="to_format", required=True,
                         choices=("interchange", "dot"))

    def add_registry_options(p):
        p.add_argument("--config", default=None,
                       help=f"corpus config (default: ${CONFIG_ENV})")
        p.add_argument("--corpus", required=True, help="corpus id")

    grep = sub.add_parser("grep", help="run a query over a corpus")
    add_registry_options(grep)
    grep.add_argument("--request", default=None, help="inline request text")
    grep.add_argument("--request-file", default=None,
                      help="file containing the request")
    grep.add_argument("--cluster", default=None,
                      help="clustering key (N.feature, e.label, whether {...})")
    grep.add_argument("--count", action="store_true",
                      help="print the total only")
    grep.add_argument("--json", action="store_true", dest="as_json",
                      help="machine-readable output")
    grep.add_argument("--plot", default=None, metavar="FILE",
                      help="also render the cluster table to a figure file")

    lint = sub.add_parser("lint", help="run an error-mining recipe pack")
    add_registry_options(lint)
    lint.add_argument("--pack", required=True,
                      help=f"recipe pack, one of {sorted(LINT_PACKS)}")

    stats = sub.add_parser("stats", help="corpus totals and label histogram")
    add_registry_options(stats)
    stats.add_argument("--plot", default=None, metavar="FILE",
                       help="render the histogram to a figure file")
    stats.add_argument("--top", type=int, default=None,
                       help="limit histogram rows")

    serve = sub.add_parser("serve", help="serve the HTTP API")
    serve.add_argument("--config", default=None,
                       help=f"corpus config (default: ${CONFIG_ENV})")
    serve.add_argument("--listen", default=None,
                       help=f"host:port (default: ${LISTEN_ENV} or "
                            "127.0.0.1:8747)")
    serve.add_argument("--budget", type=float, default=10.0,
                       help="per-request match budget in seconds")
    serve.add_argument("--no-cors", action="store_true",
                       help="disable permissive cross-origin headers")

    recipes = sub.add_parser("recipes", help="list the shipped example queries")
    recipes.add_argument("--json", action="store_true", dest="as_json")
    return parser


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_registry(args) -> Registry:
    config = args.config or os.environ.get(CONFIG_ENV)
    if not config:
        raise SystemExit2(f"no corpus config: pass --config or set "
                          f"${CONFIG_ENV}")
    return Registry.load_all(config)


class SystemExit2(Exception):
    """Usage error carrying its message (exit code 2)."""


def _echo_query_error(err: QuerySyntaxError, text: str) -> None:
    print(f"error: {err}", file=sys.stderr)
    lines = text.splitlines()
    if 1 <= err.line <= len(lines):
        print(f"  {lines[err.line - 1]}", file=sys.stderr)
        print("  " + " " * (err.col - 1) + "^", file=sys.stderr)


def cmd_convert(args) -> int:
    try:
        text = _read_input(args.input)
    except OSError as err:
        print(f"error: cannot read {args.input}: {err}", file=sys.stderr)
        return INPUT_ERROR
    graphs: list[SemGraph] = []
    failed = False
    if args.from_format == "penman":
        corpus = penman.parse_penman_corpus(text)
        graphs = corpus.graphs
        for issue in corpus.issues:
            print(f"error: {issue.sent_id}: {issue.message}", file=sys.stderr)
            failed = True
    elif args.from_format == "sbn":
        try:
            graph, warnings = sbn.parse_sbn_document(text)
        except sbn.SbnSyntaxError as err:
            print(f"error: {err}", file=sys.stderr)
            return INPUT_ERROR
        if warnings:
            # a skipped line is lost data; conversion must be strict
            for warning in warnings:
                print(f"error: {warning}", file=sys.stderr)
            return INPUT_ERROR
        graphs = [graph]
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as err:
            print(f"error: not valid JSON: {err}", file=sys.stderr)
            return INPUT_ERROR
        docs = doc if isinstance(doc, list) else [doc]
        try:
            graphs = [interchange.graph_from_document(d, f"$[{i}]")
                      for i, d in enumerate(docs)]
        except interchange.SchemaError as err:
            print(f"error: {err}", file=sys.stderr)
            return INPUT_ERROR
    if not graphs and not failed:
        print("error: empty input", file=sys.stderr)
        return INPUT_ERROR
    if args.to_format == "interchange":
        if len(graphs) == 1:
            sys.stdout.write(interchange.write_graph(graphs[0]))
        else:
            docs = [json.loads(interchange.write_graph(g)) for g in graphs]
            json.dump(docs, sys.stdout, indent=2, ensure_ascii=False)
            sys.stdout.write("\n")
    else:
        sys.stdout.write("\n".join(to_dot(g) for g in graphs))
    return INPUT_ERROR if failed else 0


def _resolve_request(args) -> str:
    if args.request and args.request_file:
        raise SystemExit2("--request and --request-file are mutually exclusive")
    if args.request_file:
        return Path(args.request_file).read_text(encoding="utf-8")
    if args.request:
        return args.request
    raise SystemExit2("one of --request or --request-file is required")


def cmd_grep(args) -> int:
    request_text = _resolve_request(args)
    if args.plot and not args.cluster:
        raise SystemExit2("--plot needs --cluster")
    registry = _load_registry(args)
    try:
        entry = registry.get(args.corpus)
    except UnknownCorpusError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR
    try:
        req = parse_request(request_text)
    except QuerySyntaxError as err:
        _echo_query_error(err, request_text)
        return INPUT_ERROR
    except QueryError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR

    if args.cluster:
        try:
            key = parse_cluster_key(args.cluster, req)
        except QuerySyntaxError as err:
            _echo_query_error(err, args.cluster)
            return INPUT_ERROR
        except QueryError as err:
            print(f"error: {err}", file=sys.stderr)
            return INPUT_ERROR
        table = cluster(req, key, entry.corpus, index=entry.index)
        rows = table.sorted_rows()
        if args.as_json:
            json.dump({"corpus": entry.id, "total": table.total,
                       "clusters": dict(rows)}, sys.stdout, indent=2)
            sys.stdout.write("\n")
        elif args.count:
            print(table.total)
        else:
            from semgraph.report import format_table
            sys.stdout.write(format_table(rows))
        if args.plot:
            from semgraph.report import plot_rows
            plot_rows(rows, args.plot, title=f"{entry.id}: {args.cluster}")
        return 0

    occurrences = list(match_corpus(req, entry.corpus, index=entry.index))
    if args.count:
        print(len(occurrences))
    elif args.as_json:
        items = [{"sent_id": occ.sent_id,
                  "text": entry.corpus.get(occ.sent_id).text,
                  "nodes": occ.node_map, "edges": occ.edge_map}
                 for occ in occurrences]
        json.dump({"corpus": entry.id, "total": len(occurrences),
                   "occurrences": items}, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for occ in occurrences:
            bindings = [f"{ident}={nid}" for ident, nid in occ.nodes]
            bindings += [f"{ident}={eid}" for ident, eid in occ.edges]
            print(f"{occ.sent_id}\t{' '.join(bindings)}")
    return 0


def cmd_lint(args) -> int:
    try:
        recipes = pack_recipes(args.pack)
    except KeyError as err:
        raise SystemExit2(str(err.args[0]))
    registry = _load_registry(args)
    try:
        entry = registry.get(args.corpus)
    except UnknownCorpusError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR
    for recipe in recipes:
        req = parse_request(recipe.request)
        occurrences = list(match_corpus(req, entry.corpus, index=entry.index))
        samples = []
        for occ in occurrences:
            if occ.sent_id not in samples:
                samples.append(occ.sent_id)
            if len(samples) >= 5:
                break
        suffix = f"  e.g. {', '.join(samples)}" if samples else ""
        print(f"{recipe.name}: {len(occurrences)}{suffix}")
    return 0


def cmd_stats(args) -> int:
    registry = _load_registry(args)
    try:
        entry = registry.get(args.corpus)
    except UnknownCorpusError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR
    stats = compute_stats(entry.corpus)
    print(f"graphs\t{stats.graphs}")
    print(f"nodes\t{stats.nodes}")
    print(f"edges\t{stats.edges}")
    rows = list(stats.label_histogram)
    if args.top:
        rows = rows[:args.top]
    from semgraph.report import format_table
    sys.stdout.write(format_table(rows, header=("label", "count")))
    if args.plot:
        from semgraph.report import plot_rows
        plot_rows(rows, args.plot, title=f"{entry.id}: edge labels",
                  top=args.top or 10)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from semgraph.service import create_app

    config = args.config or os.environ.get(CONFIG_ENV)
    if not config:
        raise SystemExit2(f"no corpus config: pass --config or set "
                          f"${CONFIG_ENV}")
    registry = Registry.load_all(config)
    listen = args.listen or os.environ.get(LISTEN_ENV) or "127.0.0.1:8747"
    host, _, port = listen.rpartition(":")
    if not host or not port.isdigit():
        raise SystemExit2(f"bad --listen value {listen!r}, expected host:port")
    app = create_app(registry, budget_seconds=args.budget,
                     cors=not args.no_cors)
    uvicorn.run(app, host=host, port=int(port))
    return 0


def cmd_recipes(args) -> int:
    if args.as_json:
        payload = [{"name": r.name, "title": r.title, "request": r.request,
                    "cluster": r.cluster, "formats": list(r.formats),
                    "description": r.description} for r in RECIPES]
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0
    for r in RECIPES:
        cluster_note = f"  [cluster: {r.cluster}]" if r.cluster else ""
        print(f"{r.name}: {r.title}{cluster_note}")
        for line in r.request.rstrip().splitlines():
            print(f"    {line}")
    return 0


COMMANDS = {
    "convert": cmd_convert,
    "grep": cmd_grep,
    "lint": cmd_lint,
    "stats": cmd_stats,
    "serve": cmd_serve,
    "recipes": cmd_recipes,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except SystemExit2 as err:
        print(f"usage error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR
    except (GraphError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
