"""HTTP API over a loaded registry: corpus listing, search, graph export.

Search is a POST (the query language is block-structured text, hostile to
URL encoding); syntax errors come back as structured 422 responses with a
line/column anchor so editors can place the caret.  Every search runs under
a time budget and aborts with 503 when exceeded.
"""

from __future__ import annotations

import time

from fastapi import FastAPI, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from semgraph.dot import to_dot
from semgraph.graph import UnknownSentenceError
from semgraph.interchange import write_graph
from semgraph.matching import (
    MatchBudgetExceeded,
    cluster,
    match_corpus,
)
from semgraph.query import (
    EmptyRequestError,
    QueryError,
    QuerySyntaxError,
    parse_cluster_key,
    parse_request,
)
from semgraph.registry import Registry, UnknownCorpusError

DEFAULT_BUDGET_SECONDS = 10.0


class SearchBody(BaseModel):
    request: str
    cluster: str | None = None
    limit: int = 50
    offset: int = 0


def _syntax_detail(err: QuerySyntaxError) -> dict:
    return {"error": "syntax", "line": err.line, "col": err.col,
            "message": err.message, "expected": list(err.expected)}


def create_app(registry: Registry,
               budget_seconds: float = DEFAULT_BUDGET_SECONDS,
               cors: bool = True) -> FastAPI:
    app = FastAPI(title="semgraph", version="0.1.0")
    if cors:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(CORSMiddleware, allow_origins=["*"],
                           allow_methods=["*"], allow_headers=["*"])

    @app.get("/corpora")
    def list_corpora():
        return [{"id": entry.id,
                 "format": entry.spec.format,
                 "language": entry.spec.language,
                 "graphs": len(entry.corpus)}
                for entry in registry.entries.values()]

    @app.post("/corpora/{corpus_id}/search")
    def search(corpus_id: str, body: SearchBody):
        try:
            entry = registry.get(corpus_id)
        except UnknownCorpusError as err:
            return JSONResponse(status_code=404, content={"detail": str(err)})
        if body.limit < 0 or body.offset < 0:
            return JSONResponse(
                status_code=400,
                content={"detail": "limit and offset must be >= 0"})
        try:
            req = parse_request(body.request)
            key = parse_cluster_key(body.cluster, req) \
                if body.cluster else None
        except QuerySyntaxError as err:
            return JSONResponse(status_code=422,
                                content={"detail": _syntax_detail(err)})
        except (EmptyRequestError, QueryError) as err:
            return JSONResponse(
                status_code=422,
                content={"detail": {"error": "query", "line": 1, "col": 1,
                                    "message": str(err)}})
        deadline = time.monotonic() + budget_seconds
        try:
            occurrences = list(match_corpus(req, entry.corpus,
                                            index=entry.index,
                                            deadline=deadline))
            clusters = None
            if key is not None:
                table = cluster(req, key, entry.corpus, index=entry.index,
                                deadline=deadline)
                clusters = dict(table.sorted_rows())
        except MatchBudgetExceeded:
            return JSONResponse(
                status_code=503,
                content={"detail": "match budget exceeded",
                         "partial": False})
        page = occurrences[body.offset:body.offset + body.limit]
        items = []
        for occ in page:
            graph = entry.corpus.get(occ.sent_id)
            items.append({
                "sent_id": occ.sent_id,
                "text": graph.text,
                "bindings": {"nodes": occ.node_map, "edges": occ.edge_map},
                "dot": to_dot(graph, highlight=occ),
            })
        payload = {"total": len(occurrences), "items": items}
        if clusters is not None:
            payload["clusters"] = clusters
        return payload

    @app.get("/corpora/{corpus_id}/graphs/{sent_id:path}")
    def get_graph(corpus_id: str, sent_id: str,
                  format: str = "interchange"):
        try:
            entry = registry.get(corpus_id)
            graph = entry.corpus.get(sent_id)
        except (UnknownCorpusError, UnknownSentenceError) as err:
            return JSONResponse(status_code=404, content={"detail": str(err)})
        if format == "dot":
            return Response(to_dot(graph), media_type="text/plain")
        if format == "interchange":
            return Response(write_graph(graph), media_type="application/json")
        return JSONResponse(
            status_code=400,
            content={"detail": f"unknown format {format!r}"})

    return app
