"""Lossless JSON interchange for graphs: hand-encoded corpora and tool output."""

from __future__ import annotations

import json
from pathlib import Path

from semgraph.graph import (
    Corpus,
    DuplicateEdgeError,
    DuplicateNodeError,
    GraphError,
    LoadIssue,
    MissingLabelError,
    SemGraph,
    UnknownNodeError,
)


class SchemaError(Exception):
    """Interchange document violates the schema; ``path`` locates the element."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


def write_graph(g: SemGraph) -> str:
    """Serialize a graph; deterministic for a fixed graph (stable key order)."""
    doc = {
        "meta": {k: g.meta[k] for k in sorted(g.meta)},
        "nodes": [{"id": nid, "features": {k: fs[k] for k in sorted(fs)}}
                  for nid, fs in g.nodes.items()],
        "edges": [{"source": e.source, "target": e.target,
                   "features": {k: e.label[k] for k in sorted(e.label)}}
                  for e in g.edges.values()],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _expect_str_map(obj, path: str) -> dict[str, str]:
    if not isinstance(obj, dict):
        raise SchemaError("expected an object of string features", path)
    for k, v in obj.items():
        if not isinstance(k, str) or not k:
            raise SchemaError(f"bad feature name {k!r}", path)
        if not isinstance(v, str):
            raise SchemaError(f"feature {k!r} must be a string", f"{path}.{k}")
    return obj


def read_graph(text: str) -> SemGraph:
    """Parse an interchange document back into a sealed graph."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"not valid JSON: {err}", "$") from None
    return graph_from_document(doc)


def graph_from_document(doc, path: str = "$") -> SemGraph:
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object", path)
    unknown = set(doc) - {"meta", "nodes", "edges"}
    if unknown:
        raise SchemaError(f"unknown keys {sorted(unknown)}", path)
    meta = _expect_str_map(doc.get("meta", {}), f"{path}.meta")
    g = SemGraph(meta)
    nodes = doc.get("nodes", [])
    if not isinstance(nodes, list):
        raise SchemaError("expected a list", f"{path}.nodes")
    for i, item in enumerate(nodes):
        where = f"{path}.nodes[{i}]"
        if not isinstance(item, dict):
            raise SchemaError("expected an object", where)
        nid = item.get("id")
        if not isinstance(nid, str) or not nid:
            raise SchemaError("node id must be a non-empty string", where)
        features = _expect_str_map(item.get("features", {}),
                                   f"{where}.features")
        try:
            g.add_node(features, name=nid)
        except DuplicateNodeError:
            raise SchemaError(f"duplicate node id {nid!r}", where) from None
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise SchemaError("expected a list", f"{path}.edges")
    for i, item in enumerate(edges):
        where = f"{path}.edges[{i}]"
        if not isinstance(item, dict):
            raise SchemaError("expected an object", where)
        features = _expect_str_map(item.get("features", {}),
                                   f"{where}.features")
        try:
            g.add_edge(item.get("source"), item.get("target"), features)
        except UnknownNodeError as err:
            raise SchemaError(str(err), where) from None
        except MissingLabelError:
            raise SchemaError("edge features need a 'label'", where) from None
        except DuplicateEdgeError:
            raise SchemaError("duplicate edge", where) from None
        except GraphError as err:
            raise SchemaError(str(err), where) from None
    return g.seal()


def read_corpus(path: str | Path, corpus_id: str = "interchange") -> Corpus:
    """Load a directory of ``*.json`` documents or one file (object or array).

    Documents missing ``meta.sent_id`` fall back to the file stem (directory
    form) or their position (array form).
    """
    root = Path(path)
    graphs: list[SemGraph] = []
    issues: list[LoadIssue] = []

    def add(doc, fallback_sid: str, where: str) -> None:
        try:
            g = graph_from_document(doc)
        except SchemaError as err:
            issues.append(LoadIssue(fallback_sid, f"{where}: {err}"))
            return
        if g.sent_id is None:
            rebuilt = SemGraph({**g.meta, "sent_id": fallback_sid})
            for nid, fs in g.nodes.items():
                rebuilt.add_node(dict(fs), name=nid)
            for e in g.edges.values():
                rebuilt.add_edge(e.source, e.target, dict(e.label))
            g = rebuilt.seal()
        graphs.append(g)

    if root.is_dir():
        for file in sorted(root.glob("*.json")):
            try:
                doc = json.loads(file.read_text(encoding="utf-8"))
            except json.JSONDecodeError as err:
                issues.append(LoadIssue(file.stem, f"not valid JSON: {err}"))
                continue
            add(doc, file.stem, file.name)
    else:
        doc = json.loads(root.read_text(encoding="utf-8"))
        if isinstance(doc, list):
            for i, item in enumerate(doc, start=1):
                add(item, str(i), f"$[{i - 1}]")
        else:
            add(doc, "1", "$")
    return Corpus(corpus_id, graphs, issues)
