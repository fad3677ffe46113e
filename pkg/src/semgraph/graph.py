"""Labeled-graph model shared by every reader and consumed by the matcher.

Nodes and edges carry flat string-to-string feature structures.  A graph is
mutable while being built and immutable after :meth:`SemGraph.seal`; sealed
graphs are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Mapping

NodeId = str
EdgeId = str
FeatureStructure = Mapping[str, str]

#: Mandatory feature on every edge; a "simple" edge carries nothing else.
LABEL_FEATURE = "label"


class GraphError(Exception):
    """Base class for graph construction and lookup errors."""


class GraphSealedError(GraphError):
    """Mutation was attempted on a sealed graph."""


class UnknownNodeError(GraphError):
    """An edge endpoint or node lookup names a node that does not exist."""


class DuplicateNodeError(GraphError):
    """An explicitly named node id is already taken."""


class DuplicateEdgeError(GraphError):
    """An edge with identical source, target and label already exists."""


class MissingLabelError(GraphError):
    """An edge label structure lacks the mandatory ``label`` feature."""


class DuplicateSentenceError(GraphError):
    """Two graphs in one corpus share a ``sent_id``."""


class UnknownSentenceError(GraphError):
    """A corpus lookup names a sentence that does not exist."""


def _checked_features(features: Mapping[str, str] | None) -> dict[str, str]:
    out: dict[str, str] = {}
    for name, value in (features or {}).items():
        if not isinstance(name, str) or not name:
            raise GraphError(f"feature names must be non-empty strings, got {name!r}")
        if not isinstance(value, str):
            raise GraphError(f"feature {name!r} must map to a string, got {value!r}")
        out[name] = value
    return out


@dataclass(frozen=True)
class Edge:
    """A directed edge decorated with a feature structure.

    The structure always contains the ``label`` feature; bare-string labels
    used elsewhere in the API are sugar for ``{"label": value}``.
    """

    source: NodeId
    target: NodeId
    label: FeatureStructure

    @property
    def label_value(self) -> str:
        return self.label[LABEL_FEATURE]

    def is_simple(self) -> bool:
        return len(self.label) == 1

    def dedup_key(self) -> tuple:
        return (self.source, self.target, tuple(sorted(self.label.items())))


class SemGraph:
    """One sentence's annotation: nodes, directed labeled edges, metadata."""

    def __init__(self, meta: Mapping[str, str] | None = None):
        self._nodes: dict[NodeId, Mapping[str, str]] = {}
        self._edges: dict[EdgeId, Edge] = {}
        self._out: dict[NodeId, list[tuple[EdgeId, NodeId]]] = {}
        self._in: dict[NodeId, list[tuple[EdgeId, NodeId]]] = {}
        self._edge_keys: set[tuple] = set()
        self._meta: dict[str, str] = _checked_features(meta)
        self._sealed = False
        self._auto_node = 0
        self._auto_edge = 0
        self._cyclic: bool | None = None

    # -- construction ------------------------------------------------------

    def add_node(self, features: Mapping[str, str] | None = None,
                 name: NodeId | None = None) -> NodeId:
        """Insert a node and return its id.

        ``name`` requests a specific id (a Penman variable, an SBN line
        index, a user-assigned id); without it a fresh ``n<k>`` id is issued.
        """
        self._require_unsealed()
        if name is not None:
            if name in self._nodes:
                raise DuplicateNodeError(f"node id {name!r} already taken")
            nid = name
        else:
            while f"n{self._auto_node}" in self._nodes:
                self._auto_node += 1
            nid = f"n{self._auto_node}"
            self._auto_node += 1
        self._nodes[nid] = MappingProxyType(_checked_features(features))
        self._out[nid] = []
        self._in[nid] = []
        return nid

    def add_edge(self, source: NodeId, target: NodeId,
                 label: str | Mapping[str, str]) -> EdgeId:
        """Insert an edge; parallel edges with identical labels are rejected."""
        self._require_unsealed()
        if source not in self._nodes:
            raise UnknownNodeError(f"unknown edge source {source!r}")
        if target not in self._nodes:
            raise UnknownNodeError(f"unknown edge target {target!r}")
        if isinstance(label, str):
            label = {LABEL_FEATURE: label}
        fs = _checked_features(label)
        if LABEL_FEATURE not in fs:
            raise MissingLabelError(
                f"edge {source!r}->{target!r} lacks the {LABEL_FEATURE!r} feature")
        edge = Edge(source, target, MappingProxyType(fs))
        key = edge.dedup_key()
        if key in self._edge_keys:
            raise DuplicateEdgeError(
                f"duplicate edge {source!r} -[{fs[LABEL_FEATURE]}]-> {target!r}")
        eid = f"e{self._auto_edge}"
        self._auto_edge += 1
        self._edges[eid] = edge
        self._edge_keys.add(key)
        self._out[source].append((eid, target))
        self._in[target].append((eid, source))
        return eid

    def set_meta(self, name: str, value: str) -> None:
        self._require_unsealed()
        self._meta.update(_checked_features({name: value}))

    def seal(self) -> "SemGraph":
        """Freeze the graph; idempotent, returns self."""
        self._sealed = True
        return self

    def _require_unsealed(self) -> None:
        if self._sealed:
            raise GraphSealedError("graph is sealed")

    # -- reads -------------------------------------------------------------

    @property
    def sealed(self) -> bool:
        return self._sealed

    @property
    def nodes(self) -> Mapping[NodeId, FeatureStructure]:
        return MappingProxyType(self._nodes)

    @property
    def edges(self) -> Mapping[EdgeId, Edge]:
        return MappingProxyType(self._edges)

    @property
    def meta(self) -> Mapping[str, str]:
        return MappingProxyType(self._meta) if self._sealed else self._meta

    @property
    def sent_id(self) -> str | None:
        return self._meta.get("sent_id")

    @property
    def text(self) -> str | None:
        return self._meta.get("text")

    def node(self, nid: NodeId) -> FeatureStructure:
        try:
            return self._nodes[nid]
        except KeyError:
            raise UnknownNodeError(f"unknown node {nid!r}") from None

    def edge(self, eid: EdgeId) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    def successors(self, nid: NodeId) -> list[tuple[EdgeId, NodeId]]:
        """Outgoing ``(edge id, target)`` pairs in ascending edge-id order."""
        if nid not in self._nodes:
            raise UnknownNodeError(f"unknown node {nid!r}")
        return list(self._out[nid])

    def predecessors(self, nid: NodeId) -> list[tuple[EdgeId, NodeId]]:
        """Incoming ``(edge id, source)`` pairs in ascending edge-id order."""
        if nid not in self._nodes:
            raise UnknownNodeError(f"unknown node {nid!r}")
        return list(self._in[nid])

    def is_cyclic(self) -> bool:
        """True iff the directed graph has a cycle (membership edges count).

        Kahn's algorithm: strip zero-indegree nodes; survivors form cycles.
        """
        if self._sealed and self._cyclic is not None:
            return self._cyclic
        indeg = {nid: len(self._in[nid]) for nid in self._nodes}
        queue = [nid for nid, d in indeg.items() if d == 0]
        seen = 0
        while queue:
            nid = queue.pop()
            seen += 1
            for _, tgt in self._out[nid]:
                indeg[tgt] -= 1
                if indeg[tgt] == 0:
                    queue.append(tgt)
        cyclic = seen != len(self._nodes)
        if self._sealed:
            self._cyclic = cyclic
        return cyclic

    def __repr__(self) -> str:
        sid = f" {self.sent_id}" if self.sent_id else ""
        return (f"<SemGraph{sid}: {len(self._nodes)} nodes, "
                f"{len(self._edges)} edges{' sealed' if self._sealed else ''}>")


@dataclass(frozen=True)
class LoadIssue:
    """One skipped sentence or non-fatal oddity from a corpus reader."""

    sent_id: str
    message: str
    level: str = "error"  # "error" (sentence skipped) or "warning"


class Corpus:
    """Ordered collection of sealed graphs with unique sentence ids."""

    def __init__(self, corpus_id: str, graphs: list[SemGraph] | None = None,
                 issues: list[LoadIssue] | None = None):
        self.id = corpus_id
        self._graphs: list[SemGraph] = []
        self._by_sent: dict[str, SemGraph] = {}
        self.issues: tuple[LoadIssue, ...] = tuple(issues or ())
        for g in graphs or ():
            self._append(g)

    def _append(self, g: SemGraph) -> None:
        sid = g.sent_id
        if sid is None:
            raise GraphError("corpus graphs need a sent_id in meta")
        if sid in self._by_sent:
            raise DuplicateSentenceError(f"duplicate sent_id {sid!r}")
        if not g.sealed:
            g.seal()
        self._graphs.append(g)
        self._by_sent[sid] = g

    @property
    def graphs(self) -> list[SemGraph]:
        return list(self._graphs)

    def get(self, sent_id: str) -> SemGraph:
        try:
            return self._by_sent[sent_id]
        except KeyError:
            raise UnknownSentenceError(f"unknown sentence {sent_id!r}") from None

    def __contains__(self, sent_id: str) -> bool:
        return sent_id in self._by_sent

    def __iter__(self) -> Iterator[SemGraph]:
        return iter(self._graphs)

    def __len__(self) -> int:
        return len(self._graphs)

    def __repr__(self) -> str:
        return f"<Corpus {self.id!r}: {len(self._graphs)} graphs>"
