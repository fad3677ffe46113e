"""Semantic annotation corpora as labeled graphs: readers, query engine, exports."""

from semgraph.graph import (
    Corpus,
    DuplicateEdgeError,
    DuplicateNodeError,
    DuplicateSentenceError,
    Edge,
    GraphError,
    GraphSealedError,
    LoadIssue,
    MissingLabelError,
    SemGraph,
    UnknownNodeError,
    UnknownSentenceError,
)

__all__ = [
    "Corpus",
    "DuplicateEdgeError",
    "DuplicateNodeError",
    "DuplicateSentenceError",
    "Edge",
    "GraphError",
    "GraphSealedError",
    "LoadIssue",
    "MissingLabelError",
    "SemGraph",
    "UnknownNodeError",
    "UnknownSentenceError",
]

__version__ = "0.1.0"
