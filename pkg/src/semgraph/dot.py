"""Graphviz DOT export with optional highlighting of one match."""

from __future__ import annotations

from typing import Iterable

from semgraph.graph import FeatureStructure, SemGraph

HIGHLIGHT_COLOR = "#1f77b4"
CONSTRAINT_COLOR = "red"


def _quote(text: str) -> str:
    escaped = (text.replace("\\", "\\\\").replace('"', '\\"')
               .replace("\n", "\\n"))
    return f'"{escaped}"'


def render_features(fs: FeatureStructure) -> str:
    """Human-oriented node caption: bare concept/value/box, else k=v lines."""
    if set(fs) == {"concept"}:
        return fs["concept"]
    if set(fs) == {"value"}:
        return fs["value"]
    if set(fs) == {"box"}:
        return fs["box"]
    if not fs:
        return ""
    return "\n".join(f"{k}={fs[k]}" for k in sorted(fs))


def _attr_list(attrs: dict[str, str]) -> str:
    return "[" + ", ".join(f"{k}={_quote(v)}" for k, v in attrs.items()) + "]"


def _sorted_edge_ids(g: SemGraph) -> Iterable[str]:
    return sorted(g.edges, key=lambda eid: (len(eid), eid))


def to_dot(g: SemGraph, highlight=None) -> str:
    """Render a sealed graph as a DOT digraph.

    ``highlight`` is a match whose ``node_map``/``edge_map`` images get a
    distinct color; ``in`` membership edges are dotted, ``kind=constraint``
    edges red.
    """
    hi_nodes: set[str] = set()
    hi_edges: set[str] = set()
    if highlight is not None:
        hi_nodes = set(highlight.node_map.values())
        hi_edges = set(highlight.edge_map.values())
    lines = ["digraph semgraph {"]
    for nid in sorted(g.nodes):
        fs = g.node(nid)
        attrs = {"label": render_features(fs)}
        if "box" in fs:
            attrs["shape"] = "box"
        if nid in hi_nodes:
            attrs["color"] = HIGHLIGHT_COLOR
            attrs["fontcolor"] = HIGHLIGHT_COLOR
            attrs["penwidth"] = "2"
        lines.append(f"  {_quote(nid)} {_attr_list(attrs)};")
    for eid in _sorted_edge_ids(g):
        edge = g.edge(eid)
        attrs = {"label": edge.label_value}
        if edge.label_value == "in":
            attrs["style"] = "dotted"
        if edge.label.get("kind") == "constraint":
            attrs["color"] = CONSTRAINT_COLOR
            attrs["fontcolor"] = CONSTRAINT_COLOR
        if eid in hi_edges:
            attrs["color"] = HIGHLIGHT_COLOR
            attrs["fontcolor"] = HIGHLIGHT_COLOR
            attrs["penwidth"] = "2"
        lines.append(f"  {_quote(edge.source)} -> {_quote(edge.target)} "
                     f"{_attr_list(attrs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
