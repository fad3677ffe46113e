"""Find occurrences of a request in graphs and corpora.

Semantics: injective homomorphisms.  Named pattern nodes map to distinct
graph nodes, pattern edges to distinct graph edges; the graph may carry any
extra structure around a match.  Wildcard endpoints are anonymous
existentials (they may alias named nodes and never appear in the result).
A match survives a ``without`` block iff the block cannot be extended from
it: shared identifiers keep their images while fresh identifiers would have
to bind injectively among themselves and apart from every base image.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from semgraph.graph import Corpus, SemGraph
from semgraph.query import (
    GLOBAL_IS_ACYCLIC,
    GLOBAL_IS_CYCLIC,
    ClusterKey,
    EdgeConstraint,
    EdgeLabelKey,
    FeatureEq,
    FeatureNeq,
    FeaturePresent,
    FeatureRegex,
    NodeFeatureKey,
    PatternBlock,
    Request,
    WhetherKey,
)

#: Cluster row used when the keyed feature is absent on the mapped node.
UNDEFINED_ROW = "__undefined__"


class MatchBudgetExceeded(Exception):
    """The per-request time budget ran out before matching finished."""


@dataclass(frozen=True)
class Occurrence:
    """One match: an injective assignment of named pattern elements.

    ``nodes`` and ``edges`` are ``(pattern ident, graph id)`` pairs sorted by
    ident; equality over them is occurrence identity.
    """

    nodes: tuple[tuple[str, str], ...]
    edges: tuple[tuple[str, str], ...] = ()
    corpus_id: str | None = None
    sent_id: str | None = None

    @property
    def node_map(self) -> dict[str, str]:
        return dict(self.nodes)

    @property
    def edge_map(self) -> dict[str, str]:
        return dict(self.edges)

    def sort_key(self) -> tuple:
        return (self.nodes, self.edges)


@dataclass
class ClusterTable:
    """Occurrence counts per cluster value; rows always sum to the total."""

    key: ClusterKey
    rows: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.rows.values())

    def add(self, value: str) -> None:
        self.rows[value] = self.rows.get(value, 0) + 1

    def sorted_rows(self) -> list[tuple[str, int]]:
        """Descending by count, ties broken by value ascending."""
        return sorted(self.rows.items(), key=lambda kv: (-kv[1], kv[0]))


@lru_cache(maxsize=512)
def _compiled(pattern: str) -> re.Pattern:
    return re.compile(pattern)


def _node_satisfies(g: SemGraph, clauses, nid: str) -> bool:
    fs = g.node(nid)
    for clause in clauses:
        if isinstance(clause, FeaturePresent):
            if clause.name not in fs:
                return False
        elif isinstance(clause, FeatureEq):
            if fs.get(clause.name) != clause.value:
                return False
        elif isinstance(clause, FeatureNeq):
            value = fs.get(clause.name)
            if value is None or value == clause.value:
                return False
        elif isinstance(clause, FeatureRegex):
            value = fs.get(clause.name)
            # anchored: the regex must cover the whole feature value
            if value is None or not _compiled(clause.pattern).fullmatch(value):
                return False
        else:  # pragma: no cover - parser produces no other clause kinds
            raise TypeError(f"unknown clause {clause!r}")
    return True


def _label_ok(decl: EdgeConstraint, label_value: str) -> bool:
    return decl.labels is None or label_value in decl.labels


class _BlockMatcher:
    """Backtracking search for one pattern block over one sealed graph."""

    def __init__(self, g: SemGraph, block: PatternBlock,
                 pre_bound: Mapping[str, str] | None = None,
                 forbidden: frozenset[str] = frozenset(),
                 seeds: Mapping[str, Sequence[str]] | None = None,
                 deadline: float | None = None):
        self.g = g
        self.block = block
        self.pre = dict(pre_bound or {})
        self.forbidden = forbidden
        self.seeds = dict(seeds or {})
        self.deadline = deadline
        self._steps = 0

    def _tick(self) -> None:
        self._steps += 1
        if self.deadline is not None and not self._steps & 0xFF:
            if time.monotonic() > self.deadline:
                raise MatchBudgetExceeded("match budget exceeded")

    def _selectivity(self, ident: str) -> int:
        if ident in self.seeds:
            return 0
        clauses = self.block.nodes[ident].clauses
        if any(isinstance(c, FeatureEq) for c in clauses):
            return 1
        if clauses:
            return 2
        return 3

    def _candidates(self, ident: str, node_map: dict[str, str]) -> list[str]:
        if ident in self.seeds:
            return list(self.seeds[ident])
        # walk an edge decl whose other endpoint is already bound
        for decl in self.block.edges:
            if decl.src == ident and decl.tgt is not None \
                    and decl.tgt in node_map:
                return list(dict.fromkeys(
                    src for eid, src in self.g.predecessors(node_map[decl.tgt])
                    if _label_ok(decl, self.g.edge(eid).label_value)))
            if decl.tgt == ident and decl.src is not None \
                    and decl.src in node_map:
                return list(dict.fromkeys(
                    tgt for eid, tgt in self.g.successors(node_map[decl.src])
                    if _label_ok(decl, self.g.edge(eid).label_value)))
        return list(self.g.nodes)

    def _order(self) -> list[str]:
        unbound = [i for i in self.block.nodes if i not in self.pre]
        order: list[str] = []
        placed = set(self.pre)
        while unbound:
            connected = [i for i in unbound if any(
                (d.src == i and d.tgt in placed) or
                (d.tgt == i and d.src in placed)
                for d in self.block.edges)]
            pool = connected or unbound
            best = min(pool, key=self._selectivity)
            order.append(best)
            placed.add(best)
            unbound.remove(best)
        return order

    def solutions(self) -> Iterator[tuple[dict[str, str], tuple[str, ...]]]:
        """Yield ``(node map, edge ids per decl)`` for every block solution."""
        # shared (pre-bound) idents must satisfy this block's own clauses too
        for ident, nid in self.pre.items():
            clauses = self.block.nodes.get(ident, None)
            if clauses is not None and not _node_satisfies(self.g,
                                                           clauses.clauses,
                                                           nid):
                return
        order = self._order()
        node_map = dict(self.pre)
        used = set()
        yield from self._bind(order, 0, node_map, used)

    def _bind(self, order, depth, node_map, used):
        if depth == len(order):
            if self._compares_hold(node_map):
                yield from self._assign_edges(node_map)
            return
        ident = order[depth]
        clauses = self.block.nodes[ident].clauses
        for nid in self._candidates(ident, node_map):
            self._tick()
            if nid in used or nid in self.forbidden:
                continue
            if not _node_satisfies(self.g, clauses, nid):
                continue
            node_map[ident] = nid
            used.add(nid)
            yield from self._bind(order, depth + 1, node_map, used)
            used.discard(nid)
            del node_map[ident]

    def _compares_hold(self, node_map) -> bool:
        for cmp_ in self.block.compares:
            left = self.g.node(node_map[cmp_.left_ident]).get(cmp_.left_feature)
            right = self.g.node(node_map[cmp_.right_ident]).get(
                cmp_.right_feature)
            if left is None or right is None or left != right:
                return False
        return True

    def _edge_candidates(self, decl: EdgeConstraint, node_map) -> list[str]:
        g = self.g
        if decl.src is not None:
            src = node_map[decl.src]
            out = []
            for eid, tgt in g.successors(src):
                if decl.tgt is not None and node_map[decl.tgt] != tgt:
                    continue
                if _label_ok(decl, g.edge(eid).label_value):
                    out.append(eid)
            return out
        if decl.tgt is not None:
            tgt = node_map[decl.tgt]
            return [eid for eid, _ in g.predecessors(tgt)
                    if _label_ok(decl, g.edge(eid).label_value)]
        return [eid for eid, edge in g.edges.items()
                if _label_ok(decl, edge.label_value)]

    def _assign_edges(self, node_map):
        decls = list(enumerate(self.block.edges))
        candidates = {i: self._edge_candidates(d, node_map) for i, d in decls}
        decls.sort(key=lambda pair: len(candidates[pair[0]]))
        chosen: dict[int, str] = {}
        taken: set[str] = set()

        def assign(k):
            if k == len(decls):
                yield dict(node_map), tuple(
                    chosen[i] for i in range(len(self.block.edges)))
                return
            i, _ = decls[k]
            for eid in candidates[i]:
                self._tick()
                if eid in taken:
                    continue
                chosen[i] = eid
                taken.add(eid)
                yield from assign(k + 1)
                taken.discard(eid)
                del chosen[i]

        yield from assign(0)


def _globals_hold(req: Request, g: SemGraph) -> bool:
    for pred in req.globals_:
        cyclic = g.is_cyclic()
        if pred == GLOBAL_IS_CYCLIC and not cyclic:
            return False
        if pred == GLOBAL_IS_ACYCLIC and cyclic:
            return False
    return True


def _block_extensible(g: SemGraph, block: PatternBlock,
                      base_map: Mapping[str, str], deadline=None) -> bool:
    """Does an extension of ``base_map`` satisfy the block?  Shared idents
    keep their images; fresh ones must avoid the whole base image."""
    pre = {i: base_map[i] for i in block.nodes if i in base_map}
    forbidden = frozenset(base_map.values())
    matcher = _BlockMatcher(g, block, pre, forbidden, deadline=deadline)
    for _ in matcher.solutions():
        return True
    return False


def iter_graph_matches(req: Request, g: SemGraph, *,
                       corpus_id: str | None = None,
                       seeds: Mapping[str, Sequence[str]] | None = None,
                       deadline: float | None = None) -> Iterator[Occurrence]:
    """Occurrences of ``req`` in one graph, unordered and undeduplicated.

    Prefer :func:`match_graph` unless you only need existence.
    """
    if not _globals_hold(req, g):
        return
    named_edge_index = {i: d.ident for i, d in enumerate(req.base.edges)
                        if d.ident is not None}
    matcher = _BlockMatcher(g, req.base, seeds=seeds, deadline=deadline)
    for node_map, edge_ids in matcher.solutions():
        if any(_block_extensible(g, wo, node_map, deadline)
               for wo in req.withouts):
            continue
        yield Occurrence(
            nodes=tuple(sorted(node_map.items())),
            edges=tuple(sorted((ident, edge_ids[i])
                               for i, ident in named_edge_index.items())),
            corpus_id=corpus_id,
            sent_id=g.sent_id,
        )


def match_graph(req: Request, g: SemGraph, *, corpus_id: str | None = None,
                seeds: Mapping[str, Sequence[str]] | None = None,
                deadline: float | None = None) -> list[Occurrence]:
    """All occurrences, deduplicated over anonymous choices, in a
    deterministic order (lexicographic by mapped ids)."""
    unique = {occ.sort_key(): occ
              for occ in iter_graph_matches(req, g, corpus_id=corpus_id,
                                            seeds=seeds, deadline=deadline)}
    return [unique[k] for k in sorted(unique)]


def has_match(req: Request, g: SemGraph, *,
              deadline: float | None = None) -> bool:
    for _ in iter_graph_matches(req, g, deadline=deadline):
        return True
    return False


def _index_plan(req: Request, index) -> tuple[str, dict[int, list[str]]] | None:
    """Choose the most selective indexed equality constraint, if any.

    Returns ``(ident, {graph position: seed node ids})``.
    """
    if index is None:
        return None
    best = None
    for ident, nc in req.base.nodes.items():
        for clause in nc.clauses:
            if isinstance(clause, FeatureEq):
                postings = index.postings(clause.name, clause.value)
                if best is None or len(postings) < len(best[1]):
                    best = (ident, postings)
    if best is None:
        return None
    ident, postings = best
    grouped: dict[int, list[str]] = {}
    for pos, nid in postings:
        grouped.setdefault(pos, []).append(nid)
    return ident, grouped


def match_corpus(req: Request, corpus: Corpus, *, index=None,
                 deadline: float | None = None) -> Iterator[Occurrence]:
    """Per-graph results concatenated in corpus order."""
    plan = _index_plan(req, index)
    for pos, g in enumerate(corpus):
        if plan is not None:
            ident, grouped = plan
            if pos not in grouped:
                continue
            seeds = {ident: grouped[pos]}
            yield from match_graph(req, g, corpus_id=corpus.id, seeds=seeds,
                                   deadline=deadline)
        else:
            yield from match_graph(req, g, corpus_id=corpus.id,
                                   deadline=deadline)


def count_corpus(req: Request, corpus: Corpus, *, index=None,
                 deadline: float | None = None) -> int:
    return sum(1 for _ in match_corpus(req, corpus, index=index,
                                       deadline=deadline))


def cluster(req: Request, key: ClusterKey, corpus: Corpus, *, index=None,
            deadline: float | None = None) -> ClusterTable:
    """Assign every corpus occurrence to exactly one cluster row."""
    table = ClusterTable(key)
    plan = _index_plan(req, index)
    for pos, g in enumerate(corpus):
        if plan is not None:
            ident, grouped = plan
            if pos not in grouped:
                continue
            occurrences = match_graph(req, g, corpus_id=corpus.id,
                                      seeds={ident: grouped[pos]},
                                      deadline=deadline)
        else:
            occurrences = match_graph(req, g, corpus_id=corpus.id,
                                      deadline=deadline)
        for occ in occurrences:
            table.add(_cluster_value(key, occ, g, deadline))
    return table


def _cluster_value(key: ClusterKey, occ: Occurrence, g: SemGraph,
                   deadline=None) -> str:
    if isinstance(key, NodeFeatureKey):
        return g.node(occ.node_map[key.ident]).get(key.feature, UNDEFINED_ROW)
    if isinstance(key, EdgeLabelKey):
        return g.edge(occ.edge_map[key.ident]).label_value
    if isinstance(key, WhetherKey):
        return "yes" if _block_extensible(g, key.block, occ.node_map,
                                          deadline) else "no"
    raise TypeError(f"unknown cluster key {key!r}")  # pragma: no cover


def corpus_ratio(req: Request, corpus: Corpus, *, index=None,
                 deadline: float | None = None) -> tuple[int, int, float]:
    """(graphs with at least one occurrence, total graphs, their ratio)."""
    matching = 0
    plan = _index_plan(req, index)
    for pos, g in enumerate(corpus):
        if plan is not None and pos not in plan[1]:
            continue
        if has_match(req, g, deadline=deadline):
            matching += 1
    total = len(corpus)
    return matching, total, (matching / total if total else 0.0)
