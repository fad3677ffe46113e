"""Brute-force reference implementations the real code is checked against.

Everything here favors obviousness over speed: exhaustive enumeration, no
indexes, no pruning beyond feasibility.  Keep it that way.
"""

from __future__ import annotations

import itertools
import random

from semgraph.graph import SemGraph


def oracle_is_cyclic(g: SemGraph) -> bool:
    """Cycle test via transitive closure: cyclic iff some node reaches itself."""
    nodes = list(g.nodes)
    reach = {n: {m for _, m in g.successors(n)} for n in nodes}
    changed = True
    while changed:
        changed = False
        for n in nodes:
            extra = set()
            for m in reach[n]:
                extra |= reach[m]
            if not extra <= reach[n]:
                reach[n] |= extra
                changed = True
    return any(n in reach[n] for n in nodes)


def random_graph(rng: random.Random, max_nodes: int = 8, max_edges: int = 12,
                 features: tuple[str, ...] = ("concept", "value", "kind"),
                 values: tuple[str, ...] = ("a", "b", "c", "d"),
                 labels: tuple[str, ...] = ("ARG0", "ARG1", "in", "op1"),
                 meta: dict | None = None) -> SemGraph:
    """A random labeled digraph within the given size bounds."""
    g = SemGraph(meta or {})
    n_nodes = rng.randint(0, max_nodes)
    ids = []
    for _ in range(n_nodes):
        fs = {}
        for feat in features:
            if rng.random() < 0.5:
                fs[feat] = rng.choice(values)
        ids.append(g.add_node(fs))
    n_edges = rng.randint(0, max_edges) if ids else 0
    for _ in range(n_edges):
        src = rng.choice(ids)
        tgt = rng.choice(ids)
        label = rng.choice(labels)
        try:
            g.add_edge(src, tgt, label)
        except Exception:
            pass  # duplicate triple; just try fewer edges
    return g.seal()


def check_dot(text: str) -> tuple[int, int]:
    """Validate the DOT subset we emit; returns (node stmts, edge stmts).

    Grammar: ``digraph ID? { stmt* }`` where stmt is a quoted node id or a
    quoted-id ``->`` quoted-id pair, both followed by an attribute list and
    a semicolon.  Raises ValueError on anything else.
    """
    import re as _re

    token_re = _re.compile(
        r'\s*(?:("(?:[^"\\]|\\.)*")|(->|[{}\[\],;=])|([A-Za-z_][\w]*))')
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].isspace() or pos == len(text):
            break
        m = token_re.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"lex error at {pos}: {text[pos:pos + 20]!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()

    def expect(tok):
        if not tokens or tokens[0] != tok:
            raise ValueError(f"expected {tok!r}, got {tokens[:3]!r}")
        tokens.pop(0)

    def take_quoted():
        if not tokens or not tokens[0].startswith('"'):
            raise ValueError(f"expected quoted id, got {tokens[:3]!r}")
        return tokens.pop(0)

    def attr_list():
        expect("[")
        while True:
            if not tokens:
                raise ValueError("unterminated attr list")
            if tokens[0] == "]":
                tokens.pop(0)
                return
            name = tokens.pop(0)
            if not name.isidentifier():
                raise ValueError(f"bad attr name {name!r}")
            expect("=")
            take_quoted()
            if tokens and tokens[0] == ",":
                tokens.pop(0)

    expect("digraph")
    if tokens and tokens[0] != "{":
        tokens.pop(0)  # graph name
    expect("{")
    n_nodes = n_edges = 0
    while tokens and tokens[0] != "}":
        take_quoted()
        if tokens and tokens[0] == "->":
            tokens.pop(0)
            take_quoted()
            attr_list()
            n_edges += 1
        else:
            attr_list()
            n_nodes += 1
        expect(";")
    expect("}")
    if tokens:
        raise ValueError(f"trailing tokens {tokens!r}")
    return n_nodes, n_edges


def random_request(rng: random.Random):
    """A random request within the oracle-equivalence size bounds:
    <= 3 named nodes, <= 3 edges, <= 1 without."""
    from semgraph.query import (
        EdgeConstraint,
        FeatureCompare,
        FeatureEq,
        FeatureNeq,
        FeaturePresent,
        FeatureRegex,
        NodeConstraint,
        PatternBlock,
        Request,
    )

    features = ("concept", "value", "kind")
    values = ("a", "b", "c", "d")
    labels = ("ARG0", "ARG1", "in", "op1")

    def random_clauses():
        clauses = []
        for _ in range(rng.randint(0, 2)):
            feat = rng.choice(features)
            roll = rng.random()
            if roll < 0.4:
                clauses.append(FeatureEq(feat, rng.choice(values)))
            elif roll < 0.6:
                clauses.append(FeaturePresent(feat))
            elif roll < 0.8:
                clauses.append(FeatureNeq(feat, rng.choice(values)))
            else:
                clauses.append(FeatureRegex(feat, rng.choice(
                    ("a|b", "[cd]", "a.*", "."))))
        return tuple(clauses)

    def random_block(idents, fresh_pool, n_edges, named_edges=False):
        nodes = {i: NodeConstraint(i, random_clauses()) for i in idents}
        edges = []
        pool = list(idents) + fresh_pool
        for k in range(n_edges):
            src = None if rng.random() < 0.15 else rng.choice(pool)
            tgt = None if rng.random() < 0.15 else rng.choice(pool)
            if rng.random() < 0.3:
                label_set = None
            else:
                label_set = tuple(sorted(rng.sample(
                    labels, rng.randint(1, 2))))
            name = f"e{k}" if named_edges and rng.random() < 0.4 else None
            edges.append(EdgeConstraint(name, src, tgt, label_set))
            for endpoint in (src, tgt):
                if endpoint is not None and endpoint not in nodes:
                    nodes[endpoint] = NodeConstraint(endpoint)
        compares = ()
        if len(nodes) >= 2 and rng.random() < 0.2:
            left, right = rng.sample(sorted(nodes), 2)
            compares = (FeatureCompare(left, rng.choice(features),
                                       right, rng.choice(features)),)
        return PatternBlock(nodes, tuple(edges), compares)

    base_idents = [f"N{i}" for i in range(rng.randint(1, 3))]
    base = random_block(base_idents, [], rng.randint(0, 3), named_edges=True)
    withouts = []
    if rng.random() < 0.5:
        shared = [i for i in base_idents if rng.random() < 0.5]
        wo = random_block(shared, ["A0", "A1"], rng.randint(1, 2))
        if not wo.is_empty():
            withouts.append(wo)
    globals_ = ()
    if rng.random() < 0.15:
        globals_ = (rng.choice(("is_cyclic", "is_acyclic")),)
    return Request(base, tuple(withouts), globals_)


def oracle_match(req, g: SemGraph) -> set:
    """All occurrences of ``req`` in ``g`` by exhaustive enumeration.

    Returns a set of ``(node_items, edge_items)`` pairs where each element is
    a sorted tuple of ``(pattern ident, graph id)`` — the same identity the
    engine's Occurrence carries.  Semantics mirrored from the engine's
    contract, mechanism independent: plain permutations, no indexes.
    """
    from semgraph.query import GLOBAL_IS_ACYCLIC, GLOBAL_IS_CYCLIC

    for glob in req.globals_:
        cyclic = oracle_is_cyclic(g)
        if glob == GLOBAL_IS_CYCLIC and not cyclic:
            return set()
        if glob == GLOBAL_IS_ACYCLIC and cyclic:
            return set()

    found = set()
    for node_map, edge_maps in _oracle_block_solutions(g, req.base, {}, frozenset()):
        survives = True
        for wo in req.withouts:
            if _oracle_block_satisfiable(g, wo, node_map,
                                         frozenset(node_map.values())):
                survives = False
                break
        if not survives:
            continue
        named = {i for i, c in req.base.nodes.items()}
        node_items = tuple(sorted((i, node_map[i]) for i in named))
        for em in edge_maps:
            found.add((node_items, tuple(sorted(em.items()))))
    return found


def _node_ok(g, clauses, nid):
    import re as _re

    fs = g.node(nid)
    for cl in clauses:
        kind = type(cl).__name__
        if kind == "FeaturePresent":
            if cl.name not in fs:
                return False
        elif kind == "FeatureEq":
            if fs.get(cl.name) != cl.value:
                return False
        elif kind == "FeatureNeq":
            if cl.name not in fs or fs[cl.name] == cl.value:
                return False
        elif kind == "FeatureRegex":
            if cl.name not in fs or not _re.fullmatch(cl.pattern, fs[cl.name]):
                return False
        else:
            raise AssertionError(kind)
    return True


def _edge_ok(g, decl, eid, node_map):
    edge = g.edge(eid)
    if decl.src is not None and node_map[decl.src] != edge.source:
        return False
    if decl.tgt is not None and node_map[decl.tgt] != edge.target:
        return False
    if decl.labels is not None and edge.label_value not in decl.labels:
        return False
    return True


def _oracle_block_solutions(g, block, pre_bound, forbidden):
    """Yield ``(node_map, [named edge maps])`` for every solution of a block.

    ``pre_bound`` fixes shared idents; ``forbidden`` is the set of graph nodes
    fresh idents may not use (base image, for without/whether extensions).
    """
    fresh = [i for i in block.nodes if i not in pre_bound]
    graph_nodes = list(g.nodes)
    all_edges = list(g.edges)
    decls = list(block.edges)

    for combo in itertools.permutations(graph_nodes, len(fresh)):
        node_map = dict(pre_bound)
        node_map.update(zip(fresh, combo))
        if any(node_map[i] in forbidden for i in fresh):
            continue
        if not all(_node_ok(g, block.nodes[i].clauses, node_map[i])
                   for i in block.nodes):
            continue
        ok_compare = True
        for cmp_ in block.compares:
            left = g.node(node_map[cmp_.left_ident]).get(cmp_.left_feature)
            right = g.node(node_map[cmp_.right_ident]).get(cmp_.right_feature)
            if left is None or right is None or left != right:
                ok_compare = False
                break
        if not ok_compare:
            continue
        named_edge_maps = set()
        for edge_combo in itertools.permutations(all_edges, len(decls)):
            if all(_edge_ok(g, d, e, node_map)
                   for d, e in zip(decls, edge_combo)):
                em = tuple(sorted((d.ident, e) for d, e in zip(decls, edge_combo)
                                  if d.ident is not None))
                named_edge_maps.add(em)
        if decls and not named_edge_maps:
            continue
        if not decls:
            named_edge_maps = {()}
        yield node_map, [dict(em) for em in named_edge_maps]


def _oracle_block_satisfiable(g, block, pre_bound, forbidden):
    shared = {i: pre_bound[i] for i in block.nodes if i in pre_bound}
    for _ in _oracle_block_solutions(g, block, shared, forbidden):
        return True
    return False
