import random
import time

import pytest

from conftest import FIG2_SBN
from oracles import oracle_match, random_graph, random_request
from semgraph.graph import Corpus, SemGraph
from semgraph.matching import (
    ClusterTable,
    MatchBudgetExceeded,
    Occurrence,
    UNDEFINED_ROW,
    cluster,
    corpus_ratio,
    count_corpus,
    has_match,
    match_corpus,
    match_graph,
)
from semgraph.penman import parse_penman
from semgraph.query import parse_cluster_key, parse_request, print_request
from semgraph.sbn import parse_sbn

SAY_FULL = ('pattern { N [concept = "say-01"] }\n'
            "without { N -[ARG0]-> A0 }\n"
            "without { A0 -[ARG0-of]-> N }\n")
SAY_ONE_WITHOUT = ('pattern { N [concept = "say-01"] }\n'
                   "without { N -[ARG0]-> A0 }\n")


def build_say_corpus():
    """Five sentences around say-01 argument realization.

    s1: say with ARG0          s2: say without any sayer
    s3: sayer via inverse ARG0-of   s4: no say at all
    s5: say with an ARG0 self-loop (fresh A0 cannot alias N)
    """
    texts = {
        "s1": '(s / say-01 :ARG0 (h / he) :ARG1 (t / thing))',
        "s2": '(s / say-01 :ARG1 (t / thing))',
        "s3": '(h / he :ARG0-of (s / say-01))',
        "s4": '(r / run-02 :ARG0 (d / dog))',
    }
    graphs = [parse_penman(text, {"sent_id": sid})
              for sid, text in sorted(texts.items())]
    g5 = SemGraph({"sent_id": "s5"})
    s = g5.add_node({"concept": "say-01"}, name="s")
    g5.add_edge(s, s, "ARG0")
    graphs.append(g5.seal())
    return Corpus("say_demo", graphs)


class TestSayScenario:
    def test_base_pattern_counts_all_says(self):
        corpus = build_say_corpus()
        req = parse_request('pattern { N [concept = "say-01"] }')
        assert count_corpus(req, corpus) == 4

    def test_full_request(self):
        corpus = build_say_corpus()
        req = parse_request(SAY_FULL)
        hits = sorted(o.sent_id for o in match_corpus(req, corpus))
        # s1 blocked by ARG0, s3 blocked by the inverse edge,
        # s5 survives because the fresh A0 cannot alias N itself
        assert hits == ["s2", "s5"]

    def test_one_without_variant_overcounts(self):
        corpus = build_say_corpus()
        req = parse_request(SAY_ONE_WITHOUT)
        hits = sorted(o.sent_id for o in match_corpus(req, corpus))
        assert hits == ["s2", "s3", "s5"]

    def test_occurrence_contents(self):
        corpus = build_say_corpus()
        req = parse_request(SAY_FULL)
        occ = next(match_corpus(req, corpus))
        assert occ.corpus_id == "say_demo"
        assert occ.node_map == {"N": "s"}
        assert occ.edge_map == {}


class TestWildcards:
    def test_wildcard_target_existential(self, fig1_graph):
        req = parse_request("pattern { M -[poss]-> * }")
        occs = match_graph(req, fig1_graph)
        assert [o.node_map for o in occs] == [{"M": "f"}]

    def test_wildcard_may_alias_named_nodes(self):
        g = SemGraph()
        m = g.add_node({"concept": "m"}, name="m")
        g.add_edge(m, m, "wiki")
        g.seal()
        req = parse_request("pattern { M -[wiki]-> * }")
        assert [o.node_map for o in match_graph(req, g)] == [{"M": "m"}]
        # ... and therefore the without blocks the name match
        g2 = SemGraph()
        m2 = g2.add_node({}, name="m")
        n2 = g2.add_node({}, name="n")
        g2.add_edge(m2, n2, "name")
        g2.add_edge(m2, m2, "wiki")
        g2.seal()
        blocked = parse_request(
            "pattern { M -[name]-> N }\nwithout { M -[wiki]-> * }")
        assert match_graph(blocked, g2) == []

    def test_two_wildcards(self, fig1_graph):
        req = parse_request("pattern { * -[value]-> * }")
        occs = match_graph(req, fig1_graph)
        assert len(occs) == 1
        assert occs[0].node_map == {}


class TestNamedEdges:
    def test_named_edge_distinguishes_parallel_labels(self):
        g = SemGraph()
        a = g.add_node({"concept": "a"}, name="a")
        b = g.add_node({"concept": "b"}, name="b")
        g.add_edge(a, b, "op1")
        g.add_edge(a, b, "op2")
        g.seal()
        named = parse_request("pattern { e: M -> N }")
        assert len(match_graph(named, g)) == 2
        anonymous = parse_request("pattern { M [concept]; N [concept]; M -> N }")
        assert len(match_graph(anonymous, g)) == 1

    def test_edge_injectivity_within_pattern(self):
        g = SemGraph()
        p = g.add_node({}, name="p")
        e = g.add_node({}, name="e")
        g.add_edge(p, e, "Agent")
        g.seal()
        # two pattern edges cannot share the single Agent edge
        req = parse_request("pattern { P -[Agent]-> E; P -[Agent]-> E }")
        assert match_graph(req, g) == []


class TestGlobals:
    def test_empty_graph_is_acyclic_yields_empty_occurrence(self):
        g = SemGraph().seal()
        req = parse_request("global { is_acyclic }")
        occs = match_graph(req, g)
        assert occs == [Occurrence(nodes=(), edges=(), sent_id=None)]

    def test_empty_graph_is_cyclic_yields_nothing(self):
        g = SemGraph().seal()
        req = parse_request("global { is_cyclic }")
        assert match_graph(req, g) == []

    def test_global_filters_before_pattern(self, fig1_graph):
        req = parse_request('pattern { N [concept = "say-01"] }\n'
                            "global { is_cyclic }")
        assert match_graph(req, fig1_graph) == []

    def test_globals_with_withouts(self):
        g = SemGraph()
        a = g.add_node({}, name="a")
        g.add_edge(a, a, "loop")
        g.seal()
        req = parse_request("without { X -[loop]-> Y }\nglobal { is_cyclic }")
        assert match_graph(req, g) == [Occurrence(nodes=(), edges=())]
        req2 = parse_request("without { X -[loop]-> X }\nglobal { is_cyclic }")
        assert match_graph(req2, g) == []


class TestSbnPatterns:
    def test_nested_negation_chain(self):
        text = ("person.n.01\n"
                "NEGATION -1\n"
                "NEGATION -1\n"
                "leave.v.01 Agent -1\n")
        g = parse_sbn(text, {"sent_id": "p18/d1454"})
        req = parse_request(
            "pattern { B1 -[NEGATION]-> B2; B2 -[NEGATION]-> B3 }")
        occs = match_graph(req, g)
        assert len(occs) == 1
        assert occs[0].node_map == {"B1": "b1", "B2": "b2", "B3": "b3"}

    def test_single_negation_no_chain(self):
        g = parse_sbn(FIG2_SBN)
        req = parse_request(
            "pattern { B1 -[NEGATION]-> B2; B2 -[NEGATION]-> B3 }")
        assert match_graph(req, g) == []

    def test_agent_equals_patient(self):
        text = ("male.n.02\n"
                "seduce.v.01 Agent -1 Patient -1\n")
        g = parse_sbn(text, {"sent_id": "p62/d1397"})
        req = parse_request(
            "pattern { P -[Agent]-> E; P -[Patient]-> E; }")
        occs = match_graph(req, g)
        assert len(occs) == 1


class TestClustering:
    def test_node_feature_cluster(self):
        texts = ['(m / make-02)', '(m / make-02)', '(m / make-01)']
        graphs = [parse_penman(t, {"sent_id": f"s{i}"})
                  for i, t in enumerate(texts)]
        corpus = Corpus("demo", graphs)
        req = parse_request('pattern { N [concept = re"make-.*"] }')
        table = cluster(req, parse_cluster_key("N.concept", req), corpus)
        assert table.rows == {"make-02": 2, "make-01": 1}
        assert table.total == 3
        assert table.sorted_rows() == [("make-02", 2), ("make-01", 1)]

    def test_regex_is_anchored_full_match(self):
        graphs = [parse_penman(t, {"sent_id": f"s{i}"}) for i, t in enumerate(
            ['(m / make-02)', '(r / remake-01)', '(m / make-up-07)'])]
        corpus = Corpus("demo", graphs)
        req = parse_request('pattern { N [concept = re"make-.*"] }')
        table = cluster(req, parse_cluster_key("N.concept", req), corpus)
        assert table.rows == {"make-02": 1, "make-up-07": 1}

    def test_edge_label_cluster_fig1(self, fig1_graph):
        corpus = Corpus("fig1", [fig1_graph])
        req = parse_request("pattern { M [concept]; N [concept]; e: M -> N }")
        table = cluster(req, parse_cluster_key("e.label", req), corpus)
        # hand count over Figure 1: value edge excluded (target is a value)
        assert table.rows == {"ARG1": 2, "ARG0": 1, "ARG2": 1, "ord": 1,
                              "poss": 1, "time": 1}

    def test_whether_cluster(self):
        texts = ['(a / and :op1 (x / x1) :op2 (y / y1))', '(a / and)',
                 '(a / and :op2 (y / y1))']
        graphs = [parse_penman(t, {"sent_id": f"s{i}"})
                  for i, t in enumerate(texts)]
        corpus = Corpus("demo", graphs)
        req = parse_request('pattern { N [concept = "and"] }')
        key = parse_cluster_key("whether { N -[op1]-> X }", req)
        table = cluster(req, key, corpus)
        assert table.rows == {"yes": 1, "no": 2}

    def test_whether_unsatisfiable_all_no(self):
        corpus = Corpus("demo", [parse_penman('(a / and)', {"sent_id": "s"})])
        req = parse_request('pattern { N [concept = "and"] }')
        key = parse_cluster_key('whether { N -[nope]-> X }', req)
        assert cluster(req, key, corpus).rows == {"no": 1}

    def test_missing_feature_goes_to_undefined_row(self):
        g = SemGraph({"sent_id": "s"})
        g.add_node({"concept": "x"})
        g.add_node({"value": "3"})
        corpus = Corpus("demo", [g.seal()])
        req = parse_request("pattern { N [] }")
        table = cluster(req, parse_cluster_key("N.concept", req), corpus)
        assert table.rows == {"x": 1, UNDEFINED_ROW: 1}


class TestCorpusOps:
    def test_match_corpus_order(self):
        corpus = build_say_corpus()
        req = parse_request('pattern { N [concept = "say-01"] }')
        assert [o.sent_id for o in match_corpus(req, corpus)] == \
            ["s1", "s2", "s3", "s5"]

    def test_empty_corpus(self):
        req = parse_request("pattern { N [] }")
        assert list(match_corpus(req, Corpus("empty"))) == []

    def test_corpus_ratio(self):
        cyclic = SemGraph({"sent_id": "c"})
        a = cyclic.add_node({})
        b = cyclic.add_node({})
        cyclic.add_edge(a, b, "x")
        cyclic.add_edge(b, a, "x")
        acyclic = SemGraph({"sent_id": "a"})
        acyclic.add_node({})
        corpus = Corpus("demo", [cyclic.seal(), acyclic.seal()])
        req = parse_request("global { is_cyclic }")
        matching, total, ratio = corpus_ratio(req, corpus)
        assert (matching, total) == (1, 2)
        assert ratio == pytest.approx(0.5)

    def test_determinism(self):
        corpus = build_say_corpus()
        req = parse_request(SAY_FULL)
        first = list(match_corpus(req, corpus))
        second = list(match_corpus(req, corpus))
        assert first == second


class TestBudget:
    def test_deadline_aborts(self):
        g = SemGraph()
        ids = [g.add_node({}) for _ in range(14)]
        for a in ids:
            for b in ids:
                if a != b:
                    g.add_edge(a, b, "x")
        g.seal()
        req = parse_request("pattern { A -> B; B -> C; C -> D }")
        with pytest.raises(MatchBudgetExceeded):
            match_graph(req, g, deadline=time.monotonic() - 1)


class TestOracleEquivalence:
    def test_thousand_seeded_instances(self):
        rng = random.Random(0xC0FFEE)
        start = time.monotonic()
        for case in range(1000):
            g = random_graph(rng, max_nodes=8, max_edges=12,
                             meta={"sent_id": f"g{case}"})
            req = random_request(rng)
            # round-trip through the printer ties the parser in as well
            req = parse_request(print_request(req))
            expected = oracle_match(req, g)
            got = {(occ.nodes, occ.edges) for occ in match_graph(req, g)}
            assert got == expected, (
                f"case {case}: engine {got} != oracle {expected}\n"
                f"request:\n{print_request(req)}")
        assert time.monotonic() - start < 60

    def test_monotonicity_withouts_never_add(self):
        rng = random.Random(99)
        from semgraph.query import Request
        for case in range(200):
            g = random_graph(rng, max_nodes=8, max_edges=12,
                             meta={"sent_id": f"g{case}"})
            req = random_request(rng)
            base_only = Request(req.base, (), req.globals_)
            assert len(match_graph(req, g)) <= len(match_graph(base_only, g))

    def test_whether_partitions_exactly(self):
        rng = random.Random(41)
        corpus = Corpus("demo", [
            random_graph(rng, meta={"sent_id": f"s{i}"}) for i in range(30)])
        req = parse_request("pattern { N [concept] }")
        total = count_corpus(req, corpus)
        for sub in ("whether { N -[ARG0]-> X }", "whether { N -[in]-> * }"):
            table = cluster(req, parse_cluster_key(sub, req), corpus)
            assert table.rows.get("yes", 0) + table.rows.get("no", 0) == total

    def test_injectivity_of_results(self):
        rng = random.Random(17)
        for case in range(100):
            g = random_graph(rng, meta={"sent_id": f"g{case}"})
            req = random_request(rng)
            for occ in match_graph(req, g):
                ids = [nid for _, nid in occ.nodes]
                assert len(ids) == len(set(ids))
                eids = [eid for _, eid in occ.edges]
                assert len(eids) == len(set(eids))
