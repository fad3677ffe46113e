import json
import random

import pytest

from oracles import random_graph
from semgraph.graph import SemGraph
from semgraph.interchange import (
    SchemaError,
    read_corpus,
    read_graph,
    write_graph,
)


def graphs_equal(a: SemGraph, b: SemGraph) -> bool:
    if dict(a.meta) != dict(b.meta):
        return False
    if {nid: dict(fs) for nid, fs in a.nodes.items()} != \
            {nid: dict(fs) for nid, fs in b.nodes.items()}:
        return False
    return {e.dedup_key() for e in a.edges.values()} == \
        {e.dedup_key() for e in b.edges.values()}


class TestRoundTrip:
    def test_quantml_crane_round_trips_byte_stably(self, quantml_graph):
        once = write_graph(quantml_graph)
        twice = write_graph(read_graph(once))
        assert once == twice
        assert graphs_equal(read_graph(once), quantml_graph)

    def test_empty_graph_document_shape(self):
        doc = json.loads(write_graph(SemGraph().seal()))
        assert doc == {"meta": {}, "nodes": [], "edges": []}

    def test_fig1(self, fig1_graph):
        assert graphs_equal(read_graph(write_graph(fig1_graph)), fig1_graph)

    def test_thousand_random_graphs(self):
        rng = random.Random(1234)
        for _ in range(1000):
            g = random_graph(rng, max_nodes=12, max_edges=18,
                             meta={"sent_id": "x"})
            back = read_graph(write_graph(g))
            assert graphs_equal(g, back)
            assert write_graph(back) == write_graph(g)


class TestSchemaErrors:
    def test_unknown_node_reference(self):
        doc = {"meta": {}, "nodes": [{"id": "a", "features": {}}],
               "edges": [{"source": "a", "target": "ghost",
                          "features": {"label": "x"}}]}
        with pytest.raises(SchemaError) as err:
            read_graph(json.dumps(doc))
        assert "edges[0]" in err.value.path

    def test_duplicate_node_id(self):
        doc = {"nodes": [{"id": "a", "features": {}},
                         {"id": "a", "features": {}}], "edges": []}
        with pytest.raises(SchemaError) as err:
            read_graph(json.dumps(doc))
        assert "nodes[1]" in err.value.path

    def test_missing_label_feature(self):
        doc = {"nodes": [{"id": "a", "features": {}}],
               "edges": [{"source": "a", "target": "a", "features": {}}]}
        with pytest.raises(SchemaError) as err:
            read_graph(json.dumps(doc))
        assert "label" in str(err.value)

    def test_non_string_feature(self):
        doc = {"nodes": [{"id": "a", "features": {"n": 3}}], "edges": []}
        with pytest.raises(SchemaError) as err:
            read_graph(json.dumps(doc))
        assert "features" in err.value.path

    def test_not_json(self):
        with pytest.raises(SchemaError):
            read_graph("not json {")

    def test_unknown_top_level_key(self):
        with pytest.raises(SchemaError):
            read_graph('{"nodes": [], "edges": [], "bogus": 1}')


class TestReadCorpus:
    def test_directory_of_documents(self, tmp_path, fig1_graph, quantml_graph):
        (tmp_path / "a.json").write_text(write_graph(fig1_graph))
        (tmp_path / "b.json").write_text(write_graph(quantml_graph))
        corpus = read_corpus(tmp_path, "handmade")
        assert len(corpus) == 2
        assert corpus.get("A10").text == "The crane lifted all the sand"

    def test_sent_id_falls_back_to_file_stem(self, tmp_path):
        (tmp_path / "doc1.json").write_text(
            '{"meta": {}, "nodes": [], "edges": []}')
        corpus = read_corpus(tmp_path)
        assert [g.sent_id for g in corpus] == ["doc1"]

    def test_array_file(self, tmp_path, fig1_graph):
        docs = [json.loads(write_graph(fig1_graph)),
                {"meta": {}, "nodes": [], "edges": []}]
        f = tmp_path / "corpus.json"
        f.write_text(json.dumps(docs))
        corpus = read_corpus(f)
        assert [g.sent_id for g in corpus] == ["lpp_1943.1161", "2"]

    def test_bad_document_reported(self, tmp_path):
        (tmp_path / "bad.json").write_text('{"nodes": 3}')
        (tmp_path / "good.json").write_text('{"nodes": [], "edges": []}')
        corpus = read_corpus(tmp_path)
        assert len(corpus) == 1
        assert corpus.issues and corpus.issues[0].sent_id == "bad"
