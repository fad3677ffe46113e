"""Shared fixtures: hand-transcribed figure graphs and tiny corpora."""

from __future__ import annotations

import pytest

from semgraph.graph import SemGraph

# AMR of "You are like my fox when I first knew him." [lpp_1943.1161]
FIG1_PENMAN = """\
(r / resemble-01
  :ARG1 (y / you)
  :ARG2 (f / fox
    :poss (i / i))
  :time (k / know-02
    :ARG0 i
    :ARG1 f
    :ord (o / ordinal-entity :value 1)))
"""

# SBN of "Fifteen is not a prime number." [p52/d2324]
FIG2_SBN = """\
                  NEGATION -1
be.v.01           Theme 15 Co-Theme +1
prime_number.n.01
"""


def build_quantml_crane_graph() -> SemGraph:
    """Hand-encoded QuantML-style graph of "The crane lifted all the sand".

    Best-effort transcription (marked unverified): decorated nodes, decorated
    role edges, one scope-constraint edge between the two arguments.
    """
    g = SemGraph({"sent_id": "A10", "text": "The crane lifted all the sand",
                  "status": "unverified-hand-encoding"})
    ev = g.add_node({"predicate": "lift", "signature": "event"}, name="e1")
    crane = g.add_node({"predicate": "crane", "signature": "count",
                        "definiteness": "def", "involvement.q": "1"}, name="x1")
    sand = g.add_node({"predicate": "sand", "signature": "mass",
                       "definiteness": "def", "involvement.q": "all"}, name="x2")
    g.add_edge(ev, crane, {"label": "agent", "distributivity": "individual"})
    g.add_edge(ev, sand, {"label": "theme", "distributivity": "unspecific"})
    g.add_edge(crane, sand, {"label": "equal", "kind": "constraint"})
    return g.seal()


@pytest.fixture
def quantml_graph() -> SemGraph:
    return build_quantml_crane_graph()


def build_fig1_graph() -> SemGraph:
    """The Figure-1 AMR transcribed edge by edge, independent of the parser."""
    g = SemGraph({"sent_id": "lpp_1943.1161"})
    r = g.add_node({"concept": "resemble-01"}, name="r")
    y = g.add_node({"concept": "you"}, name="y")
    f = g.add_node({"concept": "fox"}, name="f")
    i = g.add_node({"concept": "i"}, name="i")
    k = g.add_node({"concept": "know-02"}, name="k")
    o = g.add_node({"concept": "ordinal-entity"}, name="o")
    one = g.add_node({"value": "1"}, name="c0")
    g.add_edge(r, y, "ARG1")
    g.add_edge(r, f, "ARG2")
    g.add_edge(f, i, "poss")
    g.add_edge(r, k, "time")
    g.add_edge(k, i, "ARG0")
    g.add_edge(k, f, "ARG1")
    g.add_edge(k, o, "ord")
    g.add_edge(o, one, "value")
    return g.seal()


@pytest.fixture
def fig1_graph() -> SemGraph:
    return build_fig1_graph()
