#!/usr/bin/env python3
"""Record real HTTP service responses as JSON fixtures for the frontend tests.

The demo corpus mirrors the say-01 Sayer-realization study: exactly six
sentences where the predicate lacks its ARG0 both directly and inversely,
so the recorded search response carries total = 6.

Usage: python3 scripts/record_ui_fixtures.py [target-dir]
       (default: frontend/tests/fixtures)
"""

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from semgraph.graph import Corpus
from semgraph.penman import parse_penman
from semgraph.registry import CorpusSpec, FeatureIndex, LoadedCorpus, Registry
from semgraph.service import create_app

SAY_FULL = ('pattern { N [concept = "say-01"] }\n'
            "without { N -[ARG0]-> A0 }\n"
            "without { A0 -[ARG0-of]-> N }\n")

SENTENCES = {
    # six sayerless say-01s, the ones the walkthrough must find
    "ui.1": ('(s / say-01 :ARG1 (t / truth))', "The truth was said."),
    "ui.2": ('(s / say-01 :ARG1 (w / word) :time (d / day))',
             "A word was said that day."),
    "ui.3": ('(s / say-01 :ARG2 (y / you))', "It was said to you."),
    "ui.4": ('(s / say-01 :ARG1 (n / nothing))', "Nothing was said."),
    "ui.5": ('(s / say-01 :manner (q / quiet-04))', "It was said quietly."),
    "ui.6": ('(s / say-01 :ARG1 (s2 / story))', "A story was said."),
    # distractors: realized sayers and unrelated predicates
    "ui.7": ('(s / say-01 :ARG0 (h / he) :ARG1 (t / thing))', "He said it."),
    "ui.8": ('(h / he :ARG0-of (s / say-01))', "He was the one saying."),
    "ui.9": ('(m / make-02 :ARG0 (s / she))', "She made it."),
    "ui.10": ('(m / make-01 :ARG0 (h / he))', "He made one."),
    "ui.11": ('(m / make-05 :ARG0 (w / we))', "We made it happen."),
}


def build_registry() -> Registry:
    graphs = [parse_penman(text, {"sent_id": sid, "text": sentence})
              for sid, (text, sentence) in SENTENCES.items()]
    corpus = Corpus("ui_demo", graphs)
    registry = Registry()
    registry.entries["ui_demo"] = LoadedCorpus(
        CorpusSpec("ui_demo", "penman", "<recorded>", "en"),
        corpus, FeatureIndex(corpus))
    return registry


def main() -> int:
    target = Path(sys.argv[1] if len(sys.argv) > 1
                  else "frontend/tests/fixtures")
    target.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app(build_registry()))

    def record(name, response):
        payload = {"status": response.status_code, "body": response.json()}
        (target / name).write_text(json.dumps(payload, indent=2) + "\n",
                                   encoding="utf-8")
        print(f"wrote {target / name} (status {response.status_code})")

    record("corpora.json", client.get("/corpora"))
    record("search_say.json",
           client.post("/corpora/ui_demo/search",
                       json={"request": SAY_FULL, "limit": 50, "offset": 0}))
    record("search_zero.json",
           client.post("/corpora/ui_demo/search",
                       json={"request": 'pattern { N [concept = "zz"] }',
                             "limit": 50, "offset": 0}))
    record("search_syntax_error.json",
           client.post("/corpora/ui_demo/search",
                       json={"request": "pattern { N [concept = ] }",
                             "limit": 50, "offset": 0}))
    record("search_cluster.json",
           client.post("/corpora/ui_demo/search",
                       json={"request": 'pattern { N [concept = re"make-.*"] }',
                             "cluster": "N.concept",
                             "limit": 50, "offset": 0}))
    record("graph_interchange.json",
           client.get("/corpora/ui_demo/graphs/ui.1"))
    # what the UI sends after a click on the make-05 cluster row
    refined = ('pattern { N [concept = re"make-.*"]; }\n'
               'pattern { N [concept = "make-05"] }\n')
    record("search_cluster_refined.json",
           client.post("/corpora/ui_demo/search",
                       json={"request": refined, "limit": 50, "offset": 0}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
