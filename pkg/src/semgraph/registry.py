"""Corpus discovery and loading, plus the feature-value index the matcher
uses to accelerate equality queries.

The configuration is an INI file, one section per corpus::

    [little_prince]
    format = penman
    path = corpora/amr-bank-struct-v3.0.txt
    language = en

Relative paths resolve against the config file's directory.  The config
path comes from the CLI flag or the ``SEMGRAPH_CONFIG`` environment variable.
"""

from __future__ import annotations

import configparser
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from semgraph import interchange, penman, sbn
from semgraph.graph import Corpus

FORMATS = ("penman", "sbn", "interchange")
CONFIG_ENV = "SEMGRAPH_CONFIG"
LISTEN_ENV = "SEMGRAPH_LISTEN"


class ConfigError(Exception):
    """Bad corpus configuration (unknown format, missing path, duplicates)."""


class UnknownCorpusError(Exception):
    """A corpus id that is not in the registry."""


@dataclass(frozen=True)
class CorpusSpec:
    id: str
    format: str
    path: str
    language: str | None = None


def read_config(path: str | Path) -> list[CorpusSpec]:
    """Parse and validate the corpus configuration file."""
    config_path = Path(path)
    if not config_path.exists():
        raise ConfigError(f"config file not found: {config_path}")
    parser = configparser.ConfigParser()
    try:
        parser.read_string(config_path.read_text(encoding="utf-8"))
    except configparser.DuplicateSectionError as err:
        raise ConfigError(f"duplicate corpus id {err.section!r}") from None
    except configparser.Error as err:
        raise ConfigError(f"bad config: {err}") from None
    specs = []
    for section in parser.sections():
        fmt = parser.get(section, "format", fallback=None)
        if fmt not in FORMATS:
            raise ConfigError(
                f"corpus {section!r}: format must be one of {FORMATS}, "
                f"got {fmt!r}")
        raw_path = parser.get(section, "path", fallback=None)
        if not raw_path:
            raise ConfigError(f"corpus {section!r}: missing path")
        resolved = (config_path.parent / raw_path).resolve() \
            if not Path(raw_path).is_absolute() else Path(raw_path)
        if not resolved.exists():
            raise ConfigError(f"corpus {section!r}: path does not exist: "
                              f"{resolved}")
        specs.append(CorpusSpec(
            id=section, format=fmt, path=str(resolved),
            language=parser.get(section, "language", fallback=None)))
    return specs


class FeatureIndex:
    """Inverted index over exact (feature, value) pairs.

    Postings are ``(graph position, node id)`` pairs in corpus order; regex
    and presence constraints scan instead of using the index.
    """

    def __init__(self, corpus: Corpus):
        self._postings: dict[tuple[str, str], list[tuple[int, str]]] = {}
        for pos, g in enumerate(corpus):
            for nid, fs in g.nodes.items():
                for feature, value in fs.items():
                    self._postings.setdefault((feature, value), []) \
                        .append((pos, nid))

    def postings(self, feature: str, value: str) -> list[tuple[int, str]]:
        return self._postings.get((feature, value), [])

    def pairs(self) -> int:
        return len(self._postings)


@dataclass(frozen=True)
class CorpusStats:
    graphs: int
    nodes: int
    edges: int
    label_histogram: tuple[tuple[str, int], ...]  # descending, ties by label


def compute_stats(corpus: Corpus) -> CorpusStats:
    nodes = edges = 0
    hist: Counter[str] = Counter()
    for g in corpus:
        nodes += len(g.nodes)
        edges += len(g.edges)
        for edge in g.edges.values():
            hist[edge.label_value] += 1
    ordered = tuple(sorted(hist.items(), key=lambda kv: (-kv[1], kv[0])))
    return CorpusStats(len(corpus), nodes, edges, ordered)


@dataclass
class LoadedCorpus:
    spec: CorpusSpec
    corpus: Corpus
    index: FeatureIndex

    @property
    def id(self) -> str:
        return self.spec.id


def load_corpus(spec: CorpusSpec) -> Corpus:
    if spec.format == "penman":
        text = Path(spec.path).read_text(encoding="utf-8")
        return penman.parse_penman_corpus(text, spec.id)
    if spec.format == "sbn":
        return sbn.parse_sbn_corpus(spec.path, spec.id, language=spec.language)
    return interchange.read_corpus(spec.path, spec.id)


@dataclass
class Registry:
    """Immutable once built; reload by building a fresh registry."""

    entries: dict[str, LoadedCorpus] = field(default_factory=dict)
    failures: dict[str, str] = field(default_factory=dict)

    @classmethod
    def load_all(cls, config: str | Path | list[CorpusSpec]) -> "Registry":
        """Load every configured corpus; a corpus that fails to load is
        recorded under ``failures`` while healthy ones are still served."""
        specs = config if isinstance(config, list) else read_config(config)
        seen = set()
        for spec in specs:
            if spec.id in seen:
                raise ConfigError(f"duplicate corpus id {spec.id!r}")
            seen.add(spec.id)
        registry = cls()
        for spec in specs:
            try:
                corpus = load_corpus(spec)
            except Exception as err:  # data error: keep serving the others
                registry.failures[spec.id] = str(err)
                continue
            registry.entries[spec.id] = LoadedCorpus(
                spec, corpus, FeatureIndex(corpus))
        return registry

    def get(self, corpus_id: str) -> LoadedCorpus:
        try:
            return self.entries[corpus_id]
        except KeyError:
            raise UnknownCorpusError(f"unknown corpus {corpus_id!r}") from None

    def ids(self) -> list[str]:
        return list(self.entries)

    def stats(self, corpus_id: str) -> CorpusStats:
        return compute_stats(self.get(corpus_id).corpus)
