"""Simplified Box Notation reader for PMB releases.

Boxes become nodes, membership becomes ``in`` edges from each concept or
constant to its box, and connective lines chain boxes together.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from semgraph.graph import Corpus, DuplicateEdgeError, LoadIssue, SemGraph

#: WordNet sense token: lemma.pos.sense-number (prime_number.n.01).
SENSE_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_~'+-]*\.[a-z]\.\d+$")
INDEX_RE = re.compile(r"[+-]\d+$")


class SbnSyntaxError(Exception):
    """Malformed SBN line; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class IndexOutOfRangeError(SbnSyntaxError):
    """A relative index resolves outside the document."""


@dataclass(frozen=True)
class SbnArg:
    """Role argument: a signed relative index or a constant token."""

    index: int | None
    constant: str | None

    @classmethod
    def from_token(cls, token: str) -> "SbnArg":
        if INDEX_RE.match(token):
            return cls(int(token), None)
        if len(token) >= 2 and token[0] == '"' and token[-1] == '"':
            token = token[1:-1]
        return cls(None, token)


@dataclass(frozen=True)
class SenseLine:
    lineno: int
    head: str
    args: tuple[tuple[str, SbnArg], ...]


@dataclass(frozen=True)
class ConnectiveLine:
    lineno: int
    head: str
    box_index: int


def _split_tokens(line: str, lineno: int) -> list[str]:
    """Whitespace tokenization honoring quotes; '%' starts a comment."""
    tokens: list[str] = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "%":
            break
        if ch == '"':
            j = i + 1
            while j < n and line[j] != '"':
                j += 1
            if j >= n:
                raise SbnSyntaxError("unterminated string", lineno)
            tokens.append(line[i:j + 1])
            i = j + 1
            continue
        j = i
        while j < n and not line[j].isspace() and line[j] not in '%"':
            j += 1
        tokens.append(line[i:j])
        i = j
    return tokens


def classify_lines(text: str) -> tuple[list[SenseLine | ConnectiveLine],
                                       list[str]]:
    """Split a document into typed lines plus warnings for unknown shapes."""
    out: list[SenseLine | ConnectiveLine] = []
    warnings: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _split_tokens(raw, lineno)
        if not tokens:
            continue
        head = tokens[0]
        rest = tokens[1:]
        if SENSE_RE.match(head):
            if len(rest) % 2:
                raise SbnSyntaxError(
                    f"sense {head!r} has a dangling role token", lineno)
            args = tuple((rest[k], SbnArg.from_token(rest[k + 1]))
                         for k in range(0, len(rest), 2))
            out.append(SenseLine(lineno, head, args))
            continue
        if len(rest) == 1 and INDEX_RE.match(rest[0]):
            if not head.isupper():
                warnings.append(
                    f"line {lineno}: lowercase connective {head!r} accepted")
            out.append(ConnectiveLine(lineno, head, int(rest[0])))
            continue
        warnings.append(f"line {lineno}: unrecognized line shape {head!r}, skipped")
    return out, warnings


def parse_sbn(text: str, meta: dict[str, str] | None = None) -> SemGraph:
    """Parse one SBN document into a sealed graph with explicit box nodes."""
    return parse_sbn_document(text, meta)[0]


def parse_sbn_document(text: str, meta: dict[str, str] | None = None
                       ) -> tuple[SemGraph, list[str]]:
    """Like :func:`parse_sbn` but also returns unknown-line-shape warnings."""
    lines, warnings = classify_lines(text)
    g = SemGraph(meta)
    boxes = [g.add_node({"box": "B1"}, name="b1")]
    current = boxes[0]

    # pass 1: create boxes and sense nodes so role indices can look forward
    senses: list[tuple[SenseLine, str, str]] = []  # line, node id, box id
    for entry in lines:
        if isinstance(entry, ConnectiveLine):
            k = entry.box_index
            if k >= 0 or -k > len(boxes):
                raise IndexOutOfRangeError(
                    f"connective {entry.head!r} index {k:+d} has no box",
                    entry.lineno)
            source = boxes[k]
            new_box = g.add_node({"box": f"B{len(boxes) + 1}"},
                                 name=f"b{len(boxes) + 1}")
            g.add_edge(source, new_box, entry.head)
            boxes.append(new_box)
            current = new_box
        else:
            nid = g.add_node({"concept": entry.head}, name=f"s{len(senses)}")
            g.add_edge(nid, current, "in")
            senses.append((entry, nid, current))

    # pass 2: role edges; relative indices count sense lines only
    const_n = 0
    for pos, (entry, nid, box) in enumerate(senses):
        for role, arg in entry.args:
            if arg.index is not None:
                target_pos = pos + arg.index
                if not 0 <= target_pos < len(senses):
                    raise IndexOutOfRangeError(
                        f"role {role!r} index {arg.index:+d} resolves outside "
                        f"the document", entry.lineno)
                target = senses[target_pos][1]
            else:
                target = g.add_node({"value": arg.constant}, name=f"c{const_n}")
                const_n += 1
                g.add_edge(target, box, "in")
            try:
                g.add_edge(nid, target, role)
            except DuplicateEdgeError:
                pass  # repeated role in the source line; keep one
    return g.seal(), warnings


def _doc_dirs(root: Path) -> list[Path]:
    return sorted(p for p in root.glob("p*/d*") if p.is_dir())


def _pick_sbn_file(doc_dir: Path, language: str | None) -> Path | None:
    if language:
        preferred = doc_dir / f"{language}.drs.sbn"
        if preferred.exists():
            return preferred
    candidates = sorted(doc_dir.glob("*.sbn"))
    return candidates[0] if candidates else None


def parse_sbn_corpus(path: str | Path, corpus_id: str = "pmb",
                     language: str | None = None) -> Corpus:
    """Load a PMB-style directory tree (pXX/dYYYY) or a flat dir of .sbn files.

    Per-document failures are reported through ``Corpus.issues`` and the
    document is skipped; reader warnings are surfaced at level "warning".
    """
    root = Path(path)
    graphs: list[SemGraph] = []
    issues: list[LoadIssue] = []

    def load_one(sbn_file: Path, sid: str, raw_file: Path | None) -> None:
        meta = {"sent_id": sid}
        if raw_file is not None and raw_file.exists():
            meta["text"] = raw_file.read_text(encoding="utf-8").strip()
        try:
            g, warnings = parse_sbn_document(sbn_file.read_text(encoding="utf-8"),
                                             meta)
        except SbnSyntaxError as err:
            issues.append(LoadIssue(sid, str(err)))
            return
        for warning in warnings:
            issues.append(LoadIssue(sid, warning, level="warning"))
        graphs.append(g)

    if root.is_file():
        load_one(root, root.stem, None)
    else:
        doc_dirs = _doc_dirs(root)
        if doc_dirs:
            for doc in doc_dirs:
                sbn_file = _pick_sbn_file(doc, language)
                if sbn_file is None:
                    continue
                sid = f"{doc.parent.name}/{doc.name}"
                raw = doc / (f"{language}.raw" if language else
                             sbn_file.name.replace(".drs.sbn", ".raw"))
                load_one(sbn_file, sid, raw)
        else:
            for sbn_file in sorted(root.glob("*.sbn")):
                load_one(sbn_file, sbn_file.stem, None)
    return Corpus(corpus_id, graphs, issues)
