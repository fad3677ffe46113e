"""Penman-notation reader for AMR corpora.

Turns one parenthesized expression into a graph (concepts become ``concept``
nodes, constants become ``value`` nodes, roles become edges, re-entrant
variables merge) and multi-document ``# ::``-headed files into corpora.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from semgraph.graph import Corpus, DuplicateEdgeError, LoadIssue, SemGraph


class PenmanSyntaxError(Exception):
    """Malformed Penman text; carries a 1-based line/column position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class DanglingVariableError(PenmanSyntaxError):
    """Reserved for symbols that must be variables but are never defined.

    Unbound bare symbols in argument position denote constants, so single
    expressions never raise this; it exists for callers that pre-bind.
    """


class TokenKind(Enum):
    LPAREN = "("
    RPAREN = ")"
    SLASH = "/"
    ROLE = "role"
    SYMBOL = "symbol"
    STRING = "string"
    END = "end"


@dataclass(frozen=True)
class PenmanToken:
    kind: TokenKind
    text: str
    line: int
    col: int


# ISI alignment suffixes (~e.5,6 / ~3) are metadata we do not represent.
_ALIGNMENT = re.compile(r"~[a-zA-Z]*\.?\d+(,\d+)*$")
_ALIGNMENT_AHEAD = re.compile(r"~[a-zA-Z]*\.?\d+(,\d+)*")
_SYMBOL_CHARS = re.compile(r"[^\s()/:\"]+")


def tokenize(text: str) -> Iterator[PenmanToken]:
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_line, start_col = line, col
        if ch in "()/":
            kind = {"(": TokenKind.LPAREN, ")": TokenKind.RPAREN,
                    "/": TokenKind.SLASH}[ch]
            yield PenmanToken(kind, ch, start_line, start_col)
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            out = []
            while j < n:
                c = text[j]
                if c == "\\" and j + 1 < n:
                    out.append(text[j + 1])
                    j += 2
                    continue
                if c == '"':
                    break
                if c == "\n":
                    raise PenmanSyntaxError("unterminated string", start_line,
                                            start_col)
                out.append(c)
                j += 1
            if j >= n:
                raise PenmanSyntaxError("unterminated string", start_line,
                                        start_col)
            j += 1  # closing quote
            # swallow a trailing alignment: "New"~e.5
            if text[j:j + 1] == "~":
                m = _ALIGNMENT_AHEAD.match(text, j)
                if m:
                    j = m.end()
            col += j - i
            i = j
            yield PenmanToken(TokenKind.STRING, "".join(out), start_line,
                              start_col)
            continue
        if ch == ":":
            m = _SYMBOL_CHARS.match(text, i + 1)
            if not m:
                raise PenmanSyntaxError("empty role name", start_line, start_col)
            role = _ALIGNMENT.sub("", m.group())
            if not role:
                raise PenmanSyntaxError("empty role name", start_line, start_col)
            col += m.end() - i
            i = m.end()
            yield PenmanToken(TokenKind.ROLE, role, start_line, start_col)
            continue
        m = _SYMBOL_CHARS.match(text, i)
        if not m:
            raise PenmanSyntaxError(f"unexpected character {ch!r}", start_line,
                                    start_col)
        sym = _ALIGNMENT.sub("", m.group())
        col += m.end() - i
        i = m.end()
        yield PenmanToken(TokenKind.SYMBOL, sym, start_line, start_col)
    yield PenmanToken(TokenKind.END, "", line, col)


@dataclass
class _Ref:
    """Argument occurrence: nested node, variable reference, or constant."""

    text: str
    quoted: bool
    is_node: bool = False


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.pos = 0
        # in document order
        self.definitions: list[tuple[str, str, PenmanToken]] = []
        self.triples: list[tuple[str, str, _Ref]] = []

    def peek(self) -> PenmanToken:
        return self.tokens[self.pos]

    def take(self, kind: TokenKind, what: str) -> PenmanToken:
        tok = self.tokens[self.pos]
        if tok.kind is not kind:
            raise PenmanSyntaxError(f"expected {what}, got {tok.text!r}",
                                    tok.line, tok.col)
        self.pos += 1
        return tok

    def parse(self) -> str:
        root = self.parse_node()
        end = self.peek()
        if end.kind is not TokenKind.END:
            raise PenmanSyntaxError(f"trailing input {end.text!r}", end.line,
                                    end.col)
        return root

    def parse_node(self) -> str:
        self.take(TokenKind.LPAREN, "'('")
        var_tok = self.take(TokenKind.SYMBOL, "a variable")
        self.take(TokenKind.SLASH, "'/'")
        concept_tok = self.peek()
        if concept_tok.kind in (TokenKind.SYMBOL, TokenKind.STRING):
            self.pos += 1
        else:
            raise PenmanSyntaxError("expected a concept after '/'",
                                    concept_tok.line, concept_tok.col)
        var = var_tok.text
        if any(v == var for v, _, _ in self.definitions):
            raise PenmanSyntaxError(f"variable {var!r} defined twice",
                                    var_tok.line, var_tok.col)
        self.definitions.append((var, concept_tok.text, var_tok))
        while self.peek().kind is TokenKind.ROLE:
            role = self.take(TokenKind.ROLE, "a role").text
            arg = self.peek()
            if arg.kind is TokenKind.LPAREN:
                child = self.parse_node()
                self.triples.append((var, role, _Ref(child, False, is_node=True)))
            elif arg.kind is TokenKind.SYMBOL:
                self.pos += 1
                self.triples.append((var, role, _Ref(arg.text, False)))
            elif arg.kind is TokenKind.STRING:
                self.pos += 1
                self.triples.append((var, role, _Ref(arg.text, True)))
            else:
                raise PenmanSyntaxError(
                    f"expected an argument after :{role}", arg.line, arg.col)
        self.take(TokenKind.RPAREN, "')'")
        return var


def parse_penman(text: str, meta: dict[str, str] | None = None) -> SemGraph:
    """Parse one Penman expression into a sealed graph.

    Variables unify across the whole expression (forward references
    included); any other bare symbol, number, quoted string, ``-`` or ``+``
    becomes its own ``value`` node even when textually repeated.
    """
    parser = _Parser(text)
    parser.parse()
    g = SemGraph(meta)
    bound = {}
    for var, concept, tok in parser.definitions:
        if var in g.nodes:
            raise PenmanSyntaxError(f"variable {var!r} collides", tok.line,
                                    tok.col)
        bound[var] = g.add_node({"concept": concept}, name=var)
    const_n = 0
    for src, role, ref in parser.triples:
        if not ref.quoted and ref.text in bound:
            tgt = bound[ref.text]
        else:
            while f"c{const_n}" in g.nodes:
                const_n += 1
            tgt = g.add_node({"value": ref.text}, name=f"c{const_n}")
            const_n += 1
        try:
            g.add_edge(bound[src], tgt, role)
        except DuplicateEdgeError:
            pass  # repeated triple in the source text; keep one
    return g.seal()


_HEADER_FIELD = re.compile(r"::(\S+)")


def parse_header_line(line: str) -> dict[str, str]:
    """Split ``# ::id X ::date Y`` into a key-value map.

    A ``::key`` starts a field; its value runs to the next ``::`` or the end
    of the line.
    """
    body = line.lstrip("#").strip()
    fields: dict[str, str] = {}
    matches = list(_HEADER_FIELD.finditer(body))
    for i, m in enumerate(matches):
        end = matches[i + 1].start() if i + 1 < len(matches) else len(body)
        fields[m.group(1)] = body[m.end():end].strip()
    return fields


def iter_penman_blocks(text: str) -> Iterator[tuple[dict[str, str], str, int]]:
    """Yield ``(headers, penman text, first line number)`` per corpus block."""
    headers: dict[str, str] = {}
    body: list[str] = []
    start = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if body:
                yield headers, "\n".join(body), start
            headers, body, start = {}, [], 0
            continue
        if line.lstrip().startswith("#"):
            if "::" in line:
                headers.update(parse_header_line(line))
            continue
        if not body:
            start = lineno
        body.append(line)
    if body:
        yield headers, "\n".join(body), start


def parse_penman_corpus(text: str, corpus_id: str = "amr") -> Corpus:
    """Parse a multi-document AMR file; failing blocks are skipped and
    reported through ``Corpus.issues``."""
    graphs: list[SemGraph] = []
    issues: list[LoadIssue] = []
    seen: set[str] = set()
    for position, (headers, block, start) in enumerate(iter_penman_blocks(text),
                                                       start=1):
        meta = {}
        for key, value in headers.items():
            if key == "id":
                meta["sent_id"] = value
            elif key == "snt":
                meta["text"] = value
            else:
                meta[key] = value
        sid = meta.setdefault("sent_id", str(position))
        if sid in seen:
            issues.append(LoadIssue(sid, f"duplicate sent_id near line {start}"))
            continue
        try:
            graphs.append(parse_penman(block, meta))
        except PenmanSyntaxError as err:
            issues.append(LoadIssue(
                sid, f"skipped (line offset {start}): {err}"))
            continue
        seen.add(sid)
    return Corpus(corpus_id, graphs, issues)
