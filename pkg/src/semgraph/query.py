"""The query language: pattern blocks, negative application patterns,
whole-graph predicates, and clustering keys.

A request looks like::

    pattern { N [concept = "say-01"] }
    without { N -[ARG0]-> A0 }
    without { A0 -[ARG0-of]-> N }

Node constraints test features (presence, equality, inequality, anchored
regex); edge clauses relate named or wildcard endpoints through optional
label alternations; ``N.f = M.g`` requires two nodes to share a feature
value; ``global { is_cyclic }`` filters whole graphs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

GLOBAL_IS_CYCLIC = "is_cyclic"
GLOBAL_IS_ACYCLIC = "is_acyclic"

KEYWORDS = ("pattern", "without", "global")

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_LABEL_RE = re.compile(r"[^\s|\]]+")


class QueryError(Exception):
    """Base class for request parsing and validation errors."""


class QuerySyntaxError(QueryError):
    """Bad token or structure; carries a 1-based line/column anchor."""

    def __init__(self, message: str, line: int, col: int,
                 expected: tuple[str, ...] = ()):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected


class EmptyRequestError(QueryError):
    """A request with neither pattern content nor a global constraint."""


class UnknownIdentifierError(QueryError):
    """A clustering key references an identifier the base pattern lacks."""


class UnknownFormError(QueryError):
    """A clustering key that is neither ident.feature nor whether {...}."""


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class FeaturePresent:
    name: str


@dataclass(frozen=True)
class FeatureEq:
    name: str
    value: str


@dataclass(frozen=True)
class FeatureNeq:
    name: str
    value: str


@dataclass(frozen=True)
class FeatureRegex:
    name: str
    pattern: str  # anchored: must cover the whole feature value


Clause = Union[FeaturePresent, FeatureEq, FeatureNeq, FeatureRegex]


@dataclass(frozen=True)
class NodeConstraint:
    ident: str
    clauses: tuple[Clause, ...] = ()


@dataclass(frozen=True)
class EdgeConstraint:
    """``src -[labels]-> tgt``; ``None`` endpoints are anonymous wildcards,
    ``None`` labels match any label."""

    ident: str | None
    src: str | None
    tgt: str | None
    labels: tuple[str, ...] | None


@dataclass(frozen=True)
class FeatureCompare:
    """Cross-node feature equality ``N.f = M.g``."""

    left_ident: str
    left_feature: str
    right_ident: str
    right_feature: str


@dataclass
class PatternBlock:
    nodes: dict[str, NodeConstraint] = field(default_factory=dict)
    edges: tuple[EdgeConstraint, ...] = ()
    compares: tuple[FeatureCompare, ...] = ()

    def is_empty(self) -> bool:
        return not self.nodes and not self.edges and not self.compares

    def named_edges(self) -> dict[str, EdgeConstraint]:
        return {d.ident: d for d in self.edges if d.ident is not None}


@dataclass
class Request:
    base: PatternBlock
    withouts: tuple[PatternBlock, ...] = ()
    globals_: tuple[str, ...] = ()


@dataclass(frozen=True)
class NodeFeatureKey:
    ident: str
    feature: str


@dataclass(frozen=True)
class EdgeLabelKey:
    ident: str


@dataclass
class WhetherKey:
    block: PatternBlock


ClusterKey = Union[NodeFeatureKey, EdgeLabelKey, WhetherKey]


# -- lexer -------------------------------------------------------------------

class Tok(Enum):
    IDENT = "identifier"
    STRING = "string"
    REGEX = "regex"
    LBRACE = "'{'"
    RBRACE = "'}'"
    LBRACKET = "'['"
    RBRACKET = "']'"
    SEMI = "';'"
    COMMA = "','"
    STAR = "'*'"
    PIPE = "'|'"
    DOT = "'.'"
    EQ = "'='"
    NEQ = "'<>'"
    COLON = "':'"
    ARROW = "'->'"
    EDGE_OPEN = "'-['"
    EDGE_CLOSE = "']->'"
    LABEL = "edge label"
    NEWLINE = "newline"
    END = "end of request"


@dataclass(frozen=True)
class Token:
    kind: Tok
    text: str
    line: int
    col: int


def _lex_string(text: str, i: int, line: int, col: int) -> tuple[str, int, int]:
    """Scan a double-quoted literal starting at ``i``; returns (content,
    next index, width)."""
    out = []
    j = i + 1
    while j < len(text):
        c = text[j]
        if c == "\n" or c == "":
            break
        if c == "\\":
            if j + 1 >= len(text) or text[j + 1] not in '"\\':
                raise QuerySyntaxError("unsupported escape", line,
                                       col + (j - i) + 1)
            out.append(text[j + 1])
            j += 2
            continue
        if c == '"':
            return "".join(out), j + 1, j + 1 - i
        out.append(c)
        j += 1
    raise QuerySyntaxError("unterminated string", line, col)


def tokenize_request(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    label_mode = False
    simple = {"{": Tok.LBRACE, "}": Tok.RBRACE, "[": Tok.LBRACKET,
              ";": Tok.SEMI, ",": Tok.COMMA, "*": Tok.STAR, "|": Tok.PIPE,
              ".": Tok.DOT, "=": Tok.EQ, ":": Tok.COLON}
    while i < n:
        ch = text[i]
        if ch == "\n":
            tokens.append(Token(Tok.NEWLINE, "\n", line, col))
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if label_mode:
            if ch == "|":
                tokens.append(Token(Tok.PIPE, "|", line, col))
                i += 1
                col += 1
                continue
            if ch == "]":
                if text[i:i + 3] != "]->":
                    raise QuerySyntaxError("expected ']->'", line, col)
                tokens.append(Token(Tok.EDGE_CLOSE, "]->", line, col))
                i += 3
                col += 3
                label_mode = False
                continue
            m = _LABEL_RE.match(text, i)
            if not m:
                raise QuerySyntaxError(f"bad edge label at {ch!r}", line, col)
            tokens.append(Token(Tok.LABEL, m.group(), line, col))
            col += m.end() - i
            i = m.end()
            continue
        if ch == "-":
            if text[i:i + 2] == "->":
                tokens.append(Token(Tok.ARROW, "->", line, col))
                i += 2
                col += 2
                continue
            if text[i:i + 2] == "-[":
                tokens.append(Token(Tok.EDGE_OPEN, "-[", line, col))
                i += 2
                col += 2
                label_mode = True
                continue
            raise QuerySyntaxError("stray '-' (expected '->' or '-[')",
                                   line, col)
        if ch == "<":
            if text[i:i + 2] == "<>":
                tokens.append(Token(Tok.NEQ, "<>", line, col))
                i += 2
                col += 2
                continue
            raise QuerySyntaxError("stray '<' (expected '<>')", line, col)
        if ch == '"':
            content, j, width = _lex_string(text, i, line, col)
            tokens.append(Token(Tok.STRING, content, line, col))
            i = j
            col += width
            continue
        if ch == "]":
            tokens.append(Token(Tok.RBRACKET, "]", line, col))
            i += 1
            col += 1
            continue
        if ch in simple:
            tokens.append(Token(simple[ch], ch, line, col))
            i += 1
            col += 1
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            word = m.group()
            if word == "re" and text[m.end():m.end() + 1] == '"':
                content, j, _ = _lex_string(text, m.end(), line,
                                            col + len(word))
                try:
                    re.compile(content)
                except re.error as err:
                    raise QuerySyntaxError(f"bad regex: {err}", line,
                                           col) from None
                tokens.append(Token(Tok.REGEX, content, line, col))
                col += j - i
                i = j
                continue
            tokens.append(Token(Tok.IDENT, word, line, col))
            col += m.end() - i
            i = m.end()
            continue
        raise QuerySyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token(Tok.END, "", line, col))
    return tokens


# -- parser ------------------------------------------------------------------

class _Stream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind is not Tok.END:
            self.pos += 1
        return tok

    def expect(self, kind: Tok) -> Token:
        tok = self.peek()
        if tok.kind is not kind:
            raise QuerySyntaxError(
                f"expected {kind.value}, got {tok.kind.value}"
                + (f" {tok.text!r}" if tok.text else ""),
                tok.line, tok.col, expected=(kind.value,))
        return self.next()

    def skip_newlines(self) -> None:
        while self.peek().kind is Tok.NEWLINE:
            self.next()

    def skip_separators(self) -> None:
        while self.peek().kind in (Tok.NEWLINE, Tok.SEMI):
            self.next()


class _BlockParser:
    def __init__(self, ts: _Stream):
        self.ts = ts
        self.nodes: dict[str, NodeConstraint] = {}
        self.edges: list[EdgeConstraint] = []
        self.compares: list[FeatureCompare] = []
        self.edge_names: dict[str, Token] = {}

    def declare(self, ident: str) -> None:
        # an undeclared endpoint implicitly declares an unconstrained node
        self.nodes.setdefault(ident, NodeConstraint(ident))

    def parse(self) -> PatternBlock:
        ts = self.ts
        ts.skip_newlines()
        ts.expect(Tok.LBRACE)
        while True:
            ts.skip_separators()
            if ts.peek().kind is Tok.RBRACE:
                ts.next()
                break
            self.parse_item()
            nxt = ts.peek()
            if nxt.kind not in (Tok.SEMI, Tok.NEWLINE, Tok.RBRACE):
                raise QuerySyntaxError(
                    f"expected ';' or newline, got {nxt.kind.value}",
                    nxt.line, nxt.col, expected=(";", "newline", "}"))
        for name, tok in self.edge_names.items():
            if name in self.nodes:
                raise QuerySyntaxError(
                    f"{name!r} is used as both a node and an edge name",
                    tok.line, tok.col)
        return PatternBlock(self.nodes, tuple(self.edges),
                            tuple(self.compares))

    def parse_item(self) -> None:
        ts = self.ts
        tok = ts.peek()
        if tok.kind is Tok.STAR:
            ts.next()
            self.parse_edge_tail(None, None)
            return
        ident = ts.expect(Tok.IDENT).text
        nxt = ts.peek()
        if nxt.kind is Tok.COLON:
            ts.next()
            if ident in self.edge_names:
                raise QuerySyntaxError(f"edge name {ident!r} reused",
                                       nxt.line, nxt.col)
            self.edge_names[ident] = nxt
            src = self.parse_endpoint()
            self.parse_edge_tail(src, ident)
        elif nxt.kind is Tok.LBRACKET:
            self.parse_node_decl(ident)
        elif nxt.kind is Tok.DOT:
            self.parse_compare(ident)
        elif nxt.kind in (Tok.ARROW, Tok.EDGE_OPEN):
            self.parse_edge_tail(ident, None)
        else:
            raise QuerySyntaxError(
                f"expected '[', ':', '->', '-[' or '.', got {nxt.kind.value}",
                nxt.line, nxt.col, expected=("[", ":", "->", "-[", "."))

    def parse_endpoint(self) -> str | None:
        tok = self.ts.peek()
        if tok.kind is Tok.STAR:
            self.ts.next()
            return None
        return self.ts.expect(Tok.IDENT).text

    def parse_edge_tail(self, src: str | None, name: str | None) -> None:
        ts = self.ts
        tok = ts.peek()
        labels: tuple[str, ...] | None
        if tok.kind is Tok.ARROW:
            ts.next()
            labels = None
        elif tok.kind is Tok.EDGE_OPEN:
            ts.next()
            parts = [ts.expect(Tok.LABEL).text]
            while ts.peek().kind is Tok.PIPE:
                ts.next()
                parts.append(ts.expect(Tok.LABEL).text)
            ts.expect(Tok.EDGE_CLOSE)
            labels = tuple(parts)
        else:
            raise QuerySyntaxError(
                f"expected '->' or '-[', got {tok.kind.value}",
                tok.line, tok.col, expected=("->", "-["))
        tgt = self.parse_endpoint()
        if src is not None:
            self.declare(src)
        if tgt is not None:
            self.declare(tgt)
        self.edges.append(EdgeConstraint(name, src, tgt, labels))

    def parse_node_decl(self, ident: str) -> None:
        ts = self.ts
        ts.expect(Tok.LBRACKET)
        clauses: list[Clause] = []
        ts.skip_newlines()
        while ts.peek().kind is not Tok.RBRACKET:
            name = self.parse_feature_name()
            nxt = ts.peek()
            if nxt.kind is Tok.EQ:
                ts.next()
                val = ts.peek()
                if val.kind is Tok.REGEX:
                    ts.next()
                    clauses.append(FeatureRegex(name, val.text))
                elif val.kind in (Tok.STRING, Tok.IDENT):
                    ts.next()
                    clauses.append(FeatureEq(name, val.text))
                else:
                    raise QuerySyntaxError(
                        f"expected a value, got {val.kind.value}",
                        val.line, val.col,
                        expected=("string", "identifier", "regex"))
            elif nxt.kind is Tok.NEQ:
                ts.next()
                val = ts.peek()
                if val.kind in (Tok.STRING, Tok.IDENT):
                    ts.next()
                    clauses.append(FeatureNeq(name, val.text))
                else:
                    raise QuerySyntaxError(
                        f"expected a value, got {val.kind.value}",
                        val.line, val.col, expected=("string", "identifier"))
            else:
                clauses.append(FeaturePresent(name))
            ts.skip_newlines()
            if ts.peek().kind is Tok.COMMA:
                ts.next()
                ts.skip_newlines()
        ts.expect(Tok.RBRACKET)
        merged = self.nodes.get(ident, NodeConstraint(ident)).clauses + \
            tuple(clauses)
        self.nodes[ident] = NodeConstraint(ident, merged)

    def parse_feature_name(self) -> str:
        # dotted names carry flattened structure: involvement.q
        parts = [self.ts.expect(Tok.IDENT).text]
        while self.ts.peek().kind is Tok.DOT:
            self.ts.next()
            parts.append(self.ts.expect(Tok.IDENT).text)
        return ".".join(parts)

    def parse_compare(self, left: str) -> None:
        ts = self.ts
        ts.expect(Tok.DOT)
        left_feature = self.parse_feature_name()
        ts.expect(Tok.EQ)
        right = ts.expect(Tok.IDENT).text
        ts.expect(Tok.DOT)
        right_feature = self.parse_feature_name()
        self.declare(left)
        self.declare(right)
        self.compares.append(
            FeatureCompare(left, left_feature, right, right_feature))


def _merge_blocks(target: PatternBlock, extra: PatternBlock) -> PatternBlock:
    nodes = dict(target.nodes)
    for ident, nc in extra.nodes.items():
        if ident in nodes:
            nodes[ident] = NodeConstraint(ident,
                                          nodes[ident].clauses + nc.clauses)
        else:
            nodes[ident] = nc
    reused = set(target.named_edges()) & set(extra.named_edges())
    if reused:
        raise QueryError(
            f"edge name {sorted(reused)[0]!r} reused across pattern blocks")
    return PatternBlock(nodes, target.edges + extra.edges,
                        target.compares + extra.compares)


def parse_request(text: str) -> Request:
    """Parse a request; raises :class:`QuerySyntaxError` with a position,
    :class:`EmptyRequestError` when there is nothing to match."""
    ts = _Stream(tokenize_request(text))
    base: PatternBlock | None = None
    withouts: list[PatternBlock] = []
    globals_: list[str] = []
    while True:
        ts.skip_separators()
        tok = ts.peek()
        if tok.kind is Tok.END:
            break
        kw = ts.expect(Tok.IDENT)
        if kw.text == "pattern":
            block = _BlockParser(ts).parse()
            base = block if base is None else _merge_blocks(base, block)
        elif kw.text == "without":
            withouts.append(_BlockParser(ts).parse())
        elif kw.text == "global":
            ts.skip_newlines()
            ts.expect(Tok.LBRACE)
            while True:
                ts.skip_separators()
                if ts.peek().kind is Tok.RBRACE:
                    ts.next()
                    break
                pred = ts.expect(Tok.IDENT)
                if pred.text not in (GLOBAL_IS_CYCLIC, GLOBAL_IS_ACYCLIC):
                    raise QuerySyntaxError(
                        f"unknown global constraint {pred.text!r}",
                        pred.line, pred.col,
                        expected=(GLOBAL_IS_CYCLIC, GLOBAL_IS_ACYCLIC))
                globals_.append(pred.text)
        else:
            raise QuerySyntaxError(
                f"expected one of {', '.join(KEYWORDS)}, got {kw.text!r}",
                kw.line, kw.col, expected=KEYWORDS)
    if base is None:
        base = PatternBlock()
    clashes = set(base.nodes) & set(base.named_edges())
    if clashes:
        raise QueryError(f"{sorted(clashes)[0]!r} is used as both a node "
                         f"and an edge name")
    if base.is_empty() and not globals_:
        raise EmptyRequestError(
            "request has no pattern content and no global constraint")
    return Request(base, tuple(withouts), tuple(globals_))


def parse_cluster_key(text: str, req: Request) -> ClusterKey:
    """Parse and validate a clustering key against a parsed request."""
    ts = _Stream(tokenize_request(text))
    ts.skip_separators()
    tok = ts.expect(Tok.IDENT)
    if tok.text == "whether":
        block = _BlockParser(ts).parse()
        ts.skip_separators()
        ts.expect(Tok.END)
        return WhetherKey(block)
    ident = tok.text
    nxt = ts.peek()
    if nxt.kind is not Tok.DOT:
        raise UnknownFormError(
            f"cluster key must be ident.feature or whether {{...}}, "
            f"got {text.strip()!r}")
    ts.next()
    feature = _BlockParser(ts).parse_feature_name()
    ts.skip_separators()
    ts.expect(Tok.END)
    if ident in req.base.nodes:
        return NodeFeatureKey(ident, feature)
    if ident in req.base.named_edges():
        if feature != "label":
            raise UnknownFormError(
                f"edge key must be {ident}.label, got {ident}.{feature}")
        return EdgeLabelKey(ident)
    raise UnknownIdentifierError(
        f"identifier {ident!r} is not part of the base pattern")


# -- canonical printer -------------------------------------------------------

def _print_value(value: str) -> str:
    if _IDENT_RE.fullmatch(value):
        return value
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _print_clause(clause: Clause) -> str:
    if isinstance(clause, FeaturePresent):
        return clause.name
    if isinstance(clause, FeatureEq):
        return f"{clause.name} = {_print_value(clause.value)}"
    if isinstance(clause, FeatureNeq):
        return f"{clause.name} <> {_print_value(clause.value)}"
    pattern = clause.pattern.replace("\\", "\\\\").replace('"', '\\"')
    return f'{clause.name} = re"{pattern}"'


def _print_edge(decl: EdgeConstraint) -> str:
    src = decl.src if decl.src is not None else "*"
    tgt = decl.tgt if decl.tgt is not None else "*"
    arrow = "->" if decl.labels is None else f"-[{'|'.join(decl.labels)}]->"
    name = f"{decl.ident}: " if decl.ident is not None else ""
    return f"{name}{src} {arrow} {tgt}"


def print_block(block: PatternBlock) -> str:
    items = [f"{nc.ident} [{', '.join(_print_clause(c) for c in nc.clauses)}]"
             for nc in block.nodes.values()]
    items += [_print_edge(d) for d in block.edges]
    items += [f"{c.left_ident}.{c.left_feature} = "
              f"{c.right_ident}.{c.right_feature}" for c in block.compares]
    return "{ " + "; ".join(items) + " }" if items else "{ }"


def print_request(req: Request) -> str:
    """Canonical single-spacing form; ``parse(print(parse(t)))`` is stable."""
    lines = []
    if not req.base.is_empty() or not req.globals_:
        lines.append(f"pattern {print_block(req.base)}")
    for wo in req.withouts:
        lines.append(f"without {print_block(wo)}")
    if req.globals_:
        lines.append("global { " + "; ".join(req.globals_) + " }")
    return "\n".join(lines) + "\n"


def print_cluster_key(key: ClusterKey) -> str:
    if isinstance(key, NodeFeatureKey):
        return f"{key.ident}.{key.feature}"
    if isinstance(key, EdgeLabelKey):
        return f"{key.ident}.label"
    return f"whether {print_block(key.block)}"
