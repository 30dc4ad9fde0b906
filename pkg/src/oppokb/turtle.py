"""Parser and canonical serializer for the Turtle subset used by OPPO data.

Supported: ``@prefix`` declarations, IRIREFs, prefixed names, labelled blank
nodes, single-line strings (optionally ``^^``-typed), integers, booleans,
``;``/``,`` lists and ``#`` comments. Collections, ``[ ]`` property lists,
long strings and language tags are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .namespaces import RDF_TYPE
from .store import Graph
from .terms import (
    XSD_BOOLEAN,
    XSD_INTEGER,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Triple,
    WellFormednessError,
)

PNAME = r"[A-Za-z](?:[A-Za-z0-9_\-]*)"
LOCAL = r"[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?"
_LOCAL_RE = re.compile(f"^{LOCAL}$")
_CANONICAL_BLANK = re.compile(r"^b(0|[1-9][0-9]*)$")


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic

    @property
    def line(self):
        return self.diagnostic.line

    @property
    def column(self):
        return self.diagnostic.column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"#[^\n]*"),
    ("IRIREF", r"<[^<>\"{}|^`\\\s]*>"),
    ("STRING", r'"(?:[^"\\\n\r]|\\.)*"'),
    ("DTYPE", r"\^\^"),
    ("PREFIX_KW", r"@prefix\b"),
    ("BLANK", r"_:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?"),
    ("INTEGER", r"[+-]?[0-9]+(?![A-Za-z0-9_:])"),
    ("PNAME_LN", f"(?:{PNAME})?:{LOCAL}"),
    ("PNAME_NS", f"(?:{PNAME})?:"),
    ("WORD", r"[A-Za-z][A-Za-z0-9_]*"),
    ("VAR", r"\?[A-Za-z][A-Za-z0-9_]*"),
    ("PUNCT", r"[.;,{}()]"),
    ("OP", r"!=|<=|>=|=|<|>"),
]
_MASTER = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _TOKEN_SPEC))

_UNESCAPES = {"n": "\n", "r": "\r", "t": "\t", '"': '"', "\\": "\\", "'": "'"}


def tokenize(text: str, allowed: Iterable[str] | None = None) -> list[Token]:
    """Split ``text`` into tokens, tracking 1-based line/column.

    ``allowed`` restricts which token kinds are legal; the query language
    reuses this lexer with a wider set.
    """
    allowed = set(allowed) if allowed is not None else None
    tokens = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        col = pos - line_start + 1
        if text.startswith('"""', pos):
            raise ParseError(ParseDiagnostic(line, col, "multiline strings are not supported"))
        m = _MASTER.match(text, pos)
        kind = m.lastgroup if m else None
        if m is None or (allowed is not None and kind not in allowed | {"WS", "COMMENT"}):
            bad = text[pos]
            if bad == '"':
                msg = "unterminated string literal"
            elif bad == "<":
                msg = "malformed IRI reference"
            else:
                msg = f"unexpected character {bad!r}"
            raise ParseError(ParseDiagnostic(line, col, msg))
        value = m.group()
        if kind not in ("WS", "COMMENT"):
            tokens.append(Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


def unescape(body: str, tok: Token) -> str:
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            nxt = body[i + 1]
            if nxt not in _UNESCAPES:
                raise ParseError(
                    ParseDiagnostic(tok.line, tok.column + i + 1, f"unknown escape \\{nxt}")
                )
            out.append(_UNESCAPES[nxt])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


_TURTLE_TOKENS = {"IRIREF", "STRING", "DTYPE", "PREFIX_KW", "BLANK", "INTEGER", "PNAME_LN",
                  "PNAME_NS", "WORD", "PUNCT"}


class TermReader:
    """Shared term-level grammar: IRIs, prefixed names, blanks and literals."""

    error = ParseError

    def __init__(self, tokens: list[Token], prefixes: dict[str, str]):
        self.tokens = tokens
        self.i = 0
        self.prefixes = prefixes

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise self.error(ParseDiagnostic(tok.line, tok.column, msg))

    def describe(self, tok: Token) -> str:
        return "end of input" if tok.kind == "EOF" else repr(tok.text)

    def expect_punct(self, ch: str) -> Token:
        if self.tok.kind == "PUNCT" and self.tok.text == ch:
            return self.advance()
        self.fail(f"expected {ch!r}, found {self.describe(self.tok)}")

    def is_punct(self, ch: str) -> bool:
        return self.tok.kind == "PUNCT" and self.tok.text == ch

    def make_iri(self, value: str, tok: Token) -> Iri:
        try:
            return Iri(value)
        except WellFormednessError:
            self.fail(f"bad IRI <{value}>: must be absolute", tok)

    def iri(self) -> Iri | None:
        tok = self.tok
        if tok.kind == "IRIREF":
            self.advance()
            return self.make_iri(tok.text[1:-1], tok)
        if tok.kind in ("PNAME_LN", "PNAME_NS"):
            label, _, local = tok.text.partition(":")
            if label not in self.prefixes:
                self.fail(f"unknown prefix {label + ':'!r}", tok)
            self.advance()
            return self.make_iri(self.prefixes[label] + local, tok)
        return None

    def literal(self) -> Literal | None:
        tok = self.tok
        if tok.kind == "STRING":
            self.advance()
            lexical = unescape(tok.text[1:-1], tok)
            datatype = Iri(XSD_STRING)
            if self.tok.kind == "DTYPE":
                self.advance()
                dt_tok = self.tok
                dt = self.iri()
                if dt is None:
                    self.fail(f"expected datatype IRI, found {self.describe(dt_tok)}", dt_tok)
                datatype = dt
            try:
                return Literal(lexical, datatype)
            except WellFormednessError as exc:
                self.fail(str(exc), tok)
        if tok.kind == "INTEGER":
            self.advance()
            return Literal(tok.text, Iri(XSD_INTEGER))
        if tok.kind == "WORD" and tok.text in ("true", "false"):
            self.advance()
            return Literal(tok.text, Iri(XSD_BOOLEAN))
        return None


class _TurtleParser(TermReader):
    def __init__(self, tokens):
        super().__init__(tokens, {})
        self.order: list[str] = []
        self.graph = Graph()
        self.blank_ids = self._assign_blank_ids(tokens)

    @staticmethod
    def _assign_blank_ids(tokens) -> dict[str, int]:
        # _:bN labels keep N so canonical output reparses to identical ids
        labels = list(dict.fromkeys(t.text[2:] for t in tokens if t.kind == "BLANK"))
        ids = {}
        for label in labels:
            m = _CANONICAL_BLANK.match(label)
            if m:
                ids[label] = int(m.group(1))
        nxt = max(ids.values(), default=-1) + 1
        for label in labels:
            if label not in ids:
                ids[label] = nxt
                nxt += 1
        return ids

    def parse(self):
        while self.tok.kind != "EOF":
            if self.tok.kind == "PREFIX_KW":
                self.prefix_decl()
            else:
                self.triple_stmt()
        return self.graph, self.order

    def prefix_decl(self):
        self.advance()
        tok = self.tok
        if tok.kind != "PNAME_NS":
            self.fail(f"expected prefix label, found {self.describe(tok)}")
        self.advance()
        label = tok.text[:-1]
        iri_tok = self.tok
        if iri_tok.kind != "IRIREF":
            self.fail(f"expected namespace IRI, found {self.describe(iri_tok)}")
        self.advance()
        ns = self.make_iri(iri_tok.text[1:-1], iri_tok).value
        self.expect_punct(".")
        if label not in self.prefixes:
            self.order.append(label)
        self.prefixes[label] = ns

    def blank(self) -> BlankNode | None:
        if self.tok.kind == "BLANK":
            return BlankNode(self.blank_ids[self.advance().text[2:]])
        return None

    def subject(self):
        tok = self.tok
        term = self.iri() or self.blank()
        if term is None:
            self.fail(f"expected subject, found {self.describe(tok)}")
        return term

    def verb(self) -> Iri:
        tok = self.tok
        if tok.kind == "WORD" and tok.text == "a":
            self.advance()
            return RDF_TYPE
        term = self.iri()
        if term is None:
            self.fail(f"expected predicate, found {self.describe(tok)}")
        return term

    def object(self):
        tok = self.tok
        term = self.iri() or self.blank() or self.literal()
        if term is None:
            self.fail(f"expected object, found {self.describe(tok)}")
        return term

    def triple_stmt(self):
        s = self.subject()
        while True:
            p = self.verb()
            while True:
                self.graph.insert(Triple(s, p, self.object()))
                if not self.is_punct(","):
                    break
                self.advance()
            if not self.is_punct(";"):
                break
            self.advance()
        self.expect_punct(".")


def parse(text: str) -> tuple[Graph, dict[str, str]]:
    """Parse Turtle-subset text into a graph and its (ordered) prefix map.

    Raises :class:`ParseError` at the first syntax error.
    """
    if text.startswith("\ufeff"):
        text = text[1:]
    parser = _TurtleParser(tokenize(text, _TURTLE_TOKENS))
    graph, order = parser.parse()
    return graph, {label: parser.prefixes[label] for label in order}


def parse_file(path) -> tuple[Graph, dict[str, str]]:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def compact(term, prefixes: Mapping[str, str]) -> str:
    """Render a term with the longest matching prefix, falling back to N-Triples form."""
    if isinstance(term, Iri):
        best = None
        for label, ns in prefixes.items():
            if ns and term.value.startswith(ns):
                local = term.value[len(ns):]
                if (not local or _LOCAL_RE.match(local)) and (best is None or len(ns) > len(best[1])):
                    best = (label, ns, local)
        if best:
            return f"{best[0]}:{best[2]}"
        return term.n3()
    if isinstance(term, Literal):
        dt = term.datatype.value
        if dt in (XSD_INTEGER, XSD_BOOLEAN):
            return term.lexical
        return term.n3()
    return term.n3()


def serialize(g: Graph, prefixes: Mapping[str, str] | None = None) -> str:
    """Canonical Turtle: sorted prefixes, sorted subjects, grouped predicate-object lists."""
    prefixes = dict(prefixes or {})
    lines = [f"@prefix {label}: <{prefixes[label]}> ." for label in sorted(prefixes)]
    by_subject: dict = {}
    for t in g.triples():
        by_subject.setdefault(t.subject, {}).setdefault(t.predicate, []).append(t.object)
    blocks = []
    for s in sorted(by_subject, key=lambda x: x.n3()):
        preds = by_subject[s]
        order = sorted(preds, key=lambda p: (p != RDF_TYPE, p.n3()))
        parts = []
        for p in order:
            verb = "a" if p == RDF_TYPE else compact(p, prefixes)
            objs = ", ".join(compact(o, prefixes) for o in sorted(preds[p], key=lambda x: x.n3()))
            parts.append(f"{verb} {objs}")
        blocks.append(compact(s, prefixes) + " " + " ;\n    ".join(parts) + " .")
    if lines and blocks:
        lines.append("")
    lines.extend(blocks)
    return "\n".join(lines) + "\n"
