"""Basic graph pattern queries with simple filters, and the bundled
competency questions.

Grammar (keywords case-insensitive, ``#`` comments)::

    query   := 'SELECT' var+ 'WHERE' '{' (pattern '.')+ filter* '}'
    pattern := term term term          -- term: var | iri | literal | 'a'
    filter  := 'FILTER' '(' var OP const ')'
    OP      := '=' | '!=' | '<' | '<=' | '>' | '>='
"""

from __future__ import annotations

import enum
import json
import operator
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations
from typing import Mapping, Sequence, Union

from .namespaces import RDF_TYPE, default_prefixes
from .store import Graph
from .terms import XSD_STRING, Iri, Literal, Term
from .turtle import ParseDiagnostic, ParseError, TermReader, Token, compact, tokenize, unescape


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return "?" + self.name


Slot = Union[Var, Term]


@dataclass(frozen=True)
class TriplePattern:
    subject: Slot
    predicate: Slot
    object: Slot

    def slots(self):
        return (self.subject, self.predicate, self.object)

    def variables(self) -> list[str]:
        return [s.name for s in self.slots() if isinstance(s, Var)]


_OPS = {
    "=": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}
ORDERING_OPS = frozenset({"<", "<=", ">", ">="})


@dataclass(frozen=True)
class Filter:
    left: str
    op: str
    right: Union[int, str]

    def test(self, value: Term) -> bool:
        """Comparisons with a mismatched term type are false, never errors."""
        if not isinstance(value, Literal):
            return False
        if isinstance(self.right, int):
            if not value.is_integer:
                return False
            return _OPS[self.op](int(value.lexical), self.right)
        if value.datatype.value != XSD_STRING:
            return False
        return _OPS[self.op](value.lexical, self.right)


@dataclass(frozen=True)
class QueryAst:
    select: tuple[str, ...]
    patterns: tuple[TriplePattern, ...]
    filters: tuple[Filter, ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def variables(self) -> set[str]:
        return {v for p in self.patterns for v in p.variables()}


class QuerySyntaxError(ParseError):
    pass


@dataclass
class BindingTable:
    header: tuple[str, ...]
    rows: list[tuple[Term, ...]]

    def __len__(self):
        return len(self.rows)

    def to_json(self) -> str:
        data = {
            "header": list(self.header),
            "rows": [[t.n3() for t in row] for row in self.rows],
        }
        return json.dumps(data, indent=2, sort_keys=True) + "\n"

    def render(self, prefixes: Mapping[str, str] | None = None) -> str:
        """Aligned plain-text table: header, rule, one line per row."""
        prefixes = prefixes or {}
        cells = [["?" + h for h in self.header]]
        cells += [[compact(t, prefixes) for t in row] for row in self.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(self.header))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
        lines.insert(1, "  ".join("-" * w for w in widths))
        lines.append(f"({len(self.rows)} row{'s' if len(self.rows) != 1 else ''})")
        return "\n".join(lines) + "\n"


_QUERY_TOKENS = {"IRIREF", "STRING", "DTYPE", "INTEGER", "PNAME_LN", "PNAME_NS", "WORD", "VAR",
                 "PUNCT", "OP"}


class _QueryParser(TermReader):
    error = QuerySyntaxError

    def keyword(self, word: str) -> bool:
        return self.tok.kind == "WORD" and self.tok.text.upper() == word

    def expect_keyword(self, word: str):
        if not self.keyword(word):
            self.fail(f"expected {word}, found {self.describe(self.tok)}")
        self.advance()

    def var(self) -> Var | None:
        if self.tok.kind == "VAR":
            return Var(self.advance().text[1:])
        return None

    def slot(self, position: str) -> Slot:
        tok = self.tok
        v = self.var()
        if v:
            return v
        if position == "predicate" and tok.kind == "WORD" and tok.text == "a":
            self.advance()
            return RDF_TYPE
        term = self.iri()
        if term is None and position == "object":
            term = self.literal()
        if term is None:
            self.fail(f"expected {position}, found {self.describe(tok)}", tok)
        return term

    def parse(self) -> tuple[list[str], list[TriplePattern], list[tuple[Filter, Token]], list[Token]]:
        self.expect_keyword("SELECT")
        select, select_toks = [], []
        while self.tok.kind == "VAR":
            select_toks.append(self.tok)
            select.append(self.var().name)
        if not select:
            self.fail(f"expected a variable, found {self.describe(self.tok)}")
        self.expect_keyword("WHERE")
        self.expect_punct("{")
        patterns = []
        while not self.keyword("FILTER") and not self.is_punct("}"):
            start = self.tok
            if start.kind == "EOF":
                self.fail("expected '}', found end of input")
            s = self.slot("subject")
            p = self.slot("predicate")
            o = self.slot("object")
            patterns.append(TriplePattern(s, p, o))
            self.expect_punct(".")
        if not patterns:
            self.fail(f"expected a triple pattern, found {self.describe(self.tok)}")
        filters = []
        while self.keyword("FILTER"):
            self.advance()
            self.expect_punct("(")
            var_tok = self.tok
            v = self.var()
            if v is None:
                self.fail(f"expected a variable, found {self.describe(var_tok)}")
            op_tok = self.tok
            if op_tok.kind != "OP":
                self.fail(f"expected a comparison operator, found {self.describe(op_tok)}")
            self.advance()
            const_tok = self.tok
            if const_tok.kind == "INTEGER":
                const = int(const_tok.text)
            elif const_tok.kind == "STRING":
                const = unescape(const_tok.text[1:-1], const_tok)
            else:
                self.fail(f"expected an integer or string constant, found {self.describe(const_tok)}")
            self.advance()
            if op_tok.text in ORDERING_OPS and not isinstance(const, int):
                self.fail(f"operator {op_tok.text} needs an integer constant", const_tok)
            self.expect_punct(")")
            filters.append((Filter(v.name, op_tok.text, const), var_tok))
        self.expect_punct("}")
        if self.tok.kind != "EOF":
            self.fail(f"unexpected {self.describe(self.tok)} after query")
        return select, patterns, filters, select_toks


def parse_query(text: str, prefixes: Mapping[str, str] | None = None, strict: bool = False) -> QueryAst:
    """Parse query text; prefixed names resolve against ``prefixes`` (default map if None).

    A variable that occurs once in the patterns and is neither selected nor
    filtered produces a warning; ``strict`` turns warnings into errors.
    """
    prefixes = dict(default_prefixes() if prefixes is None else prefixes)
    parser = _QueryParser(tokenize(text, _QUERY_TOKENS), prefixes)
    select, patterns, filters, select_toks = parser.parse()
    used = {v for p in patterns for v in p.variables()}
    for name, tok in zip(select, select_toks):
        if name not in used:
            raise QuerySyntaxError(
                ParseDiagnostic(tok.line, tok.column, f"selected variable ?{name} does not occur in any pattern")
            )
    for f, tok in filters:
        if f.left not in used:
            raise QuerySyntaxError(
                ParseDiagnostic(tok.line, tok.column, f"filter variable ?{f.left} does not occur in any pattern")
            )
    counts: dict[str, int] = {}
    for p in patterns:
        for v in p.variables():
            counts[v] = counts.get(v, 0) + 1
    filtered = {f.left for f, _ in filters}
    warnings = tuple(
        f"variable ?{v} occurs once and is never selected or filtered"
        for v in sorted(counts)
        if counts[v] == 1 and v not in select and v not in filtered
    )
    if strict and warnings:
        tok = parser.tokens[0]
        raise QuerySyntaxError(ParseDiagnostic(tok.line, tok.column, warnings[0]))
    return QueryAst(
        tuple(dict.fromkeys(select)), tuple(patterns), tuple(f for f, _ in filters), warnings
    )


Binding = dict


def _resolve(slot: Slot, binding: Binding):
    if isinstance(slot, Var):
        return binding.get(slot.name)
    return slot


def _extend(pattern: TriplePattern, binding: Binding, g: Graph):
    s, p, o = (_resolve(x, binding) for x in pattern.slots())
    if isinstance(s, Literal) or (p is not None and not isinstance(p, Iri)):
        return
    for t in g.iter_match(s, p, o):
        new = dict(binding)
        ok = True
        for slot, value in zip(pattern.slots(), t):
            if isinstance(slot, Var):
                prior = new.get(slot.name)
                if prior is None:
                    new[slot.name] = value
                elif prior != value:
                    ok = False
                    break
        if ok:
            yield new


def _bound_count(pattern: TriplePattern, bound: set[str]) -> int:
    return sum(1 for x in pattern.slots() if not isinstance(x, Var) or x.name in bound)


def _cardinality(pattern: TriplePattern, g: Graph) -> int:
    s, p, o = (None if isinstance(x, Var) else x for x in pattern.slots())
    if isinstance(s, Literal):
        return 0
    return g.estimate(s, p, o)


def plan(q: QueryAst, g: Graph, initial: Mapping[str, Term] | None = None) -> list[int]:
    """Greedy join order: most bound slots first, ties by index cardinality, then position."""
    bound = set(initial or ())
    remaining = list(range(len(q.patterns)))
    order = []
    card = [_cardinality(p, g) for p in q.patterns]
    while remaining:
        best = min(remaining, key=lambda i: (-_bound_count(q.patterns[i], bound), card[i], i))
        order.append(best)
        remaining.remove(best)
        bound.update(q.patterns[best].variables())
    return order


def execute(
    q: QueryAst,
    g: Graph,
    initial: Mapping[str, Term] | None = None,
    order: Sequence[int] | None = None,
    pushdown: bool = True,
) -> BindingTable:
    """Evaluate ``q`` over ``g`` with set semantics.

    ``initial`` pre-binds variables (used by parameterized competency
    questions). ``order`` forces a join order; by default :func:`plan` picks
    one. With ``pushdown`` each filter runs as soon as its variable is bound,
    otherwise all filters run after the last join.
    """
    order = list(plan(q, g, initial) if order is None else order)
    if sorted(order) != list(range(len(q.patterns))):
        raise ValueError(f"order {order} is not a permutation of the patterns")
    bindings: list[Binding] = [dict(initial or {})]
    pending = list(q.filters)

    def apply_filters(rows, ready):
        nonlocal pending
        keep = [f for f in pending if f.left not in ready]
        now = [f for f in pending if f.left in ready]
        pending = keep
        if not now:
            return rows
        return [b for b in rows if all(f.test(b[f.left]) for f in now)]

    if pushdown:
        bindings = apply_filters(bindings, set(initial or ()))
    for i in order:
        bindings = [nb for b in bindings for nb in _extend(q.patterns[i], b, g)]
        if not bindings:
            break
        if pushdown:
            bindings = apply_filters(bindings, set(bindings[0]))
    if bindings:
        bindings = [b for b in bindings if all(f.test(b[f.left]) for f in pending)]
    rows = {tuple(b[v] for v in q.select) for b in bindings}
    return BindingTable(tuple(q.select), sorted(rows, key=lambda r: [t.n3() for t in r]))


def all_orders(q: QueryAst) -> list[tuple[int, ...]]:
    return list(permutations(range(len(q.patterns))))


class CqId(str, enum.Enum):
    CQ1_STORAGE_LOCATION = "CQ1_STORAGE_LOCATION"
    CQ2_MAX_12_MONTHS = "CQ2_MAX_12_MONTHS"
    CQ3_SECURITY_BY_DATATYPE = "CQ3_SECURITY_BY_DATATYPE"


@dataclass(frozen=True)
class BundledCq:
    id: CqId
    filename: str
    question: str
    parameter: str | None = None

    def text(self) -> str:
        return resources.files("oppokb").joinpath("queries").joinpath(self.filename).read_text("utf-8")


BUNDLED = {
    CqId.CQ1_STORAGE_LOCATION: BundledCq(
        CqId.CQ1_STORAGE_LOCATION, "cq1_storage_location.rq",
        "storage places (locations and entities) for a data class", parameter="dataClass",
    ),
    CqId.CQ2_MAX_12_MONTHS: BundledCq(
        CqId.CQ2_MAX_12_MONTHS, "cq2_max_12_months.rq",
        "data items whose retention is capped at twelve months or less",
    ),
    CqId.CQ3_SECURITY_BY_DATATYPE: BundledCq(
        CqId.CQ3_SECURITY_BY_DATATYPE, "cq3_security_by_datatype.rq",
        "security mechanisms protecting a data class", parameter="dataClass",
    ),
}

_ALIASES = {"1": CqId.CQ1_STORAGE_LOCATION, "2": CqId.CQ2_MAX_12_MONTHS, "3": CqId.CQ3_SECURITY_BY_DATATYPE}


class UnknownCqError(KeyError):
    pass


def resolve_cq(cq_id) -> CqId:
    """Accept a CqId, its name, or a short alias such as ``2`` or ``cq2``."""
    if isinstance(cq_id, CqId):
        return cq_id
    key = str(cq_id).strip()
    if key.upper() in CqId.__members__:
        return CqId[key.upper()]
    short = key.lower().removeprefix("cq")
    if short in _ALIASES:
        return _ALIASES[short]
    raise UnknownCqError(f"unknown competency question {cq_id!r}; known: {', '.join(CqId.__members__)}")


def run_cq(
    cq_id,
    g: Graph,
    data_class: Iri | None = None,
    prefixes: Mapping[str, str] | None = None,
) -> BindingTable:
    """Run a bundled competency question, optionally narrowed to a data class."""
    cq = BUNDLED[resolve_cq(cq_id)]
    q = parse_query(cq.text(), prefixes)
    initial = None
    if data_class is not None:
        if cq.parameter is None:
            raise ValueError(f"{cq.id.value} takes no data-class parameter")
        initial = {cq.parameter: data_class}
    return execute(q, g, initial=initial)
