"""Semi-naive forward chaining over a fixed RDFS/OWL-RL rule subset, and
consistency checking of the resulting closure.

Entailment regime: subclass and subproperty transitivity, type and property
inheritance, domain and range typing. There is no owl:sameAs, inverse or
chain support. Domain/range typing infers; it never rejects.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .namespaces import (
    OWL_DISJOINTWITH,
    RDF_TYPE,
    RDFS_DOMAIN,
    RDFS_RANGE,
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
)
from .schema import PropertyKind, Schema
from .store import Graph, merge
from .terms import XSD, Iri, Literal, Term, Triple, valid_lexical


class RuleId(enum.IntEnum):
    SCO_TRANS = 1
    TYPE_INHERIT = 2
    SPO_TRANS = 3
    PROP_INHERIT = 4
    DOM_TYPE = 5
    RNG_TYPE = 6
    DISJOINT_VIOLATION = 7
    DATATYPE_VIOLATION = 8


INFERENCE_RULES = (
    RuleId.SCO_TRANS,
    RuleId.TYPE_INHERIT,
    RuleId.SPO_TRANS,
    RuleId.PROP_INHERIT,
    RuleId.DOM_TYPE,
    RuleId.RNG_TYPE,
)


@dataclass(frozen=True)
class Derivation:
    conclusion: Triple
    rule: RuleId | None
    premises: tuple[Triple, ...] = ()

    @property
    def asserted(self) -> bool:
        return self.rule is None


class NotInClosureError(KeyError):
    pass


class Closure(Graph):
    """A materialized graph that remembers the round each triple first appeared in.

    Round 0 holds the input; round ``k`` triples were derived from premises
    of rounds ``< k``.
    """

    def __init__(self):
        super().__init__()
        self.rounds: dict[Triple, int] = {}

    @property
    def asserted(self) -> frozenset[Triple]:
        return frozenset(t for t, r in self.rounds.items() if r == 0)

    def inferred(self) -> list[Triple]:
        return sorted((t for t, r in self.rounds.items() if r > 0), key=Triple.sort_key)


def _is_datatype(term: Term) -> bool:
    return isinstance(term, Iri) and term.value.startswith(XSD)


def _make(s, p, o) -> Triple | None:
    # rule heads built from malformed schema triples are dropped
    if isinstance(s, Literal) or not isinstance(p, Iri):
        return None
    return Triple(s, p, o)


def fire(rule: RuleId, t: Triple, g: Graph) -> Iterator[tuple[Triple, tuple[Triple, Triple]]]:
    """All conclusions of ``rule`` having ``t`` as one premise and the other in ``g``.

    Yields ``(conclusion, (first_premise, second_premise))`` with premises in
    rule-body order.
    """
    s, p, o = t.subject, t.predicate, t.object
    if rule is RuleId.SCO_TRANS or rule is RuleId.SPO_TRANS:
        rel = RDFS_SUBCLASSOF if rule is RuleId.SCO_TRANS else RDFS_SUBPROPERTYOF
        if p == rel:
            for u in g.iter_match(o, rel, None):
                c = _make(s, rel, u.object)
                if c:
                    yield c, (t, u)
            for u in g.iter_match(None, rel, s):
                c = _make(u.subject, rel, o)
                if c:
                    yield c, (u, t)
    elif rule is RuleId.TYPE_INHERIT:
        if p == RDF_TYPE:
            for u in g.iter_match(o, RDFS_SUBCLASSOF, None):
                yield Triple(s, RDF_TYPE, u.object), (t, u)
        if p == RDFS_SUBCLASSOF:
            for u in g.iter_match(None, RDF_TYPE, s):
                yield Triple(u.subject, RDF_TYPE, o), (u, t)
    elif rule is RuleId.PROP_INHERIT:
        for u in g.iter_match(p, RDFS_SUBPROPERTYOF, None):
            c = _make(s, u.object, o)
            if c:
                yield c, (t, u)
        if p == RDFS_SUBPROPERTYOF and isinstance(s, Iri):
            for u in g.iter_match(None, s, None):
                c = _make(u.subject, o, u.object)
                if c:
                    yield c, (u, t)
    elif rule is RuleId.DOM_TYPE:
        for u in g.iter_match(p, RDFS_DOMAIN, None):
            yield Triple(s, RDF_TYPE, u.object), (t, u)
        if p == RDFS_DOMAIN and isinstance(s, Iri):
            for u in g.iter_match(None, s, None):
                yield Triple(u.subject, RDF_TYPE, o), (u, t)
    elif rule is RuleId.RNG_TYPE:
        if not isinstance(o, Literal):
            for u in g.iter_match(p, RDFS_RANGE, None):
                if not _is_datatype(u.object):
                    yield Triple(o, RDF_TYPE, u.object), (t, u)
        if p == RDFS_RANGE and isinstance(s, Iri) and not _is_datatype(o):
            for u in g.iter_match(None, s, None):
                if not isinstance(u.object, Literal):
                    yield Triple(u.object, RDF_TYPE, o), (u, t)


def materialize(data: Graph, schema_graph: Graph | None = None) -> Closure:
    """Least fixpoint of the inference rules over ``data`` plus ``schema_graph``.

    Each round only joins triples that are new since the previous round
    against the whole graph, so work is proportional to what changed. The
    returned closure is frozen.
    """
    source = merge(data, schema_graph) if schema_graph is not None else data
    closure = Closure()
    for t in source.triples():
        closure.insert(t)
        closure.rounds[t] = 0
    delta = sorted(closure.triples(), key=Triple.sort_key)
    rnd = 0
    while delta:
        rnd += 1
        fresh: dict[Triple, None] = {}
        for rule in INFERENCE_RULES:
            for t in delta:
                for conclusion, _ in fire(rule, t, closure):
                    if conclusion not in closure and conclusion not in fresh:
                        fresh[conclusion] = None
        for t in fresh:
            closure.insert(t)
            closure.rounds[t] = rnd
        delta = sorted(fresh, key=Triple.sort_key)
    return closure.freeze()


def explain(closure: Closure, t: Triple) -> list[Derivation]:
    """A derivation chain for ``t``, premises before conclusions.

    Asserted triples explain as a single premise-free Derivation. For derived
    triples, asserted leaves are not listed; each step picks the first rule
    (in RuleId order) and the first premise pair (canonical order) whose
    premises come from strictly earlier rounds.
    """
    if not isinstance(closure, Closure):
        raise TypeError("explain needs the Closure returned by materialize")
    if t not in closure:
        raise NotInClosureError(f"triple not in closure: {t.n3()}")
    if closure.rounds[t] == 0:
        return [Derivation(t, None, ())]
    chain: list[Derivation] = []
    done: set[Triple] = set()

    def visit(goal: Triple):
        if goal in done or closure.rounds[goal] == 0:
            return
        step = _first_derivation(closure, goal)
        for premise in step.premises:
            visit(premise)
        done.add(goal)
        chain.append(step)

    visit(t)
    return chain


def _first_derivation(closure: Closure, goal: Triple) -> Derivation:
    limit = closure.rounds[goal]
    for rule in INFERENCE_RULES:
        candidates = []
        for premise in _premise_candidates(rule, goal, closure):
            if closure.rounds.get(premise, limit) >= limit:
                continue
            for conclusion, premises in fire(rule, premise, closure):
                if conclusion == goal and all(closure.rounds[q] < limit for q in premises):
                    candidates.append(premises)
        if candidates:
            best = min(candidates, key=lambda ps: [q.sort_key() for q in ps])
            return Derivation(goal, rule, best)
    raise AssertionError(f"no derivation found for {goal.n3()}")


def _premise_candidates(rule: RuleId, goal: Triple, g: Graph) -> Iterable[Triple]:
    s, p, o = goal
    if rule in (RuleId.SCO_TRANS, RuleId.SPO_TRANS):
        return g.iter_match(s, p, None)
    if rule is RuleId.TYPE_INHERIT:
        return g.iter_match(s, RDF_TYPE, None) if p == RDF_TYPE else ()
    if rule is RuleId.PROP_INHERIT:
        return [u for u in g.iter_match(s, None, o) if u.predicate != p]
    if rule is RuleId.DOM_TYPE:
        return g.iter_match(s, None, None) if p == RDF_TYPE else ()
    if rule is RuleId.RNG_TYPE:
        return g.iter_match(None, None, s) if p == RDF_TYPE else ()
    return ()


@dataclass(frozen=True)
class Violation:
    rule: RuleId
    focus: Term
    details: tuple[Triple, ...]
    message: str = ""

    def sort_key(self):
        return (int(self.rule), self.focus.n3(), [t.sort_key() for t in self.details])


@dataclass
class ConsistencyReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "violations": [
                {
                    "rule": v.rule.name,
                    "focus": v.focus.n3(),
                    "message": v.message,
                    "details": [t.n3() for t in v.details],
                }
                for v in self.violations
            ],
        }


def check_consistency(closure: Graph, schema: Schema, strict_typing: bool = False) -> ConsistencyReport:
    """Disjointness and datatype checks over a materialized graph.

    With ``strict_typing``, a disjointness clash whose type was inferred from
    a domain or range axiom also lists the property-usage triple and the axiom
    responsible, so the offending edge can be found directly.
    """
    violations = []

    pairs = set(schema.disjoint_pairs())
    for t in closure.iter_match(None, OWL_DISJOINTWITH, None):
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            a, b = sorted((t.subject, t.object), key=str)
            pairs.add((a, b))
    types: dict[Term, set[Term]] = {}
    for t in closure.iter_match(None, RDF_TYPE, None):
        types.setdefault(t.subject, set()).add(t.object)
    for x, xt in types.items():
        for a, b in sorted(pairs, key=lambda ab: (ab[0].value, ab[1].value)):
            if a in xt and b in xt:
                details = [Triple(x, RDF_TYPE, a), Triple(x, RDF_TYPE, b)]
                if strict_typing and isinstance(closure, Closure):
                    details += _typing_causes(closure, details)
                violations.append(
                    Violation(
                        RuleId.DISJOINT_VIOLATION,
                        x,
                        tuple(details),
                        f"{x.n3()} is an instance of disjoint classes {a.n3()} and {b.n3()}",
                    )
                )

    ranges: dict[Iri, Iri] = {
        p.iri: p.range for p in schema.properties.values() if p.kind is PropertyKind.DATA
    }
    for t in closure.iter_match(None, RDFS_RANGE, None):
        if _is_datatype(t.object) and isinstance(t.subject, Iri):
            ranges.setdefault(t.subject, t.object)
    for prop in sorted(ranges, key=str):
        dt = ranges[prop]
        for t in closure.iter_match(None, prop, None):
            obj = t.object
            if not isinstance(obj, Literal):
                msg = f"{prop.n3()} expects a {dt.n3()} literal, got {obj.n3()}"
            elif not valid_lexical(obj.lexical, dt.value):
                msg = f"{obj.n3()} is not a valid {dt.n3()} value for {prop.n3()}"
            else:
                continue
            violations.append(Violation(RuleId.DATATYPE_VIOLATION, t.subject, (t,), msg))

    violations.sort(key=Violation.sort_key)
    return ConsistencyReport(violations)


def _typing_causes(closure: Closure, type_triples: list[Triple]) -> list[Triple]:
    out = []
    for tt in type_triples:
        if closure.rounds.get(tt, 0) == 0:
            continue
        for step in explain(closure, tt):
            if step.rule in (RuleId.DOM_TYPE, RuleId.RNG_TYPE):
                for q in step.premises:
                    if q not in out and q not in type_triples:
                        out.append(q)
    return out
