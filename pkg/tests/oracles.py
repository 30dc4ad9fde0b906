"""Reference implementations used as test oracles.

These work on plain N-Triples-style strings and share no code with the
package, so a bug in the indexed store, the semi-naive loop or the join
planner cannot hide itself by also living in the oracle.
"""

from __future__ import annotations

import itertools
import re

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"

TYPE = f"<{RDF}type>"
SCO = f"<{RDFS}subClassOf>"
SPO = f"<{RDFS}subPropertyOf>"
DOM = f"<{RDFS}domain>"
RNG = f"<{RDFS}range>"

_INT = re.compile(r'^"([+-]?\d+)"\^\^<' + re.escape(XSD) + r"integer>$")


def is_literal(term: str) -> bool:
    return term.startswith('"')


def is_iri(term: str) -> bool:
    return term.startswith("<")


def rendered(graph) -> set[tuple[str, str, str]]:
    return {(t.subject.n3(), t.predicate.n3(), t.object.n3()) for t in graph}


# linear scan -----------------------------------------------------------------

def scan(triples, s=None, p=None, o=None):
    out = [t for t in triples if (s is None or t[0] == s) and (p is None or t[1] == p)
           and (o is None or t[2] == o)]
    return sorted(out)


# naive fixpoint --------------------------------------------------------------

def naive_closure(triples) -> set[tuple[str, str, str]]:
    """Re-run every rule over the whole set until nothing changes."""
    g = set(triples)
    while True:
        new = set()
        for (a, p1, b) in g:
            for (c, p2, d) in g:
                if p1 == SCO and p2 == SCO and b == c:
                    new.add((a, SCO, d))
                if p1 == SPO and p2 == SPO and b == c:
                    new.add((a, SPO, d))
                if p1 == TYPE and p2 == SCO and b == c:
                    new.add((a, TYPE, d))
                if p2 == SPO and c == p1 and is_iri(d):
                    new.add((a, d, b))
                if p2 == DOM and c == p1:
                    new.add((a, TYPE, d))
                if p2 == RNG and c == p1 and not is_literal(b) and not d.startswith("<" + XSD):
                    new.add((b, TYPE, d))
        if new <= g:
            return g
        g |= new


# nested-loop join --------------------------------------------------------------

def _filter_ok(value: str, op: str, const) -> bool:
    ops = {
        "=": lambda a, b: a == b, "!=": lambda a, b: a != b,
        "<": lambda a, b: a < b, "<=": lambda a, b: a <= b,
        ">": lambda a, b: a > b, ">=": lambda a, b: a >= b,
    }
    if isinstance(const, int):
        m = _INT.match(value)
        return bool(m) and ops[op](int(m.group(1)), const)
    if not is_literal(value) or "^^" in value:
        return False  # only plain xsd:string literals compare with strings
    body = value[1:-1].replace('\\"', '"').replace("\\\\", "\\")
    return ops[op](body, const)


def nested_loop(triples, patterns, select, filters, order):
    """Join ``patterns`` (tuples of '?var' or rendered constants) in ``order``."""
    rows = [{}]
    for i in order:
        pat = patterns[i]
        nxt = []
        for b in rows:
            for t in triples:
                nb = dict(b)
                ok = True
                for slot, val in zip(pat, t):
                    if slot.startswith("?"):
                        if nb.setdefault(slot, val) != val:
                            ok = False
                            break
                    elif slot != val:
                        ok = False
                        break
                if ok:
                    nxt.append(nb)
        rows = nxt
    rows = [b for b in rows if all(_filter_ok(b[v], op, c) for v, op, c in filters)]
    return sorted({tuple(b[v] for v in select) for b in rows})


def nested_loop_all_orders(triples, patterns, select, filters):
    results = {tuple(nested_loop(triples, patterns, select, filters, order))
               for order in itertools.permutations(range(len(patterns)))}
    assert len(results) == 1, "oracle itself is order dependent"
    return list(results.pop())


# schema triple count -----------------------------------------------------------

def expected_schema_triples(schema) -> int:
    """Count what schema_to_graph should emit straight from the definitions."""
    n = 0
    pairs = set()
    for c in schema.classes.values():
        n += 1 if c.label else 0
        n += len(c.parents)
        n += 1 if c.definition else 0
        for d in c.disjoint_with:
            pairs.add(frozenset((c.iri.value, d.value)))
    n += len(pairs)
    for p in schema.properties.values():
        n += (1 if p.label else 0) + 2 + len(getattr(p, "parents", ()))
    return n
