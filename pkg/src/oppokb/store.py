"""In-memory triple store with S, P, O, SP and PO indexes."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, Optional

from .terms import BlankNode, Term, Triple, WellFormednessError

Pattern = tuple[Optional[Term], Optional[Term], Optional[Term]]


class FrozenGraphError(RuntimeError):
    pass


class Graph:
    """A set of triples.

    Blank node ids are scoped to the graph; :meth:`new_blank` hands out ids
    above every id seen so far, which is what :func:`merge` relies on to
    rename another graph's blanks apart.
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: set[Triple] = set()
        self._s: dict[Term, set[Triple]] = defaultdict(set)
        self._p: dict[Term, set[Triple]] = defaultdict(set)
        self._o: dict[Term, set[Triple]] = defaultdict(set)
        self._sp: dict[tuple[Term, Term], set[Triple]] = defaultdict(set)
        self._po: dict[tuple[Term, Term], set[Triple]] = defaultdict(set)
        self._next_blank = 0
        self._frozen = False
        for t in triples:
            self.insert(t)

    def __len__(self):
        return len(self._triples)

    def __contains__(self, t):
        return t in self._triples

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=Triple.sort_key))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __repr__(self):
        return f"<{type(self).__name__} with {len(self)} triples>"

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> "Graph":
        """Forbid further writes; returns ``self`` so it can be shared for reads."""
        self._frozen = True
        return self

    def copy(self) -> "Graph":
        g = Graph()
        for t in self._triples:
            g.insert(t)
        g._next_blank = self._next_blank
        return g

    def triples(self) -> frozenset[Triple]:
        return frozenset(self._triples)

    def new_blank(self) -> BlankNode:
        b = BlankNode(self._next_blank)
        self._next_blank += 1
        return b

    @property
    def blank_bound(self) -> int:
        """One more than the largest blank node id in use (0 when there are none)."""
        return self._next_blank

    def insert(self, t: Triple) -> bool:
        if self._frozen:
            raise FrozenGraphError("graph is frozen")
        if not isinstance(t, Triple):
            raise WellFormednessError(f"not a triple: {t!r}")
        if t in self._triples:
            return False
        self._triples.add(t)
        s, p, o = t.subject, t.predicate, t.object
        self._s[s].add(t)
        self._p[p].add(t)
        self._o[o].add(t)
        self._sp[s, p].add(t)
        self._po[p, o].add(t)
        for term in (s, o):
            if isinstance(term, BlankNode) and term.id >= self._next_blank:
                self._next_blank = term.id + 1
        return True

    def add(self, s: Term, p: Term, o: Term) -> bool:
        return self.insert(Triple(s, p, o))

    def update(self, triples: Iterable[Triple]) -> int:
        return sum(self.insert(t) for t in triples)

    def _candidates(self, s, p, o) -> Iterable[Triple]:
        if s is not None and p is not None:
            return self._sp.get((s, p), ())
        if p is not None and o is not None:
            return self._po.get((p, o), ())
        if s is not None and o is not None:
            a, b = self._s.get(s, ()), self._o.get(o, ())
            return a if len(a) <= len(b) else b
        if s is not None:
            return self._s.get(s, ())
        if p is not None:
            return self._p.get(p, ())
        if o is not None:
            return self._o.get(o, ())
        return self._triples

    def iter_match(self, s=None, p=None, o=None) -> Iterator[Triple]:
        """Unordered version of :meth:`match`; cheaper for internal joins."""
        for t in self._candidates(s, p, o):
            if (s is None or t.subject == s) and (p is None or t.predicate == p) and (
                o is None or t.object == o
            ):
                yield t

    def match(self, s=None, p=None, o=None) -> list[Triple]:
        """Triples unifying with the pattern (``None`` is a wildcard), sorted canonically."""
        return sorted(self.iter_match(s, p, o), key=Triple.sort_key)

    def estimate(self, s=None, p=None, o=None) -> int:
        """Upper bound on ``len(match(s, p, o))`` read off the chosen index."""
        return len(self._candidates(s, p, o))

    def subjects(self, p=None, o=None) -> set[Term]:
        return {t.subject for t in self.iter_match(None, p, o)}

    def objects(self, s=None, p=None) -> set[Term]:
        return {t.object for t in self.iter_match(s, p, None)}

    def value(self, s=None, p=None):
        """Smallest object (canonical order) for ``(s, p, ?)``, or None."""
        objs = self.objects(s, p)
        return min(objs, key=lambda x: x.n3()) if objs else None

    def audit(self) -> list[str]:
        """Compare every index against the triple set; returns a list of problems."""
        problems = []
        indexes = {
            "S": (self._s, lambda t: t.subject),
            "P": (self._p, lambda t: t.predicate),
            "O": (self._o, lambda t: t.object),
            "SP": (self._sp, lambda t: (t.subject, t.predicate)),
            "PO": (self._po, lambda t: (t.predicate, t.object)),
        }
        for name, (index, key) in indexes.items():
            rebuilt = defaultdict(set)
            for t in self._triples:
                rebuilt[key(t)].add(t)
            live = {k: v for k, v in index.items() if v}
            if live != dict(rebuilt):
                problems.append(f"index {name} out of sync with triple set")
        return problems


def merge(g: Graph, h: Graph) -> Graph:
    """Set union of two graphs; blank nodes of ``h`` are renamed apart from ``g``'s."""
    out = g.copy()
    offset = g.blank_bound

    def rename(term):
        return BlankNode(term.id + offset) if isinstance(term, BlankNode) else term

    for t in h.triples():
        out.insert(Triple(rename(t.subject), t.predicate, rename(t.object)))
    return out


def _blanks(g: Graph) -> set[BlankNode]:
    out = set()
    for t in g.triples():
        for term in (t.subject, t.object):
            if isinstance(term, BlankNode):
                out.add(term)
    return out


def isomorphic(g: Graph, h: Graph) -> bool:
    """Graph equality up to a bijective renaming of blank nodes.

    Candidate blanks are bucketed by a degree signature and the remaining
    ambiguity is resolved by backtracking, which is fine for the small
    blank-node counts found in policy data.
    """
    if len(g) != len(h):
        return False
    bg, bh = _blanks(g), _blanks(h)
    if len(bg) != len(bh):
        return False
    ground_g = {t for t in g.triples() if not _has_blank(t)}
    ground_h = {t for t in h.triples() if not _has_blank(t)}
    if ground_g != ground_h:
        return False
    if not bg:
        return True

    def signature(graph, b):
        out = sorted(
            ("s", t.predicate.n3(), _shape(t.object)) for t in graph.iter_match(b, None, None)
        ) + sorted(("o", t.predicate.n3(), _shape(t.subject)) for t in graph.iter_match(None, None, b))
        return tuple(out)

    sig_g = {b: signature(g, b) for b in bg}
    sig_h = {b: signature(h, b) for b in bh}
    if sorted(sig_g.values()) != sorted(sig_h.values()):
        return False
    order = sorted(bg, key=lambda b: (sig_g[b], b.id))
    target = h.triples()
    blank_g = [t for t in g.triples() if _has_blank(t)]

    def consistent(mapping):
        for t in blank_g:
            s, o = t.subject, t.object
            if isinstance(s, BlankNode):
                if s not in mapping:
                    continue
                s = mapping[s]
            if isinstance(o, BlankNode):
                if o not in mapping:
                    continue
                o = mapping[o]
            if Triple(s, t.predicate, o) not in target:
                return False
        return True

    def search(i, mapping, used):
        if i == len(order):
            return True
        b = order[i]
        for c in bh:
            if c in used or sig_h[c] != sig_g[b]:
                continue
            mapping[b] = c
            used.add(c)
            if consistent(mapping) and search(i + 1, mapping, used):
                return True
            del mapping[b]
            used.discard(c)
        return False

    return search(0, {}, set())


def _has_blank(t: Triple) -> bool:
    return isinstance(t.subject, BlankNode) or isinstance(t.object, BlankNode)


def _shape(term: Term) -> str:
    return "_" if isinstance(term, BlankNode) else term.n3()
