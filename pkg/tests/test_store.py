import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oppokb.store import FrozenGraphError, Graph, isomorphic, merge
from oppokb.terms import BlankNode, Iri, Literal, Triple, WellFormednessError

from oracles import rendered, scan

EX = "http://example.org/"
RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")


def ex(name):
    return Iri(EX + name)


def random_term(rng, position, blanks=True):
    roll = rng.random()
    if position == "p":
        return ex(f"p{rng.randrange(6)}")
    if blanks and roll < 0.15:
        return BlankNode(rng.randrange(5))
    if position == "o" and roll < 0.35:
        return Literal.of(rng.choice([rng.randrange(-3, 20), f"s{rng.randrange(4)}", rng.random() < 0.5]))
    return ex(f"n{rng.randrange(40)}")


def random_triple(rng, blanks=True):
    return Triple(random_term(rng, "s", blanks), random_term(rng, "p"), random_term(rng, "o", blanks))


def random_graph(rng, n, blanks=True):
    g = Graph()
    for _ in range(n):
        g.insert(random_triple(rng, blanks))
    return g


# terms ----------------------------------------------------------------------

def test_iri_must_be_absolute_and_clean():
    with pytest.raises(WellFormednessError):
        Iri("relative")
    with pytest.raises(WellFormednessError):
        Iri("http://example.org/a b")
    with pytest.raises(WellFormednessError):
        Iri("")


@pytest.mark.parametrize("lexical,dt", [
    ("12", "integer"), ("-3", "integer"), ("+0", "integer"), ("true", "boolean"), ("anything", "string"),
])
def test_valid_literals(lexical, dt):
    lit = Literal(lexical, Iri(f"http://www.w3.org/2001/XMLSchema#{dt}"))
    assert lit.lexical == lexical


@pytest.mark.parametrize("lexical,dt", [("1.5", "integer"), ("twelve", "integer"), ("True", "boolean")])
def test_invalid_literal_lexical_forms(lexical, dt):
    with pytest.raises(WellFormednessError):
        Literal(lexical, Iri(f"http://www.w3.org/2001/XMLSchema#{dt}"))


def test_positional_rules():
    with pytest.raises(WellFormednessError):
        Triple(Literal("x"), ex("p"), ex("o"))
    with pytest.raises(WellFormednessError):
        Triple(ex("s"), Literal("p"), ex("o"))
    with pytest.raises(WellFormednessError):
        Triple(ex("s"), BlankNode(1), ex("o"))
    Triple(BlankNode(0), ex("p"), Literal.of(3))


# insert / match ---------------------------------------------------------------

def test_insert_is_set_semantics():
    g = Graph()
    t = Triple(ex("policy1"), ex("hasDataPractice"), ex("practice1"))
    assert g.insert(t) is True
    assert g.insert(t) is False
    assert len(g) == 1


def test_insert_rejects_malformed_triple():
    g = Graph()
    with pytest.raises(WellFormednessError):
        g.add(ex("s"), Literal("p"), ex("o"))
    assert len(g) == 0


def test_match_empty_and_wildcards():
    g = Graph()
    assert g.match(None, RDF_TYPE, ex("PersonalData")) == []
    ts = [Triple(ex(c), ex("p"), ex("o")) for c in "cab"]
    g.update(ts)
    assert g.match() == sorted(ts, key=Triple.sort_key)


def test_match_equals_linear_scan_oracle():
    rng = random.Random(7)
    g = random_graph(rng, 1000)
    flat = sorted(rendered(g))
    assert len(g) == len(flat)
    for _ in range(100):
        probe = random_triple(rng)
        mask = rng.randrange(8)
        s = probe.subject if mask & 1 else None
        p = probe.predicate if mask & 2 else None
        o = probe.object if mask & 4 else None
        got = [(t.subject.n3(), t.predicate.n3(), t.object.n3()) for t in g.match(s, p, o)]
        want = scan(flat, s and s.n3(), p and p.n3(), o and o.n3())
        assert got == want
        assert g.estimate(s, p, o) >= len(want)


def test_audit_after_interleaved_inserts_and_merges():
    rng = random.Random(11)
    g = Graph()
    for step in range(30):
        if step % 3 == 2:
            g = merge(g, random_graph(rng, 20))
        else:
            g.insert(random_triple(rng))
        assert g.audit() == []


def test_frozen_graph_rejects_writes_but_copy_does_not():
    g = Graph([Triple(ex("a"), ex("p"), ex("b"))]).freeze()
    with pytest.raises(FrozenGraphError):
        g.add(ex("a"), ex("p"), ex("c"))
    h = g.copy()
    assert h.add(ex("a"), ex("p"), ex("c"))
    assert len(g) == 1


# merge -----------------------------------------------------------------------

def test_merge_identity_and_idempotence_without_blanks():
    g = random_graph(random.Random(3), 50, blanks=False)
    assert merge(g, Graph()) == g
    assert merge(g, g) == g


def test_merge_renames_blanks_apart():
    g = Graph([Triple(BlankNode(0), ex("p"), ex("x"))])
    h = Graph([Triple(BlankNode(0), ex("p"), ex("y"))])
    m = merge(g, h)
    assert len(m) == 2
    assert len({t.subject for t in m}) == 2


def _standardize(graph, tag):
    # blank nodes become graph-tagged names so the union cannot conflate them
    return {tuple(f"{tag}{x}" if x.startswith("_:") else x for x in t) for t in rendered(graph)}


def test_merge_size_matches_union_oracle():
    rng = random.Random(5)
    for _ in range(25):
        g, h = random_graph(rng, 40), random_graph(rng, 40)
        m = merge(g, h)
        assert len(m) == len(_standardize(g, "g") | _standardize(h, "h"))
        assert m.audit() == []


def test_size_equals_distinct_renderings():
    g = random_graph(random.Random(9), 300)
    assert len(g) == len(rendered(g))


# isomorphism -------------------------------------------------------------------

def test_isomorphism_ignores_blank_labels():
    g = Graph([Triple(BlankNode(0), ex("p"), BlankNode(1)), Triple(BlankNode(1), ex("q"), ex("z"))])
    h = Graph([Triple(BlankNode(7), ex("p"), BlankNode(3)), Triple(BlankNode(3), ex("q"), ex("z"))])
    bad = Graph([Triple(BlankNode(7), ex("p"), BlankNode(3)), Triple(BlankNode(7), ex("q"), ex("z"))])
    assert isomorphic(g, h)
    assert not isomorphic(g, bad)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 30))
def test_insertion_order_never_changes_contents(seed, n):
    rng = random.Random(seed)
    ts = [random_triple(rng) for _ in range(n)]
    shuffled = ts[:]
    rng.shuffle(shuffled)
    assert Graph(ts) == Graph(shuffled)
    assert list(Graph(ts)) == list(Graph(shuffled))
