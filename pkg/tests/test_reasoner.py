import random
from collections import Counter

import pytest

from oppokb.namespaces import (
    OWL_DISJOINTWITH,
    RDF_TYPE,
    RDFS_DOMAIN,
    RDFS_RANGE,
    RDFS_SUBCLASSOF,
    RDFS_SUBPROPERTYOF,
)
from oppokb.reasoner import (
    Closure,
    NotInClosureError,
    RuleId,
    check_consistency,
    explain,
    materialize,
)
from oppokb.schema import Schema
from oppokb.store import Graph, merge
from oppokb.terms import BlankNode, Iri, Literal, Triple
from oppokb.turtle import parse_file

from conftest import DATA_DIR
from oracles import naive_closure, rendered

EX = "http://example.org/r#"
XSD_INT = Iri("http://www.w3.org/2001/XMLSchema#integer")


def ex(name):
    return Iri(EX + name)


def random_kb(rng, max_triples=50):
    """Random data over a 10-class hierarchy with a few properties and axioms."""
    classes = [ex(f"C{i}") for i in range(10)]
    props = [ex(f"p{i}") for i in range(4)]
    people = [ex(f"i{i}") for i in range(6)] + [BlankNode(0), BlankNode(1)]
    g = Graph()
    # the hierarchy: mostly downward edges, occasionally a back edge making a cycle
    for i in range(1, 10):
        g.add(classes[i], RDFS_SUBCLASSOF, classes[rng.randrange(i)])
    if rng.random() < 0.2:
        a, b = rng.sample(classes, 2)
        g.add(a, RDFS_SUBCLASSOF, b)
    while len(g) < max_triples:
        roll = rng.random()
        if roll < 0.35:
            g.add(rng.choice(people), RDF_TYPE, rng.choice(classes))
        elif roll < 0.65:
            obj = rng.choice(people + [Literal.of(rng.randrange(5))])
            g.add(rng.choice(people), rng.choice(props), obj)
        elif roll < 0.75:
            g.add(rng.choice(props), RDFS_SUBPROPERTYOF, rng.choice(props))
        elif roll < 0.85:
            g.add(rng.choice(props), RDFS_DOMAIN, rng.choice(classes))
        elif roll < 0.95:
            g.add(rng.choice(props), RDFS_RANGE, rng.choice(classes + [XSD_INT]))
        else:
            g.add(rng.choice(classes), RDFS_SUBCLASSOF, rng.choice(classes))
        if rng.random() < 0.05:
            break
    return g


def test_semi_naive_equals_naive_fixpoint():
    rng = random.Random(1234)
    for _ in range(100):
        g = random_kb(rng)
        assert len(g) <= 50
        assert rendered(materialize(g)) == naive_closure(rendered(g))


def test_schema_split_matches_single_graph():
    rng = random.Random(99)
    for _ in range(20):
        g = random_kb(rng)
        data = Graph(t for t in g if t.predicate == RDF_TYPE or t.predicate.value.startswith(EX))
        axioms = Graph(t for t in g if t not in data)
        assert rendered(materialize(data, axioms)) == rendered(materialize(g))


def test_closure_contains_input_and_is_frozen():
    g = random_kb(random.Random(3))
    c = materialize(g)
    assert isinstance(c, Closure) and c.frozen
    assert g.triples() <= c.triples()
    assert c.asserted == g.triples()


def test_monotonicity():
    rng = random.Random(17)
    for _ in range(30):
        h = random_kb(rng)
        g = Graph(t for t in h if rng.random() < 0.6)
        assert materialize(g).triples() <= materialize(h).triples()


def test_idempotence():
    rng = random.Random(21)
    for _ in range(30):
        c = materialize(random_kb(rng))
        assert materialize(c) == c


def test_every_inferred_triple_has_grounded_explanation():
    rng = random.Random(5)
    for _ in range(15):
        c = materialize(random_kb(rng))
        asserted = c.asserted
        for t in c.inferred():
            chain = explain(c, t)
            assert chain[-1].conclusion == t
            proven = set(asserted)
            for step in chain:
                assert step.rule is not None and step.premises
                assert all(q in c for q in step.premises)
                assert all(q in proven for q in step.premises)
                proven.add(step.conclusion)


def test_minor_role_inference(schema, schema_graph):
    u1 = Triple(ex("u1"), RDF_TYPE, schema.iri("oppo:MinorDataSubjectRole"))
    c = materialize(Graph([u1]), schema_graph)
    assert Triple(ex("u1"), RDF_TYPE, schema.iri("oppo:DataSubjectRole")) in c
    legal = Triple(ex("u1"), RDF_TYPE, schema.iri("omrse:LegalPersonRole"))
    assert legal in c
    chain = explain(c, legal)
    assert [d.rule for d in chain] == [RuleId.TYPE_INHERIT, RuleId.TYPE_INHERIT]
    assert chain[0].conclusion == Triple(ex("u1"), RDF_TYPE, schema.iri("oppo:DataSubjectRole"))


def test_domain_and_range_typing(schema, schema_graph):
    c = materialize(Graph([Triple(ex("p1"), schema.iri("oppo:appliesTo"), ex("d1"))]), schema_graph)
    assert Triple(ex("p1"), RDF_TYPE, schema.iri("oppo:SecurityMechanism")) in c
    assert Triple(ex("d1"), RDF_TYPE, schema.iri("iao:DataItem")) in c


def test_literal_objects_and_datatype_ranges_are_not_typed(schema, schema_graph):
    dur = Triple(ex("dur"), schema.iri("oppo:hasMaxDurationMonths"), Literal.of(12))
    c = materialize(Graph([dur]), schema_graph)
    assert not c.match(Literal.of(12), None, None)
    assert not c.match(None, RDF_TYPE, XSD_INT)


def test_empty_data_adds_no_instance_triples(schema_graph):
    c = materialize(Graph(), schema_graph)
    assert not c.match(None, RDF_TYPE, None)


def test_explain_asserted_and_absent(closure, telegram):
    t = next(iter(telegram[0]))
    assert [(d.rule, d.premises) for d in explain(closure, t)] == [(None, ())]
    with pytest.raises(NotInClosureError):
        explain(closure, Triple(ex("nope"), RDF_TYPE, ex("Nothing")))


def test_explain_is_deterministic(closure):
    for t in closure.inferred()[:50]:
        assert explain(closure, t) == explain(closure, t)


# consistency -----------------------------------------------------------------

def test_fixture_is_consistent(closure, schema):
    report = check_consistency(closure, schema)
    assert report.consistent and report.violations == []


def test_injected_clash_is_one_disjoint_violation(clash_closure, schema):
    report = check_consistency(clash_closure, schema)
    assert not report.consistent
    assert [(v.rule, v.focus) for v in report.violations] == [
        (RuleId.DISJOINT_VIOLATION, Iri("https://example.org/telegram#d9"))
    ]


def disjoint_oracle(closure, schema):
    # brute force over the schema's transitive superclasses, no closure lookups
    found = set()
    asserted = {}
    for t in closure.asserted:
        if t.predicate == RDF_TYPE:
            asserted.setdefault(t.subject, set()).update(schema.superclasses(t.object))
    for x, types in asserted.items():
        for a, b in schema.disjoint_pairs():
            if a in types and b in types:
                found.add(x)
    return found


def test_disjointness_matches_ancestor_oracle(schema, schema_graph):
    rng = random.Random(8)
    names = sorted(schema.classes, key=str)
    for _ in range(30):
        g = Graph()
        for i in range(8):
            for c in rng.sample(names, 2):
                g.add(ex(f"x{i}"), RDF_TYPE, c)
        c = materialize(g, schema_graph)
        got = {v.focus for v in check_consistency(c, schema).violations}
        assert got == disjoint_oracle(c, schema)


def test_empty_closure_is_consistent(schema):
    assert check_consistency(materialize(Graph()), schema).consistent


def test_datatype_violation(schema, schema_graph):
    g = Graph([
        Triple(ex("dur"), schema.iri("oppo:hasMaxDurationMonths"), Literal("twelve")),
        Triple(ex("dur2"), schema.iri("oppo:hasMaxDurationMonths"), ex("notALiteral")),
        Triple(ex("ok"), schema.iri("oppo:hasMaxDurationMonths"), Literal.of(3)),
    ])
    report = check_consistency(materialize(g, schema_graph), schema)
    assert {(v.rule, v.focus) for v in report.violations} == {
        (RuleId.DATATYPE_VIOLATION, ex("dur")),
        (RuleId.DATATYPE_VIOLATION, ex("dur2")),
    }
    assert len(report.violations) == 2


def test_disjointness_declared_in_data_graph():
    g = Graph([
        Triple(ex("A"), OWL_DISJOINTWITH, ex("B")),
        Triple(ex("x"), RDF_TYPE, ex("A")),
        Triple(ex("x"), RDF_TYPE, ex("B")),
    ])
    report = check_consistency(materialize(g), Schema())
    assert [v.rule for v in report.violations] == [RuleId.DISJOINT_VIOLATION]


def test_strict_typing_only_adds_detail(schema, schema_graph):
    g = Graph([
        Triple(ex("d"), RDF_TYPE, schema.iri("oppo:AnonymizedData")),
        Triple(ex("d"), RDF_TYPE, schema.iri("oppo:IndividualData")),
        Triple(ex("agg"), RDF_TYPE, schema.iri("oppo:AggregatedData")),
        Triple(ex("stats"), schema.iri("oppo:isAbout"), ex("agg")),
    ])
    c = materialize(g, schema_graph)
    plain = check_consistency(c, schema)
    strict = check_consistency(c, schema, strict_typing=True)
    assert [v.focus for v in plain.violations] == [v.focus for v in strict.violations]
    for v_plain, v_strict in zip(plain.violations, strict.violations):
        assert set(v_plain.details) <= set(v_strict.details)


def test_strict_typing_adds_domain_premises(schema, schema_graph):
    dom = Triple(ex("q"), RDFS_DOMAIN, schema.iri("oppo:PersonalData"))
    use = Triple(ex("d"), ex("q"), ex("v"))
    g = Graph([Triple(ex("d"), RDF_TYPE, schema.iri("oppo:AnonymizedData")), dom, use])
    c = materialize(g, schema_graph)
    [v] = check_consistency(c, schema, strict_typing=True).violations
    assert use in v.details and dom in v.details
    [v0] = check_consistency(c, schema).violations
    assert use not in v0.details


def test_consistency_is_order_insensitive(schema, schema_graph, telegram):
    rng = random.Random(13)
    clash, _ = parse_file(DATA_DIR / "clash.ttl")
    triples = list(merge(telegram[0], clash))
    baseline = None
    for _ in range(5):
        rng.shuffle(triples)
        report = check_consistency(materialize(Graph(triples), schema_graph), schema)
        bag = Counter((v.rule, v.focus, v.details) for v in report.violations)
        baseline = baseline or bag
        assert bag == baseline
