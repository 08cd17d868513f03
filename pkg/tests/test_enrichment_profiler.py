"""Schema merging, typing enrichment and data profiling."""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from shacl_dqa.enrichment import OWL_NAMED_INDIVIDUAL, RDF_PROPERTY, RDFS_CLASS, enrich
from shacl_dqa.profiler import SCHEMA_TYPES, is_metadata_graph, profile
from shacl_dqa.rdf.graph import Graph
from shacl_dqa.rdf.terms import OWL, RDF, RDFS, XSD, BNode, IRI, Literal
from shacl_dqa.rdf.turtle import parse_turtle

EX = "http://ex.org/"
TYPE = IRI(RDF + "type")
HEAD = f"@prefix ex: <{EX}> . @prefix rdfs: <{RDFS}> . @prefix owl: <{OWL}> . @prefix xsd: <{XSD}> .\n"


def ex(name):
    return IRI(EX + name)


def ttl(body, doc=1):
    return parse_turtle(HEAD + body, doc=doc)


SCHEMA = """
ex:Person a owl:Class .
ex:Country a owl:Class .
ex:Age a rdfs:Datatype .
ex:knows a owl:ObjectProperty, owl:IrreflexiveProperty .
ex:isbn a owl:InverseFunctionalProperty .
ex:name rdfs:domain ex:Person .
ex:France a ex:Country .
ex:Thing1 a ex:Undeclared .
"""


# -- enrichment ------------------------------------------------------------

def test_owl_class_becomes_rdfs_class():
    out, _ = enrich(Graph(), [ttl("ex:C a owl:Class .")])
    assert (ex("C"), TYPE, RDFS_CLASS) in out


def test_datatype_becomes_rdfs_class():
    out, _ = enrich(Graph(), [ttl("ex:D a rdfs:Datatype .")])
    assert (ex("D"), TYPE, RDFS_CLASS) in out


def test_property_flavours_and_domain_subjects():
    out, report = enrich(ttl("ex:a ex:knows ex:b ."), [ttl(SCHEMA, doc=2)])
    for p in ("knows", "isbn", "name"):
        assert (ex(p), TYPE, RDF_PROPERTY) in out
    assert report.property_typings == 3


def test_named_individuals_need_a_declared_class():
    out, report = enrich(Graph(), [ttl(SCHEMA, doc=2)])
    assert (ex("France"), TYPE, OWL_NAMED_INDIVIDUAL) in out
    assert (ex("Thing1"), TYPE, OWL_NAMED_INDIVIDUAL) not in out
    assert (ex("Person"), TYPE, OWL_NAMED_INDIVIDUAL) not in out
    assert report.individual_typings == 1


def test_data_instances_are_not_individuals():
    out, _ = enrich(ttl("ex:alice a ex:Person ."), [ttl(SCHEMA, doc=2)])
    assert (ex("alice"), TYPE, OWL_NAMED_INDIVIDUAL) not in out


def test_re_enrichment_adds_nothing():
    schema = ttl(SCHEMA, doc=2)
    once, _ = enrich(ttl("ex:a ex:knows ex:b ."), [schema])
    twice, report = enrich(once, [schema])
    assert set(twice.match()) == set(once.match())
    assert (report.class_typings, report.property_typings, report.individual_typings) == (0, 0, 0)


def test_report_counts_the_growth():
    data = ttl("ex:a ex:knows ex:b .")
    out, report = enrich(data, [ttl(SCHEMA, doc=2)])
    assert report.total_added == len(out) - len(data)


def test_inputs_are_untouched():
    data, schema = ttl("ex:a a ex:Person ."), ttl(SCHEMA, doc=2)
    before = (set(data.match()), set(schema.match()))
    enrich(data, [schema])
    assert (set(data.match()), set(schema.match())) == before


_terms = st.sampled_from([ex(c) for c in "abcd"] + [BNode("x")])
_types = st.sampled_from([IRI(OWL + n) for n in ("Class", "ObjectProperty", "DatatypeProperty", "FunctionalProperty")]
                         + [IRI(RDFS + "Datatype"), IRI(RDFS + "Class"), ex("a"), ex("b")])
_preds = st.sampled_from([TYPE, IRI(RDFS + "domain"), IRI(RDFS + "range"), ex("p")])
_triple = st.one_of(st.tuples(_terms, st.just(TYPE), _types), st.tuples(_terms, _preds, _terms))


@settings(max_examples=150, deadline=None)
@given(st.lists(_triple, max_size=15), st.lists(st.lists(_triple, max_size=10), max_size=2))
def test_enrichment_properties(data, schemas):
    g = Graph(data)
    sgs = [Graph(s) for s in schemas]
    out, report = enrich(g, sgs)
    merged = set(data).union(*[set(s) for s in schemas])
    assert merged <= set(out.match())
    again, rep2 = enrich(out, sgs)
    assert set(again.match()) == set(out.match())
    assert rep2.total_added == 0
    assert report.total_added == len(out) - len(g)
    for p in (IRI(RDFS + "domain"), IRI(RDFS + "range")):
        for s in out.subjects_of(p):
            assert (s, TYPE, RDF_PROPERTY) in out


# -- profiling -------------------------------------------------------------

def test_empty_profile():
    p = profile(Graph())
    assert (p.triple_count, p.entity_count) == (0, 0)
    assert not p.used_classes and not p.used_properties and not p.subjects_per_property
    assert not p.entities_with_label and not p.have_schema and not p.have_metadata


def test_entity_filter():
    g = ttl("ex:a a ex:City . ex:b a ex:City . ex:c a ex:City, rdfs:Class . ex:d ex:p 1 .")
    assert profile(g).entities == {ex("a"), ex("b")}


def test_label_description_interlink_counts():
    g = ttl("""ex:a a ex:T ; rdfs:label "a" ; owl:sameAs ex:z .
               ex:b a ex:T ; rdfs:comment "b" .
               ex:c rdfs:label "not an entity" .""")
    p = profile(g)
    assert (len(p.entities_with_label), len(p.entities_with_description), len(p.entities_with_interlink)) == (1, 1, 1)


def test_configured_properties():
    skos = "http://www.w3.org/2004/02/skos/core#"
    g = parse_turtle(f'@prefix ex: <{EX}> . @prefix skos: <{skos}> . ex:a ex:kind ex:T ; skos:prefLabel "a" . '
                     'ex:b ex:kind ex:T .')
    p = profile(g, type_property=ex("kind"), label_property=IRI(skos + "prefLabel"))
    assert p.entities == {ex("a"), ex("b")}
    assert p.entities_with_label == {ex("a")}


def test_schema_inventories():
    schema = ttl(SCHEMA + """ex:Old a owl:DeprecatedClass . ex:oldP owl:deprecated true ; a owl:DatatypeProperty .
        ex:Person owl:disjointWith ex:Country . ex:Country owl:disjointWith ex:Person .
        ex:age rdfs:range xsd:integer . ex:knows rdfs:range ex:Person .""", doc=2)
    data, _ = enrich(ttl("ex:a a ex:Person ; ex:knows ex:b ."), [schema])
    p = profile(data, [schema])
    assert p.declared["inverse_functional"] == {ex("isbn")}
    assert p.declared["irreflexive"] == {ex("knows")}
    assert p.deprecated_classes == {ex("Old")}
    assert p.deprecated_properties == {ex("oldP")}
    assert p.disjoint_pairs == ((ex("Country"), ex("Person")),)
    assert p.range_kind(IRI(XSD + "integer")) == "datatype"
    assert p.range_kind(ex("Person")) == "class"
    assert p.range_kind(IRI(RDFS + "Literal")) == "literal"
    assert ex("France") not in p.entities
    # usage statistics ignore what the vocabulary itself says
    assert IRI(OWL + "Class") not in p.used_classes
    assert p.used_classes == {ex("Person")}
    assert p.subjects_per_property == {TYPE: 1, ex("knows"): 1}


def test_declared_terms_carry_their_typing():
    schema = ttl(SCHEMA, doc=2)
    merged = set(enrich(Graph(), [schema])[0].match())
    p = profile(Graph(), [schema])
    for key, iri in (("inverse_functional", OWL + "InverseFunctionalProperty"),
                     ("irreflexive", OWL + "IrreflexiveProperty"), ("object", OWL + "ObjectProperty")):
        for term in p.declared[key]:
            assert (term, TYPE, IRI(iri)) in merged
    for c in p.schema_classes:
        assert (c, TYPE, RDFS_CLASS) in merged


def test_metadata_detection():
    void = parse_turtle("@prefix void: <http://rdfs.org/ns/void#> . <http://ex.org/ds> a void:Dataset ; "
                        'void:uriSpace "http://ex.org/r/" .')
    assert is_metadata_graph(void)
    assert not is_metadata_graph(ttl("ex:a a ex:T ."))
    p = profile(Graph(), [], void)
    assert p.have_metadata and p.uri_spaces == ("http://ex.org/r/",)


_subj = st.sampled_from([ex(c) for c in "abcdef"] + [BNode("n")])
_pred = st.sampled_from([TYPE, IRI(RDFS + "label"), IRI(OWL + "sameAs"), ex("p"), ex("q")])
_obj = st.one_of(_subj, st.sampled_from([ex("T"), ex("U"), RDFS_CLASS, Literal("x"), Literal("y", language="en")]))
_data = st.lists(st.tuples(_subj, _pred, _obj), max_size=40)


def _full_scan_subjects(triples, p):
    schema_terms = {s for s, q, o in triples if q == TYPE and o in SCHEMA_TYPES}
    return len({s for s, q, o in triples if q == p and s not in schema_terms})


@settings(max_examples=150, deadline=None)
@given(_data, st.randoms(use_true_random=False))
def test_profile_properties(triples, rnd):
    p = profile(Graph(triples))
    shuffled = list(triples)
    rnd.shuffle(shuffled)
    assert profile(Graph(shuffled)) == p
    assert p.entity_count == len(p.entities)
    for subset in (p.entities_with_label, p.entities_with_description, p.entities_with_interlink):
        assert subset <= p.entities
    assert set(p.subjects_per_property) <= p.used_properties
    distinct = set(triples)
    for prop, n in p.subjects_per_property.items():
        assert n == _full_scan_subjects(distinct, prop)
    # with no schema typing at all, the count is every distinct subject of the property
    if not any(q == TYPE and o == RDFS_CLASS for _, q, o in distinct):
        for prop in {q for _, q, _ in distinct}:
            assert p.subjects_per_property[prop] == len({s for s, q, _ in distinct if q == prop})
