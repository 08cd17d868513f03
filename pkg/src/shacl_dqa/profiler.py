"""Statistics about the data, the vocabularies and the dataset metadata.

The profile decides which catalog templates get instantiated and with which
terms, and it provides the denominators of the ratio measures.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

from .enrichment import OWL_NAMED_INDIVIDUAL, RDF_PROPERTY, RDFS_CLASS, schema_view
from .rdf.graph import Graph
from .rdf.terms import OWL_NS, RDF, RDF_TYPE, RDFS_NS, XSD, IRI, Literal, Namespace

log = logging.getLogger(__name__)

VOID = Namespace("http://rdfs.org/ns/void#")
DCAT = Namespace("http://www.w3.org/ns/dcat#")

SCHEMA_TYPES = (RDFS_CLASS, RDF_PROPERTY, OWL_NAMED_INDIVIDUAL)
DECLARED_PROPERTY_TYPES = {
    "datatype": OWL_NS.DatatypeProperty,
    "object": OWL_NS.ObjectProperty,
    "functional": OWL_NS.FunctionalProperty,
    "inverse_functional": OWL_NS.InverseFunctionalProperty,
    "irreflexive": OWL_NS.IrreflexiveProperty,
    "asymmetric": OWL_NS.AsymmetricProperty,
}
_EXTRA_DATATYPES = {
    IRI(RDF + "langString"),
    IRI(RDF + "PlainLiteral"),
    IRI(RDF + "XMLLiteral"),
    IRI(RDF + "HTML"),
    IRI(RDF + "JSON"),
}
_TRUE = {"true", "1"}


@dataclass(frozen=True)
class DataProfile:
    triple_count: int
    entities: frozenset
    entities_with_label: frozenset
    entities_with_description: frozenset
    entities_with_interlink: frozenset
    used_classes: frozenset
    used_properties: frozenset
    subjects_per_property: dict
    # schema side
    have_schema: bool = False
    schema_classes: frozenset = frozenset()
    schema_properties: frozenset = frozenset()
    declared: dict = field(default_factory=dict)
    deprecated_classes: frozenset = frozenset()
    deprecated_properties: frozenset = frozenset()
    domains: dict = field(default_factory=dict)
    ranges: dict = field(default_factory=dict)
    datatypes: frozenset = frozenset()
    disjoint_pairs: tuple = ()
    # metadata side
    have_metadata: bool = False
    void_datasets: tuple = ()
    dcat_datasets: tuple = ()
    uri_regex_patterns: tuple = ()
    uri_spaces: tuple = ()

    @property
    def entity_count(self) -> int:
        return len(self.entities)

    def range_kind(self, rng) -> str:
        """Classify a declared range: datatype, class, literal, thing or resource."""
        if rng == RDFS_NS.Literal:
            return "literal"
        if rng == OWL_NS.Thing:
            return "thing"
        if rng == RDFS_NS.Resource:
            return "resource"
        if rng in self.datatypes or str(rng).startswith(XSD) or rng in _EXTRA_DATATYPES:
            return "datatype"
        return "class"


def _named(nodes) -> frozenset:
    return frozenset(n for n in nodes if type(n) is IRI)


def profile(data: Graph, schemas: Iterable[Graph] = (), metadata: Graph | None = None,
            type_property: IRI = IRI(RDF + "type"),
            label_property: IRI = RDFS_NS.label,
            comment_property: IRI = RDFS_NS.comment,
            sameas_property: IRI = OWL_NS.sameAs) -> DataProfile:
    """Profile an enriched data graph.

    Usage statistics (used classes and properties, subjects per property)
    count only triples that came from the data itself: triples copied in
    from a vocabulary, and triples about classes, properties or vocabulary
    individuals, are left out.
    """
    schemas = list(schemas)
    schema_subjects: set = set()
    for sg in schemas:
        schema_subjects.update(sg.all_subjects())

    def is_schema_term(node) -> bool:
        types = data.objects(node, RDF_TYPE)
        return bool(types) and any(t in types for t in SCHEMA_TYPES)

    typed = data.subjects_of(type_property)
    entities = frozenset(
        s for s in typed if not any(t in SCHEMA_TYPES for t in data.objects(s, type_property))
    )

    used_classes: set = set()
    per_property: dict = {}
    for s in data.all_subjects():
        if is_schema_term(s):
            continue
        check_schema = s in schema_subjects
        for p, objs in data.predicates_of(s).items():
            if check_schema:
                objs = [o for o in objs if not any((s, p, o) in sg for sg in schemas)]
                if not objs:
                    continue
            per_property[p] = per_property.get(p, 0) + 1
            if p == type_property:
                used_classes.update(o for o in objs if type(o) is IRI)

    def having(p) -> frozenset:
        return frozenset(e for e in entities if data.has(e, p))

    prof = dict(
        triple_count=len(data),
        entities=entities,
        entities_with_label=having(label_property),
        entities_with_description=having(comment_property),
        entities_with_interlink=having(sameas_property),
        used_classes=frozenset(used_classes),
        used_properties=frozenset(per_property),
        subjects_per_property=dict(sorted(per_property.items())),
    )

    if schemas:
        sv = schema_view(schemas)
        prof.update(_schema_profile(sv))
    if metadata is not None:
        prof.update(_metadata_profile(metadata))

    result = DataProfile(**prof)
    log.info(
        "profile: %d triples, %d entities, %d classes and %d properties in use",
        result.triple_count, result.entity_count, len(result.used_classes), len(result.used_properties),
    )
    return result


def _schema_profile(sv: Graph) -> dict:
    declared = {
        key: _named(sv.subjects(RDF_TYPE, cls)) for key, cls in DECLARED_PROPERTY_TYPES.items()
    }
    classes = _named(sv.subjects(RDF_TYPE, RDFS_CLASS))
    properties = _named(sv.subjects(RDF_TYPE, RDF_PROPERTY))
    deprecated_flag = _named(
        s for s, _, o in sv.triples(p=OWL_NS.deprecated) if type(o) is Literal and o.lexical in _TRUE
    )
    deprecated_classes = _named(sv.subjects(RDF_TYPE, OWL_NS.DeprecatedClass)) | (deprecated_flag & classes)
    deprecated_properties = _named(sv.subjects(RDF_TYPE, OWL_NS.DeprecatedProperty)) | (
        deprecated_flag & properties
    )
    domains: dict = {}
    for s, _, o in sv.triples(p=RDFS_NS.domain):
        if type(s) is IRI and type(o) is IRI:
            domains.setdefault(s, set()).add(o)
    ranges: dict = {}
    for s, _, o in sv.triples(p=RDFS_NS.range):
        if type(s) is IRI and type(o) is IRI:
            ranges.setdefault(s, set()).add(o)
    pairs = set()
    for a, _, b in sv.triples(p=OWL_NS.disjointWith):
        if type(a) is IRI and type(b) is IRI and a != b:
            pairs.add(tuple(sorted((a, b))))
    return dict(
        have_schema=True,
        schema_classes=classes,
        schema_properties=properties,
        declared=declared,
        deprecated_classes=deprecated_classes,
        deprecated_properties=deprecated_properties,
        domains={p: tuple(sorted(v)) for p, v in sorted(domains.items())},
        ranges={p: tuple(sorted(v)) for p, v in sorted(ranges.items())},
        datatypes=_named(sv.subjects(RDF_TYPE, RDFS_NS.Datatype)),
        disjoint_pairs=tuple(sorted(pairs)),
    )


def _metadata_profile(meta: Graph) -> dict:
    void_ds = sorted(meta.subjects(RDF_TYPE, VOID.Dataset), key=str)
    dcat_ds = sorted(meta.subjects(RDF_TYPE, DCAT.Dataset), key=str)
    patterns = sorted({o.lexical for o in meta.objects_of(VOID.uriRegexPattern) if type(o) is Literal})
    spaces = sorted({str(o) for o in meta.objects_of(VOID.uriSpace) if type(o) in (Literal, IRI)})
    return dict(
        have_metadata=bool(void_ds or dcat_ds),
        void_datasets=tuple(void_ds),
        dcat_datasets=tuple(dcat_ds),
        uri_regex_patterns=tuple(patterns),
        uri_spaces=tuple(spaces),
    )


def is_metadata_graph(g: Graph) -> bool:
    """True when ``g`` describes a dataset with VoID or DCAT."""
    return bool(g.subjects(RDF_TYPE, VOID.Dataset) or g.subjects(RDF_TYPE, DCAT.Dataset))
