"""Schema merging and the light typing the validation shapes rely on.

The shapes assume that classes carry ``rdf:type rdfs:Class``, properties
carry ``rdf:type rdf:Property`` and instances defined inside vocabularies
carry ``rdf:type owl:NamedIndividual``. OWL vocabularies rarely state the
first two, so they are added here; nothing else is inferred.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from .rdf.graph import Graph
from .rdf.terms import OWL_NS, RDF_NS, RDF_TYPE, RDFS_NS

log = logging.getLogger(__name__)

RDFS_CLASS = RDFS_NS.Class
RDF_PROPERTY = RDF_NS.Property
OWL_NAMED_INDIVIDUAL = OWL_NS.NamedIndividual

CLASS_TYPES = (OWL_NS.Class, OWL_NS.DeprecatedClass, RDFS_NS.Datatype)
PROPERTY_TYPES = (
    OWL_NS.DatatypeProperty,
    OWL_NS.ObjectProperty,
    OWL_NS.AnnotationProperty,
    OWL_NS.OntologyProperty,
    OWL_NS.FunctionalProperty,
    OWL_NS.InverseFunctionalProperty,
    OWL_NS.TransitiveProperty,
    OWL_NS.SymmetricProperty,
    OWL_NS.AsymmetricProperty,
    OWL_NS.ReflexiveProperty,
    OWL_NS.IrreflexiveProperty,
    OWL_NS.DeprecatedProperty,
)
PROPERTY_SUBJECT_OF = (RDFS_NS.domain, RDFS_NS.range)


@dataclass
class EnrichmentReport:
    merged_triples: int = 0
    class_typings: int = 0
    property_typings: int = 0
    individual_typings: int = 0

    @property
    def total_added(self) -> int:
        return self.merged_triples + self.class_typings + self.property_typings + self.individual_typings


def _typed(g: Graph, node, classes) -> bool:
    types = g.objects(node, RDF_TYPE)
    return any(c in types for c in classes)


def enrich(data: Graph, schemas: Iterable[Graph] = ()) -> tuple[Graph, EnrichmentReport]:
    """Union of ``data`` and ``schemas`` plus the added typing triples.

    Inputs are left untouched. Blank nodes never clash across inputs because
    every parsed document labels its blank nodes apart. Running ``enrich``
    again on its own output with the same schemas adds nothing.
    """
    schemas = list(schemas)
    out = data.copy()
    report = EnrichmentReport()
    for sg in schemas:
        report.merged_triples += out.update(sg)

    # class and property declarations are honoured wherever they occur
    for cls_type in CLASS_TYPES:
        for s in list(out.subjects(RDF_TYPE, cls_type)):
            if out.add(s, RDF_TYPE, RDFS_CLASS):
                report.class_typings += 1
    for prop_type in PROPERTY_TYPES:
        for s in list(out.subjects(RDF_TYPE, prop_type)):
            if out.add(s, RDF_TYPE, RDF_PROPERTY):
                report.property_typings += 1
    for p in PROPERTY_SUBJECT_OF:
        for s in list(out.subjects_of(p)):
            if out.add(s, RDF_TYPE, RDF_PROPERTY):
                report.property_typings += 1

    # instances, inside a vocabulary, of classes some vocabulary declares
    schema_classes = set()
    for sg in schemas:
        for cls_type in CLASS_TYPES + (RDFS_CLASS,):
            schema_classes.update(sg.subjects(RDF_TYPE, cls_type))
    for sg in schemas:
        for s in list(sg.subjects_of(RDF_TYPE)):
            if _typed(out, s, (RDFS_CLASS, RDF_PROPERTY)):
                continue
            if not any(c in schema_classes for c in sg.objects(s, RDF_TYPE)):
                continue
            if out.add(s, RDF_TYPE, OWL_NAMED_INDIVIDUAL):
                report.individual_typings += 1

    log.info(
        "enrichment: %d schema triples merged, %d class, %d property and %d individual typings added",
        report.merged_triples, report.class_typings, report.property_typings, report.individual_typings,
    )
    return out, report


def schema_view(schemas: Iterable[Graph]) -> Graph:
    """Merged and enriched schema graphs on their own, without any data."""
    merged, _ = enrich(Graph(), schemas)
    return merged
