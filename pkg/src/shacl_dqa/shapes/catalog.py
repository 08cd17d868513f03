"""The registry of data-quality shape templates.

Every template is an abstract shape tree with :class:`Var` leaves for the
values that differ between datasets, :class:`Cfg` leaves for terms taken
from the run configuration (type, label, comment and sameAs properties, and
the dataset class of the metadata graph), and :class:`Local` names for the
shape nodes themselves. A few templates carry more than one body: the
domain and range checks have one body per kind of declared domain or range,
and the dataset metadata check has a DCAT body next to the VoID one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from ..rdf.terms import OWL_NS, RDF_NS, RDFS_NS, SH_NS, XSD, IRI, Literal, Namespace
from .model import (
    C,
    Cfg,
    Escaped,
    ForEach,
    Local,
    Path,
    Pattern,
    QualifiedValue,
    Shape,
    Target,
    Var,
    inverse,
    node_shape,
    placeholders,
    pred,
    property_shape,
    substitute,
)
from .shapes_graph import DEFAULT_PREFIXES, shapes_to_turtle

DCTERMS = Namespace("http://purl.org/dc/terms/")
FOAF = Namespace("http://xmlns.com/foaf/0.1/")
VOID = Namespace("http://rdfs.org/ns/void#")
DCAT = Namespace("http://www.w3.org/ns/dcat#")
PROV = Namespace("http://www.w3.org/ns/prov#")
SEC = Namespace("https://w3id.org/security#")
FORMATS = Namespace("http://www.w3.org/ns/formats/")
EX = Namespace("http://example.org/")

GROUPS = ("Accessibility", "Intrinsic", "Contextual", "Representational")
DIMENSIONS = {
    "Accessibility": ("Availability", "Licensing", "Interlinking", "Security", "Performance"),
    "Intrinsic": ("Syntactic validity", "Semantic accuracy", "Consistency", "Conciseness", "Completeness"),
    "Contextual": ("Relevancy", "Understandability", "Trustworthiness", "Timeliness"),
    "Representational": ("Representational conciseness", "Interoperability", "Versatility", "Interpretability"),
}

TARGET_ARTIFACTS = ("data-graph", "metadata-graph", "schema-graph")
MEASURE_KINDS = ("binary", "ratio", "composite", "report-only")
SOURCES = ("automatic-profile", "automatic-config", "manual-domain-knowledge")
VALUE_KINDS = ("iri", "literal", "term", "integer", "date", "regex", "term-list")
PLACEHOLDER_NAMES = frozenset({
    "PROPERTY_URI", "PROPERTY_URI_1", "PROPERTY_URI_2", "CLASS_URI", "DISJOINT_CLASS_URI", "ENTITY_URI",
    "DATASET_URI", "DATATYPE_URI", "DATATYPE", "CLASS", "LENGTH_VALUE", "DATE_RANGE_MIN_BOUND", "MIN_VALUE",
    "MAX_VALUE", "COUNT", "RDF_TERM", "PATTERN", "CLASSES_LIST", "LIST_ALLOWED_VALUES",
    "LIST_TRUSTED_PROVIDERS", "LIST_TRUSTED_CONTRIBUTORS", "LIST_TRUSTED_AUTHORS", "REQUIRED_LANGUAGES",
    "URI_REGEX_PATTERN", "URI_SPACE",
})

# configuration-driven terms and their defaults
CONFIG_DEFAULTS = {
    "type": RDF_NS.type,
    "label": RDFS_NS.label,
    "comment": RDFS_NS.comment,
    "sameas": OWL_NS.sameAs,
    "dataset_class": VOID.Dataset,
}


@dataclass(frozen=True)
class PlaceholderSpec:
    name: str
    kind: str
    item_kind: str | None = None  # member kind of a term-list: iri, term or language
    optional: bool = False

    def __post_init__(self):
        if self.name not in PLACEHOLDER_NAMES:
            raise ValueError(f"unknown placeholder name {self.name}")
        if self.kind not in VALUE_KINDS:
            raise ValueError(f"unknown value kind {self.kind}")


@dataclass(frozen=True)
class Variant:
    key: str
    caption: str
    name: str  # local name of the root shape
    body: Shape
    listing: bool = True  # False when the body has no printed counterpart


@dataclass(frozen=True)
class ShapeTemplate:
    id: str
    metric_id: str
    group: str
    dimension: str
    target_artifact: str
    measure_kind: str
    source: str
    enabled: bool
    placeholders: tuple
    variants: tuple
    denominator: str | None = None
    disabled_reason: str | None = None
    metrics: tuple = ()  # extra metric ids reported from a single shape, keyed by result path
    note: str = ""

    @property
    def caption(self) -> str:
        return self.variants[0].caption

    @property
    def body(self) -> Shape:
        return self.variants[0].body

    @property
    def is_manual(self) -> bool:
        return self.source == "manual-domain-knowledge"

    def variant(self, key: str | None = None) -> Variant:
        if key is None:
            return self.variants[0]
        for v in self.variants:
            if v.key == key:
                return v
        raise KeyError(f"{self.id} has no variant {key!r}")

    def spec(self, name: str) -> PlaceholderSpec:
        for p in self.placeholders:
            if p.name == name:
                return p
        raise KeyError(name)

    @property
    def optional(self) -> frozenset:
        return frozenset(p.name for p in self.placeholders if p.optional)

    def placeholder_names(self, variant: str | None = None) -> set:
        return placeholders(self.variant(variant).body)


# building blocks

TYPE = Cfg("type")
LABEL = Cfg("label")
COMMENT = Cfg("comment")
SAMEAS = Cfg("sameas")
DATASET = Cfg("dataset_class")

P = Var("PROPERTY_URI")


def _filter(cls) -> Shape:
    return property_shape(pred(TYPE), C("hasValue", cls))


# an entity is a typed subject that is not a class, property or vocabulary individual
SCHEMA_TERM_FILTERS = (
    _filter(RDFS_NS.Class),
    _filter(RDF_NS.Property),
    _filter(OWL_NS.NamedIndividual),
)


def entities(*alternatives) -> dict:
    """Keyword arguments for a node shape over entities only."""
    return dict(
        targets=(Target("subjectsOf", TYPE),),
        constraints=(C("or", SCHEMA_TERM_FILTERS + tuple(alternatives)),),
    )


def entity_shape(name: str, *alternatives) -> Shape:
    return Shape(id=Local(name), **entities(*alternatives))


def root(name: str, *constraints, targets=()) -> Shape:
    return node_shape(*constraints, id=Local(name), targets=targets)


def min1(path) -> Shape:
    return property_shape(path, C("minCount", 1))


def subjects_of(p) -> tuple:
    return (Target("subjectsOf", p),)


def spec(name, kind="iri", **kw) -> PlaceholderSpec:
    return PlaceholderSpec(name, kind, **kw)


def _template(id, metric_id, group, dimension, artifact, kind, source, variants, ph=(), enabled=None,
              denominator=None, disabled_reason=None, metrics=(), note="") -> ShapeTemplate:
    if enabled is None:
        enabled = source != "manual-domain-knowledge"
    return ShapeTemplate(
        id=id,
        metric_id=metric_id,
        group=group,
        dimension=dimension,
        target_artifact=artifact,
        measure_kind=kind,
        source=source,
        enabled=enabled,
        placeholders=tuple(ph),
        variants=tuple(variants),
        denominator=denominator,
        disabled_reason=disabled_reason,
        metrics=tuple(metrics),
        note=note,
    )


AUTO = "automatic-profile"
CONFIG = "automatic-config"
MANUAL = "manual-domain-knowledge"
DATA = "data-graph"
META = "metadata-graph"
SCHEMA = "schema-graph"
MERGED = "requires merged graphs"
NONSTANDARD = "non-standard vocabulary"


def _accessibility() -> list:
    g = "Accessibility"
    out = []
    out.append(_template(
        "A2", "A2", g, "Availability", META, "binary", CONFIG,
        [Variant("default", "Availability - RDF Dump", "AvailabilityDumpShape", root(
            "AvailabilityDumpShape",
            C("or", (min1(VOID.dataDump), min1(Path("seq", children=(pred(DCAT.distribution),
                                                                      pred(DCAT.downloadURL)))))),
            targets=(Target("class", DATASET),),
        ))],
    ))
    out.append(_template(
        "L1", "L1", g, "Licensing", META, "binary", CONFIG,
        [Variant("default", "Licensing - Machine-readable license", "MachineReadableLicenseShape", root(
            "MachineReadableLicenseShape",
            C("property", property_shape(DCTERMS.license, C("class", DCTERMS.LicenseDocument),
                                         C("minCount", 1))),
            targets=(Target("class", DATASET),),
        ))],
    ))
    entity = Var("ENTITY_URI")
    out.append(_template(
        "I1M4a", "I1M4", g, "Interlinking", DATA, "report-only", MANUAL,
        [Variant("default", "Interlinking - Open sameAs chains", "OpenSameAsChainsShapes", root(
            "OpenSameAsChainsShapes",
            C("property", property_shape(Path("oneOrMore", children=(pred(SAMEAS),)), C("hasValue", entity))),
            targets=(Target("node", entity),),
        ))],
        ph=[spec("ENTITY_URI")],
    ))
    out.append(_template(
        "I1M4b", "I1M4", g, "Interlinking", DATA, "report-only", AUTO,
        [Variant("default", "Interlinking - Open sameAs pairs", "OpenSameAsPairsShape", root(
            "OpenSameAsPairsShape",
            C("property", property_shape(inverse(SAMEAS), C("equals", SAMEAS))),
            targets=subjects_of(SAMEAS),
        ))],
        enabled=False, disabled_reason=MERGED,
    ))
    out.append(_template(
        "I2", "I2", g, "Interlinking", DATA, "ratio", CONFIG,
        [Variant("default", "Interlinking - External URIs", "UsageExternalURIShape", root(
            "UsageExternalURIShape",
            C("property", property_shape(SAMEAS, C("pattern", Pattern(("^(?!", Escaped(Var("DATASET_URI")), ")"))))),
            targets=subjects_of(SAMEAS),
        ))],
        ph=[spec("DATASET_URI")],
        denominator="entities_with_interlink",
    ))
    out.append(_template(
        "S1a", "S1", g, "Security", DATA, "binary", AUTO,
        [Variant("default", "Security - Digital Signatures", "DigitalSignatureShape", root(
            "DigitalSignatureShape",
            C("property", property_shape(inverse(TYPE), C("minCount", 1))),
            targets=(Target("node", SEC.DataIntegrityProof),),
        ))],
        enabled=False, disabled_reason=NONSTANDARD,
    ))
    out.append(_template(
        "S1b", "S1", g, "Security", DATA, "binary", AUTO,
        [Variant("default", "Security - Digital Signature properties", "DigitalSignaturePropertiesShape", root(
            "DigitalSignaturePropertiesShape",
            C("property", property_shape(SEC.proofPurpose, C("minCount", 1), C("in", (
                SEC.assertionMethod, SEC.authentication, SEC.keyAgreement,
                SEC.capabilityInvocation, SEC.capabilityDelegation,
            )))),
            C("property", property_shape(SEC.cryptosuite, C("datatype", SEC.cryptosuiteString), C("minCount", 1))),
            C("property", property_shape(SEC.proofValue, C("datatype", IRI(XSD + "string")), C("minCount", 1))),
            targets=(Target("class", SEC.DataIntegrityProof),),
        ))],
        enabled=False, disabled_reason=NONSTANDARD,
    ))
    out.append(_template(
        "S2", "S2", g, "Security", META, "binary", CONFIG,
        [Variant("default", "Security - Authenticity of the dataset", "AuthenticityOfDatasetShape", root(
            "AuthenticityOfDatasetShape",
            C("or", (min1(DCTERMS.contributor), min1(DCTERMS.creator), min1(DCTERMS.publisher))),
            C("or", (min1(DCTERMS.source), min1(DCTERMS.provenance))),
            targets=(Target("class", DATASET),),
        ))],
    ))
    out.append(_template(
        "P1", "P1", g, "Performance", DATA, "ratio", CONFIG,
        [Variant("default", "Performance - Use of Hash URIs in Entities", "UsageHashURIsShape", entity_shape(
            "UsageHashURIsShape", node_shape(C("pattern", Pattern("^[^#]*$"))),
        ))],
        denominator="entities",
    ))
    return out


def _property_check(name: str, *constraints, path=P) -> Shape:
    """Node shape over subjects of PROPERTY_URI with one property shape."""
    return root(name, C("property", property_shape(path, *constraints)), targets=subjects_of(P))


def _intrinsic() -> list:
    g = "Intrinsic"
    out = []
    sv = "Syntactic validity"
    out.append(_template(
        "SV2A1a", "SV2A1", g, sv, DATA, "composite", MANUAL,
        [Variant("default", "Syntactic Validity - Range of allowed values", "RangeAllowedValuesShape",
                 _property_check("RangeAllowedValuesShape", C("minInclusive", Var("MIN_VALUE")),
                                 C("maxInclusive", Var("MAX_VALUE"))))],
        ph=[spec("PROPERTY_URI"), spec("MIN_VALUE", "literal"), spec("MAX_VALUE", "literal")],
    ))
    out.append(_template(
        "SV2A1b", "SV2A1", g, sv, DATA, "composite", MANUAL,
        [Variant("default", "Syntactic Validity - Allowed values (at least one value)",
                 "AllowedValuesAtLeastOneShape",
                 _property_check("AllowedValuesAtLeastOneShape", C("hasValue", Var("RDF_TERM"))))],
        ph=[spec("PROPERTY_URI"), spec("RDF_TERM", "term")],
    ))
    out.append(_template(
        "SV2A1c", "SV2A1", g, sv, DATA, "composite", MANUAL,
        [Variant("default", "List of allowed values", "AllowedValuesShape",
                 _property_check("AllowedValuesShape", C("in", Var("LIST_ALLOWED_VALUES"))))],
        ph=[spec("PROPERTY_URI"), spec("LIST_ALLOWED_VALUES", "term-list", item_kind="term")],
    ))
    out.append(_template(
        "SV2A2", "SV2A2", g, sv, DATA, "composite", MANUAL,
        [Variant("default", "Syntactic Validity - Syntactic rules", "SyntacticRulesShape",
                 _property_check("SyntacticRulesShape", C("pattern", Pattern((Var("PATTERN"),)))))],
        ph=[spec("PROPERTY_URI"), spec("PATTERN", "regex")],
    ))
    out.append(_template(
        "SV2A3", "SV2A3", g, sv, META, "binary", MANUAL,
        [Variant("default", "Syntactic Validity - VoID RDF pattern", "RDFPatternVOIDShape", root(
            "RDFPatternVOIDShape",
            C("property", property_shape(FOAF.homepage, C("minCount", 1), C("datatype", IRI(XSD + "string")))),
            targets=(Target("class", DATASET),),
        ))],
        enabled=False,
        note="the printed shape requires foaf:homepage to be an xsd:string literal; opt in explicitly",
    ))
    out.append(_template(
        "SV3", "SV3", g, sv, DATA, "composite", AUTO,
        [Variant("default", "Syntactic Validity - Malformed literal", "MalformedLiteralShape",
                 _property_check("MalformedLiteralShape", C("datatype", Var("DATATYPE_URI"))))],
        ph=[spec("PROPERTY_URI"), spec("DATATYPE_URI")],
    ))

    sa = "Semantic accuracy"
    out.append(_template(
        "SA2A2", "SA2A2", g, sa, DATA, "composite", MANUAL,
        [Variant("default", "Semantic Accuracy - Inaccurate values", "InaccurateValuesShape", root(
            "InaccurateValuesShape",
            C("property", property_shape(Var("PROPERTY_URI_1"), C("equals", Var("PROPERTY_URI_2")))),
            targets=subjects_of(Var("PROPERTY_URI_1")),
        ))],
        ph=[spec("PROPERTY_URI_1"), spec("PROPERTY_URI_2")],
    ))
    entity = Var("ENTITY_URI")
    out.append(_template(
        "SA3a", "SA3", g, sa, DATA, "composite", MANUAL,
        [Variant("default", "Semantic Accuracy - No inaccurate annotations", "NoInaccurateAnnotationsShape", root(
            "NoInaccurateAnnotationsShape",
            C("property", property_shape(LABEL, C("in", Var("LIST_ALLOWED_VALUES")))),
            targets=(Target("node", entity),),
        ))],
        ph=[spec("ENTITY_URI"), spec("LIST_ALLOWED_VALUES", "term-list", item_kind="term")],
    ))
    out.append(_template(
        "SA3b", "SA3", g, sa, DATA, "composite", MANUAL,
        [Variant("default", "Semantic Accuracy - No inaccurate classifications",
                 "NoInaccurateClassificationsShape", root(
                     "NoInaccurateClassificationsShape",
                     C("property", property_shape(TYPE, C("in", Var("CLASSES_LIST")))),
                     targets=(Target("node", entity),),
                 ))],
        ph=[spec("ENTITY_URI"), spec("CLASSES_LIST", "term-list", item_kind="iri")],
    ))

    cn = "Consistency"
    out.append(_template(
        "CN1", "CN1", g, cn, DATA, "composite", AUTO,
        [Variant("default", "Consistency - Entities in disjoint classes", "EntitiesDisjointClassesShape", root(
            "EntitiesDisjointClassesShape",
            C("not", node_shape(C("class", Var("DISJOINT_CLASS_URI")))),
            targets=(Target("class", Var("CLASS_URI")),),
        ))],
        ph=[spec("CLASS_URI"), spec("DISJOINT_CLASS_URI")],
        note="one instance per ordered pair of disjoint classes used in the data; scored per unordered pair",
    ))
    out.append(_template(
        "CN2a", "CN2", g, cn, DATA, "composite", AUTO,
        [Variant("default", "Consistency - No misplaced properties", "MisplacedPropertiesShape", root(
            "MisplacedPropertiesShape",
            C("property", property_shape(inverse(TYPE), C("maxCount", 0))),
            targets=(Target("node", P),),
        ))],
        ph=[spec("PROPERTY_URI")],
        note="instantiated with every schema property, used or not",
    ))
    out.append(_template(
        "CN2b", "CN2", g, cn, DATA, "composite", AUTO,
        [Variant("default", "Consistency - No misplaced classes", "MisplacedClassesShape", entity_shape(
            "MisplacedClassesShape", property_shape(Var("CLASS_URI"), C("maxCount", 0)),
        ))],
        ph=[spec("CLASS_URI")],
        note="instantiated with every schema class, used or not",
    ))
    out.append(_template(
        "CN3a", "CN3", g, cn, DATA, "composite", AUTO,
        [Variant("default", "Consistency - No misuse of Datatype properties", "MisuseDatatypePropertiesShape",
                 _property_check("MisuseDatatypePropertiesShape", C("nodeKind", SH_NS.Literal)))],
        ph=[spec("PROPERTY_URI")],
    ))
    out.append(_template(
        "CN3b", "CN3", g, cn, DATA, "composite", AUTO,
        [Variant("default", "Consistency - No misuse of Object properties", "MisuseObjectPropertiesShape",
                 _property_check("MisuseObjectPropertiesShape", C("nodeKind", SH_NS.BlankNodeOrIRI)))],
        ph=[spec("PROPERTY_URI")],
    ))
    out.append(_template(
        "CN4a", "CN4", g, cn, DATA, "binary", AUTO,
        [Variant("default", "Consistency - Usage of deprecated classes", "DeprecatedClassesShape", entity_shape(
            "DeprecatedClassesShape",
            property_shape(TYPE, C("not", node_shape(C("in", Var("CLASSES_LIST"))))),
        ))],
        ph=[spec("CLASSES_LIST", "term-list", item_kind="iri")],
    ))
    out.append(_template(
        "CN4b", "CN4", g, cn, DATA, "composite", AUTO,
        [Variant("default", "Consistency - Usage of deprecated properties", "DeprecatedPropertiesUsageShape",
                 entity_shape("DeprecatedPropertiesUsageShape", property_shape(P, C("maxCount", 0))))],
        ph=[spec("PROPERTY_URI")],
    ))
    out.append(_template(
        "CN5", "CN5", g, cn, DATA, "composite", AUTO,
        [Variant("default", "Consistency - Uniqueness of inverse functional properties",
                 "InverseFunctionalPropertyShape", root(
                     "InverseFunctionalPropertyShape",
                     C("property", property_shape(inverse(P), C("maxCount", 1))),
                     targets=(Target("objectsOf", P),),
                 ))],
        ph=[spec("PROPERTY_URI")],
    ))
    absent = lambda item: property_shape(Var(item), C("maxCount", 0))  # noqa: E731
    out.append(_template(
        "CN7", "CN7", g, cn, DATA, "composite", MANUAL,
        [Variant("default", "Consistency - Negative dependencies", "NegativeDependenciesShape", root(
            "NegativeDependenciesShape",
            C("or", (
                node_shape(C("or", (ForEach(Var("PROPERTY_URI_1"), "_A", absent("_A")),))),
                node_shape(C("and", (ForEach(Var("PROPERTY_URI_2"), "_B", absent("_B")),))),
            )),
            targets=(Target("class", Var("CLASS_URI")),),
        ))],
        ph=[spec("CLASS_URI"), spec("PROPERTY_URI_1", "term-list", item_kind="iri"),
            spec("PROPERTY_URI_2", "term-list", item_kind="iri")],
        note="PROPERTY_URI_1 holds the antecedent properties, PROPERTY_URI_2 the consequent ones; "
             "absence is expressed with maxCount 0",
    ))
    out.append(_template(
        "CN9a", "CN9", g, cn, DATA, "composite", AUTO,
        [
            Variant("class", "Consistency - Correct domain (specific class)", "CorrectDomainShape",
                    root("CorrectDomainShape", C("class", Var("CLASS")), targets=subjects_of(P))),
            Variant("thing", "Consistency - Correct domain (owl:Thing)", "CorrectDomainShape",
                    root("CorrectDomainShape", C("nodeKind", SH_NS.BlankNodeOrIRI), targets=subjects_of(P))),
        ],
        ph=[spec("PROPERTY_URI"), spec("CLASS")],
    ))
    out.append(_template(
        "CN9b", "CN9", g, cn, DATA, "composite", AUTO,
        [
            Variant("datatype", "Consistency - Correct range (specific datatype or class)", "CorrectRangeShape",
                    _property_check("CorrectRangeShape", C("datatype", Var("DATATYPE")))),
            Variant("class", "Consistency - Correct range (specific datatype or class)", "CorrectRangeShape",
                    _property_check("CorrectRangeShape", C("class", Var("CLASS"))), listing=False),
            Variant("thing", "Consistency - Correct range (owl:Thing)", "CorrectRangeShape",
                    _property_check("CorrectRangeShape", C("nodeKind", SH_NS.BlankNodeOrIRI))),
            Variant("literal", "Consistency - Correct range (rdfs:Literal)", "CorrectRangeShape",
                    _property_check("CorrectRangeShape", C("nodeKind", SH_NS.Literal))),
            Variant("resource", "Consistency - Correct range (rdfs:Resource)", "CorrectRangeShape",
                    _property_check("CorrectRangeShape", C("or", (
                        node_shape(C("nodeKind", SH_NS.BlankNodeOrIRI)),
                        node_shape(C("nodeKind", SH_NS.Literal)),
                    )))),
        ],
        ph=[spec("PROPERTY_URI"), spec("DATATYPE"), spec("CLASS")],
    ))
    out.append(_template(
        "CN10a", "CN10", g, cn, DATA, "composite", AUTO,
        [Variant("default", "Consistency - No inconsistent values (Irreflexive property)",
                 "IrreflexivePropertyShape",
                 root("IrreflexivePropertyShape", C("disjoint", P), targets=subjects_of(P)))],
        ph=[spec("PROPERTY_URI")],
    ))
    out.append(_template(
        "CN10b", "CN10", g, cn, DATA, "composite", AUTO,
        [Variant("default", "Consistency - No inconsistent values (Functional property)",
                 "FunctionalPropertyShape", _property_check("FunctionalPropertyShape", C("maxCount", 1)))],
        ph=[spec("PROPERTY_URI")],
    ))
    out.append(_template(
        "CN10c", "CN10", g, cn, DATA, "composite", AUTO,
        [Variant("default", "Consistency - No inconsistent values (Asymmetric property)",
                 "AsymmetricPropertyShape",
                 _property_check("AsymmetricPropertyShape", C("disjoint", P), path=inverse(P)))],
        ph=[spec("PROPERTY_URI")],
    ))

    out.append(_template(
        "CS2", "CS2", g, "Conciseness", DATA, "composite", MANUAL,
        [Variant("default", "Extensional conciseness - Uniqueness rule", "UniquenessRuleShape", root(
            "UniquenessRuleShape",
            C("property", property_shape(inverse(P), C("maxCount", 1))),
            targets=(Target("objectsOf", P),),
        ))],
        ph=[spec("PROPERTY_URI")],
    ))

    cp = "Completeness"
    not_individual = Shape(
        id=Local("NotNamedIndividualShape"),
        constraints=(C("property", property_shape(TYPE, C("not", node_shape(C("hasValue", OWL_NS.NamedIndividual))))),),
    )
    out.append(_template(
        "CP1", "CP1", g, cp, DATA, "composite", AUTO,
        [Variant("default", "Completeness - Schema completeness (Class usage)", "SchemaCompletenessClassUsageShape",
                 root(
                     "SchemaCompletenessClassUsageShape",
                     C("property", property_shape(
                         inverse(TYPE),
                         C("minCount", 1),
                         C("qualifiedValueShape", QualifiedValue(node_shape(C("node", not_individual)), 1)),
                     )),
                     targets=(Target("node", Var("CLASS_URI")),),
                 ))],
        ph=[spec("CLASS_URI")],
        note="instantiated with every schema class, used or not",
    ))
    out.append(_template(
        "CP2", "CP2", g, cp, DATA, "composite", MANUAL,
        [Variant("default", "Completeness - Property completeness", "PropertyCompletenessShape",
                 _property_check("PropertyCompletenessShape", C("minCount", Var("COUNT"))))],
        ph=[spec("PROPERTY_URI"), spec("COUNT", "integer")],
    ))
    count = Var("COUNT")
    out.append(_template(
        "CP3a", "CP3", g, cp, DATA, "composite", MANUAL,
        [Variant("default", "Completeness - Population completeness (Property approach)",
                 "PopulationCompletenessShape_Property", root(
                     "PopulationCompletenessShape_Property",
                     C("property", property_shape(P, C("minCount", count), C("maxCount", count),
                                                  C("in", Var("LIST_ALLOWED_VALUES")))),
                     targets=(Target("node", entity),),
                 ))],
        ph=[spec("ENTITY_URI"), spec("PROPERTY_URI"), spec("COUNT", "integer"),
            spec("LIST_ALLOWED_VALUES", "term-list", item_kind="term")],
    ))
    out.append(_template(
        "CP3b", "CP3", g, cp, DATA, "composite", MANUAL,
        [Variant("default", "Completeness - Population completeness (Class approach)",
                 "PopulationCompletenessShape_Class", root(
                     "PopulationCompletenessShape_Class",
                     C("property", property_shape(inverse(TYPE), C("minCount", count), C("maxCount", count),
                                                  C("in", Var("LIST_ALLOWED_VALUES")))),
                     targets=(Target("node", Var("CLASS_URI")),),
                 ))],
        ph=[spec("CLASS_URI"), spec("COUNT", "integer"),
            spec("LIST_ALLOWED_VALUES", "term-list", item_kind="term")],
    ))
    out.append(_template(
        "CP4", "CP4", g, cp, DATA, "ratio", CONFIG,
        [Variant("default", "Completeness - Interlinking completeness", "InterlinkingCompletenessShape",
                 entity_shape("InterlinkingCompletenessShape", min1(SAMEAS)))],
        denominator="entities",
    ))
    return out


def _contextual() -> list:
    g = "Contextual"
    out = []
    out.append(_template(
        "R2", "R2", g, "Relevancy", DATA, "composite", MANUAL,
        [Variant("default", "Relevancy - Coverage", "CoverageOfEntitiesShape", root(
            "CoverageOfEntitiesShape",
            C("property", ForEach(P, "_P", property_shape(Var("_P"), C("minCount", 1), C("maxCount", 1)))),
            targets=(Target("class", Var("CLASS_URI")),),
        ))],
        ph=[spec("CLASS_URI"), spec("PROPERTY_URI", "term-list", item_kind="iri")],
    ))
    u = "Understandability"
    out.append(_template(
        "U1a", "U1", g, u, DATA, "ratio", CONFIG,
        [Variant("default", "Understandability - Human-readable labels in entities", "LabelForEntitiesShape",
                 entity_shape("LabelForEntitiesShape", min1(LABEL)))],
        denominator="entities",
    ))
    out.append(_template(
        "U1b", "U1", g, u, SCHEMA, "ratio", AUTO,
        [Variant("default", "Understandability - Human-readable labels in Classes", "LabelForClassesShape", root(
            "LabelForClassesShape", C("property", min1(LABEL)), targets=(Target("class", RDFS_NS.Class),),
        ))],
        denominator="schema_classes",
    ))
    out.append(_template(
        "U1c", "U1", g, u, SCHEMA, "ratio", AUTO,
        [Variant("default", "Understandability - Human-readable labels in Properties", "LabelForPropertiesShape",
                 root("LabelForPropertiesShape", C("property", min1(LABEL)),
                      targets=(Target("class", RDF_NS.Property),)))],
        denominator="schema_properties",
    ))
    literal_min1 = lambda p: property_shape(p, C("minCount", 1), C("nodeKind", SH_NS.Literal))  # noqa: E731
    out.append(_template(
        "U1d", "U1", g, u, META, "binary", CONFIG,
        [
            Variant("void", "Understandability - Dataset metadata", "UnderstandabilityDatasetMetadataShape", root(
                "UnderstandabilityDatasetMetadataShape",
                C("property", literal_min1(DCTERMS["title"])),
                C("property", literal_min1(DCTERMS.description)),
                C("property", property_shape(FOAF.homepage, C("minCount", 1), C("class", FOAF.Document))),
                targets=(Target("class", DATASET),),
            )),
            Variant("dcat", "Understandability - Dataset metadata", "UnderstandabilityDatasetMetadataShape", root(
                "UnderstandabilityDatasetMetadataShape",
                C("property", literal_min1(DCTERMS["title"])),
                C("property", literal_min1(DCTERMS.description)),
                C("property", property_shape(DCAT.landingPage, C("minCount", 1), C("class", FOAF.Document))),
                targets=(Target("class", DATASET),),
            ), listing=False),
        ],
    ))
    out.append(_template(
        "U2U3U5", "U2", g, u, META, "binary", CONFIG,
        [Variant("default", "Understandability - Dataset metadata", "UnderstandabilityExtraMetadataShape", root(
            "UnderstandabilityExtraMetadataShape",
            C("property", min1(VOID.exampleResource)),
            C("property", min1(VOID.vocabulary)),
            C("or", (
                min1(VOID.uriRegexPattern),
                property_shape(VOID.uriSpace, C("minCount", 1), C("nodeKind", SH_NS.Literal)),
            )),
            targets=(Target("class", DATASET),),
        ))],
        metrics=(("U2", VOID.exampleResource), ("U3", None), ("U5", VOID.vocabulary)),
        note="one shape, three binary measures told apart by the result path",
    ))
    out.append(_template(
        "U3b", "U3", g, u, DATA, "ratio", CONFIG,
        [Variant("default", "Understandability - URI regex or namespace compliance for entities",
                 "URIRegexComplianceShape", entity_shape(
                     "URIRegexComplianceShape",
                     node_shape(C("pattern", Pattern(("^", Var("URI_REGEX_PATTERN"))))),
                     node_shape(C("pattern", Pattern(("^", Escaped(Var("URI_SPACE")))))),
                 ))],
        ph=[spec("URI_REGEX_PATTERN", "regex", optional=True), spec("URI_SPACE", "iri", optional=True)],
        denominator="entities",
    ))
    tw = "Trustworthiness"
    out.append(_template(
        "TW23", "TW2", g, tw, DATA, "ratio", AUTO,
        [Variant("default", "Trustworthiness - Trust values in entities", "TrustValuesEntitiesShape",
                 entity_shape("TrustValuesEntitiesShape", min1(EX.trustvalue)))],
        enabled=False, disabled_reason=NONSTANDARD, denominator="entities",
    ))
    out.append(_template(
        "TW5a", "TW5", g, tw, META, "binary", MANUAL,
        [Variant("default", "Trustworthiness - Trusted contributors and providers",
                 "TrustedContributorProviderShape", root(
                     "TrustedContributorProviderShape",
                     C("property", property_shape(DCTERMS.provider, C("in", Var("LIST_TRUSTED_PROVIDERS")))),
                     C("property", property_shape(DCTERMS.contributor, C("in", Var("LIST_TRUSTED_CONTRIBUTORS")))),
                     targets=(Target("class", DATASET),),
                 ))],
        ph=[spec("LIST_TRUSTED_PROVIDERS", "term-list", item_kind="term"),
            spec("LIST_TRUSTED_CONTRIBUTORS", "term-list", item_kind="term")],
    ))
    out.append(_template(
        "TW5b", "TW5", g, tw, DATA, "binary", AUTO,
        [Variant("default", "Trustworthiness - Level of trust of the publisher", "LevelOfTrustPublisherShape", root(
            "LevelOfTrustPublisherShape",
            C("property", property_shape(
                EX.trustvalue, C("minCount", 1),
                C("minInclusive", Literal("1", IRI(XSD + "integer"))),
                C("maxInclusive", Literal("9", IRI(XSD + "integer"))),
                C("datatype", IRI(XSD + "integer")),
            )),
            targets=(Target("objectsOf", DCTERMS.publisher),),
        ))],
        enabled=False, disabled_reason=NONSTANDARD,
    ))
    out.append(_template(
        "TW6", "TW6", g, tw, DATA, "ratio", MANUAL,
        [Variant("default", "Trustworthiness - Trust through association", "TrustThroughAssociationShape",
                 entity_shape("TrustThroughAssociationShape", property_shape(
                     PROV.wasAttributedTo, C("in", Var("LIST_TRUSTED_AUTHORS")), C("minCount", 1))))],
        ph=[spec("LIST_TRUSTED_AUTHORS", "term-list", item_kind="term")],
        denominator="entities",
    ))
    bound = Var("DATE_RANGE_MIN_BOUND")
    out.append(_template(
        "T1", "T1", g, "Timeliness", DATA, "ratio", MANUAL,
        [Variant("default", "Timeliness - Outdated entities", "TimelinessEntitiesShape",
                 entity_shape("TimelinessEntitiesShape", property_shape(DCTERMS.date, C("minInclusive", bound))))],
        ph=[spec("DATE_RANGE_MIN_BOUND", "date")],
        denominator="entities",
    ))
    out.append(_template(
        "T2", "T2", g, "Timeliness", META, "binary", MANUAL,
        [Variant("default", "Timeliness - Outdated dataset", "TimelinessDatasetShape", root(
            "TimelinessDatasetShape",
            C("property", property_shape(DCTERMS.modified, C("minInclusive", bound))),
            targets=(Target("class", DATASET),),
        ))],
        ph=[spec("DATE_RANGE_MIN_BOUND", "date")],
    ))
    return out


def _representational() -> list:
    g = "Representational"
    out = []
    rc = "Representational conciseness"
    out.append(_template(
        "RC1a", "RC1", g, rc, DATA, "ratio", CONFIG,
        [Variant("default", "Representational conciseness - Short URIs", "URIsLengthShape",
                 entity_shape("URIsLengthShape", node_shape(C("maxLength", Var("LENGTH_VALUE")))))],
        ph=[spec("LENGTH_VALUE", "integer")],
        denominator="entities",
    ))
    out.append(_template(
        "RC1b", "RC1", g, rc, DATA, "ratio", CONFIG,
        [Variant("default", "Representational conciseness - Parameters in URIs", "URIsParametersShape",
                 entity_shape("URIsParametersShape",
                              node_shape(C("not", node_shape(C("pattern", Pattern(r"\?.+=.*")))))))],
        denominator="entities",
    ))
    prolix = tuple(node_shape(C("class", RDF_NS[c])) for c in ("Statement", "List", "Seq", "Bag", "Alt"))
    out.append(_template(
        "RC2", "RC2", g, rc, DATA, "ratio", CONFIG,
        [Variant("default", "Representational conciseness - Use of prolix RDF features", "ProlixRDFFeaturesShape",
                 entity_shape("ProlixRDFFeaturesShape", node_shape(C("not", node_shape(C("or", prolix))))))],
        denominator="entities",
    ))
    out.append(_template(
        "ITO1", "ITO1", g, "Interoperability", DATA, "composite", MANUAL,
        [Variant("default", "Interoperability - Re-use of existing terms", "ReUseExistingVocabularyTerms", root(
            "ReUseExistingVocabularyTerms",
            C("property", ForEach(P, "_P", min1(Var("_P")))),
            targets=(Target("class", Var("CLASS_URI")),),
        ))],
        ph=[spec("CLASS_URI"), spec("PROPERTY_URI", "term-list", item_kind="iri")],
    ))
    v = "Versatility"
    out.append(_template(
        "V1", "V1", g, v, META, "binary", CONFIG,
        [Variant("default", "Versatility - Serialization formats VoID", "SerializationFormatsShape", root(
            "SerializationFormatsShape",
            C("property", property_shape(
                VOID.feature, C("minCount", 1), C("maxCount", 5),
                C("in", tuple(FORMATS[f] for f in ("N3", "N-Triples", "RDF_XML", "RDFa", "Turtle"))),
            )),
            targets=(Target("class", DATASET),),
        ))],
    ))
    langstring = IRI(RDF_NS + "langString")
    out.append(_template(
        "V2a", "V2", g, v, DATA, "ratio", CONFIG,
        [Variant("default", "Versatility - Languages in entities labels", "DifferentLanguagesLabelsShape", Shape(
            id=Local("DifferentLanguagesLabelsShape"),
            targets=subjects_of(LABEL),
            constraints=(C("or", SCHEMA_TERM_FILTERS + (property_shape(LABEL, C("datatype", langstring)),)),),
        ))],
        denominator="entities_with_label",
    ))
    out.append(_template(
        "V2b", "V2", g, v, DATA, "ratio", CONFIG,
        [Variant("default", "Versatility - Languages in entities descriptions",
                 "DifferentLanguagesDescriptionsShape", Shape(
                     id=Local("DifferentLanguagesDescriptionsShape"),
                     targets=subjects_of(COMMENT),
                     constraints=(C("or", SCHEMA_TERM_FILTERS + (
                         property_shape(COMMENT, C("datatype", langstring)),)),),
                 ))],
        denominator="entities_with_description",
    ))
    out.append(_template(
        "V2c", "V2", g, v, DATA, "ratio", MANUAL,
        [Variant("default", "Versatility - Languages in labels of entities (Extension)",
                 "DifferentLanguagesLabelsExtensionShape", Shape(
                     id=Local("DifferentLanguagesLabelsExtensionShape"),
                     targets=subjects_of(LABEL),
                     constraints=(C("or", SCHEMA_TERM_FILTERS + (property_shape(
                         LABEL, C("datatype", langstring), C("languageIn", Var("REQUIRED_LANGUAGES")),
                         C("uniqueLang", True)),)),),
                 ))],
        ph=[spec("REQUIRED_LANGUAGES", "term-list", item_kind="language")],
        denominator="entities_with_label",
    ))
    it = "Interpretability"
    out.append(_template(
        "ITP1a", "ITP1", g, it, DATA, "ratio", CONFIG,
        [Variant("default", "Interpretability - Use of self-descriptive formats", "SelfDescriptiveFormatEntitiesShape",
                 entity_shape("SelfDescriptiveFormatEntitiesShape", node_shape(C("nodeKind", SH_NS.IRI))))],
        denominator="entities",
    ))
    out.append(_template(
        "ITP1b", "ITP1", g, it, DATA, "composite", AUTO,
        [Variant("default", "Interpretability - Use of self-descriptive formats (properties)",
                 "SelfDescriptiveFormatPropertiesShape",
                 root("SelfDescriptiveFormatPropertiesShape", C("nodeKind", SH_NS.IRI),
                      targets=(Target("objectsOf", P),)))],
        ph=[spec("PROPERTY_URI")],
    ))
    out.append(_template(
        "ITP3a", "ITP3", g, it, SCHEMA, "composite", AUTO,
        [Variant("default", "Interpretability - Undefined classes", "UndefinedClassShape", root(
            "UndefinedClassShape",
            C("property", property_shape(TYPE, C("hasValue", RDFS_NS.Class), C("minCount", 1))),
            targets=(Target("node", Var("CLASS_URI")),),
        ))],
        ph=[spec("CLASS_URI")],
    ))
    out.append(_template(
        "ITP3b", "ITP3", g, it, SCHEMA, "composite", AUTO,
        [Variant("default", "Interpretability - Undefined properties", "UndefinedPropertyShape", root(
            "UndefinedPropertyShape",
            C("property", property_shape(TYPE, C("hasValue", RDF_NS.Property), C("minCount", 1))),
            targets=(Target("node", P),),
        ))],
        ph=[spec("PROPERTY_URI")],
    ))
    out.append(_template(
        "ITP4", "ITP4", g, it, DATA, "ratio", CONFIG,
        [Variant("default", "Interpretability - Usage of blank nodes", "BlankNodesUsageEntitiesShape",
                 entity_shape("BlankNodesUsageEntitiesShape",
                              node_shape(C("not", node_shape(C("nodeKind", SH_NS.BlankNode))))))],
        denominator="entities",
    ))
    return out


@lru_cache(maxsize=1)
def _build() -> tuple:
    templates = _accessibility() + _intrinsic() + _contextual() + _representational()
    return tuple(templates)


def catalog() -> list[ShapeTemplate]:
    """All templates, in group then dimension order."""
    return list(_build())


@lru_cache(maxsize=1)
def _index() -> dict:
    return {t.id: t for t in _build()}


def lookup(template_id: str) -> ShapeTemplate:
    try:
        return _index()[template_id]
    except KeyError:
        raise KeyError(f"no template with id {template_id!r}") from None


def config_terms(overrides: dict | None = None) -> dict:
    terms = dict(CONFIG_DEFAULTS)
    terms.update(overrides or {})
    return terms


class MissingBinding(KeyError):
    def __init__(self, template_id: str, name: str):
        super().__init__(f"{template_id}: no binding for placeholder {name}")
        self.template_id = template_id
        self.name = name


def bind(t: ShapeTemplate, bindings: dict, variant: str | None = None, terms: dict | None = None,
         namespace: str = "urn:dqa:shape:") -> Shape:
    """Substitute ``bindings`` into one body of ``t``.

    Optional placeholders may be left out; alternatives that mention them
    are dropped. Any other missing binding raises :class:`MissingBinding`.
    """
    from .model import UnboundPlaceholder

    body = t.variant(variant).body
    try:
        return substitute(body, bindings, config_terms(terms), optional=t.optional, namespace=namespace)
    except UnboundPlaceholder as exc:
        raise MissingBinding(t.id, exc.name) from None


RENDER_PREFIXES = {
    "ex": str(EX),
    "dcterms": str(DCTERMS),
    "foaf": str(FOAF),
    "void": str(VOID),
    "dcat": str(DCAT),
    "prov": str(PROV),
    "sec": str(SEC),
}


def render_template(t: ShapeTemplate, bindings: dict, variant: str | None = None, terms: dict | None = None,
                    namespace: str = str(EX)) -> str:
    """Turtle for one bound template body, shapes named under ``namespace``."""
    shape = bind(t, bindings, variant, terms, namespace)
    return shapes_to_turtle([shape], RENDER_PREFIXES)


def manifest() -> list[dict]:
    """JSON-ready description of the catalog, one entry per template."""
    out = []
    for t in _build():
        out.append({
            "id": t.id,
            "metric": t.metric_id,
            "group": t.group,
            "dimension": t.dimension,
            "caption": t.caption,
            "target": t.target_artifact,
            "measure_kind": t.measure_kind,
            "denominator": t.denominator,
            "source": t.source,
            "enabled": t.enabled,
            "disabled_reason": t.disabled_reason,
            "placeholders": [
                {"name": p.name, "kind": p.kind, "item_kind": p.item_kind, "optional": p.optional}
                for p in t.placeholders
            ],
            "variants": [
                {"key": v.key, "caption": v.caption, "turtle": _template_turtle(t, v)}
                for v in t.variants
            ],
            "note": t.note,
        })
    return out


def _template_turtle(t: ShapeTemplate, v: Variant) -> str:
    """Turtle of a body with every placeholder shown as ex:NAME."""
    names = placeholders(v.body)
    fake = {}
    for n in names:
        p = t.spec(n)
        if p.kind == "term-list":
            fake[n] = (EX[n + "_1"], EX[n + "_2"]) if p.item_kind != "language" else ("en", "de")
        elif p.kind == "integer":
            fake[n] = 0
        elif p.kind in ("regex",):
            fake[n] = n
        else:
            fake[n] = EX[n]
    return shapes_to_turtle([substitute(v.body, fake, config_terms(), namespace=str(EX))], RENDER_PREFIXES)


def manifest_json() -> str:
    return json.dumps(manifest(), indent=2, sort_keys=False, ensure_ascii=False) + "\n"
