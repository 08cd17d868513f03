"""Choosing and filling catalog templates for one run.

Automatic templates are bound from the data profile (one instance per used
inverse-functional property, per property with a declared range, and so on)
or from the configuration. Manual templates are bound only from the
domain-knowledge blocks of the configuration. Nothing is merged: every
instance stays its own shape so each result is attributed to one metric.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field

from .config import Config
from .profiler import DCAT, VOID, DataProfile
from .rdf.terms import OWL_NS, RDFS_NS, BNode, IRI, Literal
from .shapes.catalog import ShapeTemplate, bind, catalog
from .shapes.model import Shape

log = logging.getLogger(__name__)

SHAPE_NAMESPACE = "urn:dqa:shape:"

# templates whose target is the dataset description
METADATA_TEMPLATES = frozenset({"A2", "L1", "S2", "SV2A3", "U1d", "U2U3U5", "V1", "T2", "TW5a"})
# templates that only make sense with vocabularies loaded
SCHEMA_TEMPLATES = frozenset({
    "SV3", "CN1", "CN2a", "CN2b", "CN3a", "CN3b", "CN4a", "CN4b", "CN5", "CN9a", "CN9b",
    "CN10a", "CN10b", "CN10c", "CP1", "ITP3a", "ITP3b", "U1b", "U1c",
})


class BindingError(ValueError):
    def __init__(self, template_id: str, name: str, expected: str, got):
        super().__init__(f"{template_id}: placeholder {name} expects {expected}, got {got!r}")
        self.template_id = template_id
        self.name = name
        self.expected = expected


@dataclass(frozen=True)
class InstantiatedShape:
    shape_id: IRI
    template_id: str
    variant: str | None
    bindings: tuple  # sorted (name, value) pairs
    target_artifact: str
    shape: Shape
    unit: str  # composite measures score one unit per key

    @property
    def digest(self) -> str:
        return self.shape_id.rsplit("-", 1)[-1]

    def binding(self, name: str):
        return dict(self.bindings).get(name)


@dataclass
class PlanLog:
    skipped: list = field(default_factory=list)  # (template id, reason)

    def skip(self, tid: str, reason: str):
        self.skipped.append((tid, reason))
        log.info("skipping %s: %s", tid, reason)

    def lines(self) -> list[str]:
        return [f"skipped {tid}: {reason}" for tid, reason in self.skipped]


def _n3(v) -> str:
    if isinstance(v, (IRI, BNode, Literal)):
        return v.n3()
    if isinstance(v, tuple):
        return "(" + " ".join(_n3(x) for x in v) + ")"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return Literal(str(v)).n3()


def binding_digest(template_id: str, variant: str | None, bindings: dict) -> str:
    """Hex digest of the canonical N-Triples-style rendering of the bound values."""
    lines = [template_id, variant or ""]
    lines += [f"{name}={_n3(bindings[name])}" for name in sorted(bindings)]
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


_DATE_TYPES = ("date", "dateTime", "dateTimeStamp")


def check_kinds(t: ShapeTemplate, bindings: dict):
    for name, value in bindings.items():
        try:
            p = t.spec(name)
        except KeyError:
            raise BindingError(t.id, name, "no value (not a placeholder of this template)", value) from None
        _check(t.id, p.kind, p.item_kind, name, value)


def _check(tid, kind, item_kind, name, value):
    ok = True
    if kind == "iri":
        ok = type(value) is IRI
    elif kind == "literal":
        ok = type(value) is Literal
    elif kind == "term":
        ok = type(value) in (IRI, Literal)
    elif kind == "integer":
        ok = type(value) is int
    elif kind == "date":
        ok = type(value) is Literal and any(value.datatype.endswith("#" + d) for d in _DATE_TYPES)
    elif kind == "regex":
        ok = isinstance(value, str) and type(value) is str
    elif kind == "term-list":
        ok = isinstance(value, tuple)
        if ok:
            for item in value:
                if item_kind == "language":
                    good = type(item) is str
                elif item_kind == "iri":
                    good = type(item) is IRI
                else:
                    good = type(item) in (IRI, Literal)
                if not good:
                    raise BindingError(tid, name, f"a list of {item_kind} values", item)
    if not ok:
        raise BindingError(tid, name, f"a value of kind {kind}", value)


def instantiate(t: ShapeTemplate, bindings: dict, variant: str | None = None, terms: dict | None = None,
                unit: str | None = None) -> InstantiatedShape:
    """Bind one template body and give it its stable identifier."""
    check_kinds(t, bindings)
    if variant is None and len(t.variants) > 1:
        variant = t.variants[0].key
    digest = binding_digest(t.id, variant, bindings)
    shape_id = IRI(f"{SHAPE_NAMESPACE}{t.id}-{digest[:12]}")
    shape = bind(t, bindings, variant, terms, SHAPE_NAMESPACE).with_id(shape_id)
    return InstantiatedShape(
        shape_id=shape_id,
        template_id=t.id,
        variant=variant,
        bindings=tuple(sorted(bindings.items())),
        target_artifact=t.target_artifact,
        shape=shape,
        unit=unit if unit is not None else shape_id,
    )


def dataset_class(profile: DataProfile) -> IRI:
    """VoID unless the metadata only describes a DCAT dataset."""
    if profile.dcat_datasets and not profile.void_datasets:
        return DCAT.Dataset
    return VOID.Dataset


def _sorted(nodes) -> list:
    return sorted((n for n in nodes if type(n) is IRI), key=str)


def _domain_variant(d) -> tuple:
    if d == OWL_NS.Thing or d == RDFS_NS.Resource:
        return "thing", {}
    return "class", {"CLASS": d}


def _range_variant(profile: DataProfile, r) -> tuple:
    kind = profile.range_kind(r)
    if kind == "datatype":
        return "datatype", {"DATATYPE": r}
    if kind == "class":
        return "class", {"CLASS": r}
    return kind, {}


def _automatic(t: ShapeTemplate, profile: DataProfile, cfg: Config, log_: PlanLog):
    """Yield (variant, bindings, unit) triples for an automatic template."""
    tid = t.id
    used_p = profile.used_properties
    used_c = profile.used_classes
    declared = profile.declared

    def per_property(props):
        props = _sorted(props)
        if not props:
            log_.skip(tid, "no matching property in use")
        for p in props:
            yield None, {"PROPERTY_URI": p}, None

    if tid == "RC1a":
        yield None, {"LENGTH_VALUE": cfg.uri_length_threshold}, None
    elif tid == "I2":
        base = cfg.dataset_base_iri
        if base is None and profile.uri_spaces:
            base = IRI(profile.uri_spaces[0])
        if base is None:
            log_.skip(tid, "no dataset base IRI in the configuration or void:uriSpace")
            return
        yield None, {"DATASET_URI": IRI(base)}, None
    elif tid == "U3b":
        if profile.uri_regex_patterns:
            yield None, {"URI_REGEX_PATTERN": profile.uri_regex_patterns[0]}, None
        elif profile.uri_spaces:
            yield None, {"URI_SPACE": IRI(profile.uri_spaces[0])}, None
        else:
            log_.skip(tid, "no void:uriRegexPattern or void:uriSpace in the metadata")
    elif tid == "U1d":
        yield ("dcat" if dataset_class(profile) == DCAT.Dataset else "void"), {}, None
    elif tid == "SV3":
        found = False
        for p in _sorted(used_p & set(profile.ranges)):
            for r in profile.ranges[p]:
                if profile.range_kind(r) == "datatype":
                    found = True
                    yield None, {"PROPERTY_URI": p, "DATATYPE_URI": r}, str(p)
        if not found:
            log_.skip(tid, "no property with a datatype range in use")
    elif tid == "CN1":
        pairs = [(a, b) for a, b in profile.disjoint_pairs if a in used_c and b in used_c]
        if not pairs:
            log_.skip(tid, "no pair of disjoint classes in use")
        for a, b in pairs:
            unit = f"{a} {b}"
            yield None, {"CLASS_URI": a, "DISJOINT_CLASS_URI": b}, unit
            yield None, {"CLASS_URI": b, "DISJOINT_CLASS_URI": a}, unit
    elif tid == "CN2a":
        yield from per_property(profile.schema_properties)
    elif tid in ("CN2b", "CP1"):
        classes = _sorted(profile.schema_classes)
        if not classes:
            log_.skip(tid, "no schema classes")
        for c in classes:
            yield None, {"CLASS_URI": c}, None
    elif tid == "CN3a":
        yield from per_property(declared.get("datatype", frozenset()) & used_p)
    elif tid == "CN3b":
        yield from per_property(declared.get("object", frozenset()) & used_p)
    elif tid == "CN4a":
        if profile.deprecated_classes:
            yield None, {"CLASSES_LIST": tuple(_sorted(profile.deprecated_classes))}, None
        else:
            log_.skip(tid, "no deprecated classes")
    elif tid == "CN4b":
        yield from per_property(profile.deprecated_properties)
    elif tid == "CN5":
        yield from per_property(declared.get("inverse_functional", frozenset()) & used_p)
    elif tid == "CN9a":
        props = _sorted(used_p & set(profile.domains))
        if not props:
            log_.skip(tid, "no property with a declared domain in use")
        for p in props:
            for d in profile.domains[p]:
                variant, extra = _domain_variant(d)
                yield variant, {"PROPERTY_URI": p, **extra}, str(p)
    elif tid == "CN9b":
        props = _sorted(used_p & set(profile.ranges))
        if not props:
            log_.skip(tid, "no property with a declared range in use")
        for p in props:
            for r in profile.ranges[p]:
                variant, extra = _range_variant(profile, r)
                yield variant, {"PROPERTY_URI": p, **extra}, str(p)
    elif tid == "CN10a":
        yield from per_property(declared.get("irreflexive", frozenset()) & used_p)
    elif tid == "CN10b":
        yield from per_property(declared.get("functional", frozenset()) & used_p)
    elif tid == "CN10c":
        yield from per_property(declared.get("asymmetric", frozenset()) & used_p)
    elif tid in ("ITP1b", "ITP3b"):
        yield from per_property(used_p)
    elif tid == "ITP3a":
        classes = _sorted(used_c)
        if not classes:
            log_.skip(tid, "no classes in use")
        for c in classes:
            yield None, {"CLASS_URI": c}, None
    else:
        if t.placeholders:
            raise AssertionError(f"no binding rule for {tid}")
        yield None, {}, None


def plan_with_log(profile: DataProfile, cfg: Config, have_metadata: bool, have_schema: bool):
    """Instantiated shapes for a run, and the log of skipped templates."""
    plog = PlanLog()
    terms = cfg.terms()
    terms["dataset_class"] = dataset_class(profile)
    out: dict = {}
    for t in catalog():
        if not cfg.is_enabled(t):
            if cfg.enabled_shapes.get(t.id) is False:
                plog.skip(t.id, "disabled in the configuration")
            elif t.is_manual:
                plog.skip(t.id, "manual template without domain-knowledge bindings")
            else:
                plog.skip(t.id, f"disabled by default ({t.disabled_reason or 'opt-in'})")
            continue
        if t.target_artifact == "metadata-graph" or t.id in METADATA_TEMPLATES:
            if not have_metadata:
                plog.skip(t.id, "no metadata graph")
                continue
        if t.id in SCHEMA_TEMPLATES and not have_schema:
            plog.skip(t.id, "no ontology or vocabulary graphs")
            continue
        if t.id == "U3b" and not have_metadata:
            plog.skip(t.id, "no metadata graph")
            continue
        if t.is_manual:
            blocks = cfg.domain_knowledge.get(t.id, [])
            if not blocks and not t.placeholders:
                blocks = [{}]
            if not blocks:
                plog.skip(t.id, "manual template without domain-knowledge bindings")
                continue
            items = [(None, b, None) for b in blocks]
        else:
            items = _automatic(t, profile, cfg, plog)
        for variant, bindings, unit in items:
            inst = instantiate(t, bindings, variant, terms, unit)
            out.setdefault(inst.shape_id, inst)
    shapes = sorted(out.values(), key=lambda s: (s.template_id, s.digest))
    log.info("planned %d shapes from %d templates", len(shapes), len({s.template_id for s in shapes}))
    return shapes, plog


def plan(profile: DataProfile, cfg: Config, have_metadata: bool, have_schema: bool) -> list[InstantiatedShape]:
    return plan_with_log(profile, cfg, have_metadata, have_schema)[0]
