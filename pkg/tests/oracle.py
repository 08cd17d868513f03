"""Direct-scan reference checker for the quality metrics.

Nothing here goes through the validation engine, the shape catalog or the
profiler. Each metric is written out as a plain loop over the triples, from
its textual definition, so disagreements with the pipeline point at a bug
on one side or the other.

Terms are compared by their N-Triples rendering.
"""

from __future__ import annotations

import datetime as dt
import re
from collections import defaultdict
from decimal import Decimal, InvalidOperation

from shacl_dqa.rdf.terms import BNode, IRI, Literal

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"
VOID = "http://rdfs.org/ns/void#"
DCAT = "http://www.w3.org/ns/dcat#"
DCT = "http://purl.org/dc/terms/"
FOAF = "http://xmlns.com/foaf/0.1/"
PROV = "http://www.w3.org/ns/prov#"
SEC = "https://w3id.org/security#"
EX = "http://example.org/"

TYPE = IRI(RDF + "type")
CLASS = IRI(RDFS + "Class")
PROPERTY = IRI(RDF + "Property")
INDIVIDUAL = IRI(OWL + "NamedIndividual")
SUBCLASS = IRI(RDFS + "subClassOf")
LANGSTRING = IRI(RDF + "langString")

OWL_CLASS_TYPES = {IRI(OWL + "Class"), IRI(OWL + "DeprecatedClass"), IRI(RDFS + "Datatype")}
OWL_PROPERTY_TYPES = {IRI(OWL + n) for n in (
    "DatatypeProperty", "ObjectProperty", "AnnotationProperty", "OntologyProperty", "FunctionalProperty",
    "InverseFunctionalProperty", "TransitiveProperty", "SymmetricProperty", "AsymmetricProperty",
    "ReflexiveProperty", "IrreflexiveProperty", "DeprecatedProperty")}
FORMATS = {IRI("http://www.w3.org/ns/formats/" + n) for n in ("N3", "N-Triples", "RDF_XML", "RDFa", "Turtle")}
PROLIX = {IRI(RDF + n) for n in ("Statement", "List", "Seq", "Bag", "Alt")}


def n3(t) -> str:
    return t.n3()


def is_lit(t) -> bool:
    return isinstance(t, Literal)


def is_iri(t) -> bool:
    return type(t) is IRI


def is_bnode(t) -> bool:
    return type(t) is BNode


# literal values, written independently of the library's XSD module

_INT_RE = re.compile(r"^[+-]?[0-9]+$")
_DATE_RE = re.compile(r"^-?[0-9]{4,}-[0-9]{2}-[0-9]{2}(Z|[+-][0-9]{2}:[0-9]{2})?$")


def well_formed(lit: Literal) -> bool:
    d = str(lit.datatype)
    if d in (XSD + "integer", XSD + "int", XSD + "long"):
        return bool(_INT_RE.match(lit.lexical))
    if d == XSD + "date":
        if not _DATE_RE.match(lit.lexical):
            return False
        try:
            dt.date.fromisoformat(lit.lexical[:10])
        except ValueError:
            return False
        return True
    return True


def number(lit):
    if not is_lit(lit) or not well_formed(lit):
        return None
    if str(lit.datatype) in (XSD + "integer", XSD + "decimal", XSD + "int", XSD + "long"):
        try:
            return Decimal(lit.lexical)
        except InvalidOperation:
            return None
    return None


def date(lit):
    if not is_lit(lit) or str(lit.datatype) != XSD + "date" or not well_formed(lit):
        return None
    return dt.date.fromisoformat(lit.lexical[:10])


def at_least(value, bound) -> bool:
    """True when ``value`` >= ``bound``; incomparable values fail."""
    a, b = number(value), number(bound)
    if a is not None and b is not None:
        return a >= b
    a, b = date(value), date(bound)
    if a is not None and b is not None:
        return a >= b
    return False


def at_most(value, bound) -> bool:
    a, b = number(value), number(bound)
    if a is not None and b is not None:
        return a <= b
    return False


def lang_in(tag: str, ranges) -> bool:
    tag = tag.lower()
    return any(tag == r.lower() or tag.startswith(r.lower() + "-") for r in ranges)


class Store:
    """A triple set with two plain dictionaries for lookup."""

    def __init__(self, triples):
        self.triples = set(triples)
        self.sp = defaultdict(set)
        self.po = defaultdict(set)
        for s, p, o in self.triples:
            self.sp[s, p].add(o)
            self.po[p, o].add(s)

    def objs(self, s, p) -> set:
        return self.sp.get((s, p), set())

    def subjs(self, p, o) -> set:
        return self.po.get((p, o), set())

    def subjects_of(self, p) -> set:
        return {s for s, q, _ in self.triples if q == p}

    def objects_of(self, p) -> set:
        return {o for _, q, o in self.triples if q == p}

    def superclasses(self, c) -> set:
        seen = {c}
        todo = [c]
        while todo:
            for sup in self.objs(todo.pop(), SUBCLASS):
                if sup not in seen:
                    seen.add(sup)
                    todo.append(sup)
        return seen

    def instance_of(self, x, c) -> bool:
        return any(c in self.superclasses(t) for t in self.objs(x, TYPE))

    def instances(self, c) -> set:
        return {s for s, p, o in self.triples if p == TYPE and self.instance_of(s, c)}


def enrich(data, schemas):
    """The typing rules, restated: classes, properties, vocabulary individuals."""
    out = set(data)
    for g in schemas:
        out |= set(g)
    typed = defaultdict(set)
    for s, p, o in out:
        if p == TYPE:
            typed[s].add(o)
    added = set()
    for s, ts in typed.items():
        if ts & OWL_CLASS_TYPES:
            added.add((s, TYPE, CLASS))
        if ts & OWL_PROPERTY_TYPES:
            added.add((s, TYPE, PROPERTY))
    for s, p, o in out:
        if p in (IRI(RDFS + "domain"), IRI(RDFS + "range")):
            added.add((s, TYPE, PROPERTY))
    out |= added
    declared = {s for g in schemas for s, p, o in g if p == TYPE and (o in OWL_CLASS_TYPES or o == CLASS)}
    for g in schemas:
        for s, p, o in g:
            if p != TYPE or o not in declared:
                continue
            if (s, TYPE, CLASS) in out or (s, TYPE, PROPERTY) in out:
                continue
            out.add((s, TYPE, INDIVIDUAL))
    return out


class Oracle:
    def __init__(self, data, schemas=(), metadata=None, terms=None):
        schemas = [set(g) for g in schemas]
        self.schema_triples = set().union(*schemas) if schemas else set()
        self.E = Store(enrich(data, schemas))
        self.S = Store(enrich((), schemas))
        self.M = Store(metadata if metadata is not None else ())
        self.have_schema = bool(schemas)
        self.have_metadata = metadata is not None and bool(self.datasets_in(self.M, VOID) or
                                                           self.datasets_in(self.M, DCAT))
        terms = terms or {}
        self.label = terms.get("label", IRI(RDFS + "label"))
        self.comment = terms.get("comment", IRI(RDFS + "comment"))
        self.sameas = terms.get("sameas", IRI(OWL + "sameAs"))

    @staticmethod
    def datasets_in(store, ns):
        return store.subjs(TYPE, IRI(ns + "Dataset"))

    # populations

    def schema_term(self, x) -> bool:
        return bool(self.E.objs(x, TYPE) & {CLASS, PROPERTY, INDIVIDUAL})

    def typed(self) -> set:
        return self.E.subjects_of(TYPE)

    def entities(self) -> set:
        return {s for s in self.typed() if not self.schema_term(s)}

    def entities_having(self, p) -> set:
        return {e for e in self.entities() if self.E.objs(e, p)}

    def schema_classes(self) -> set:
        return {s for s in self.S.subjs(TYPE, CLASS) if is_iri(s)}

    def schema_properties(self) -> set:
        return {s for s in self.S.subjs(TYPE, PROPERTY) if is_iri(s)}

    def declared(self, kind) -> set:
        return {s for s in self.S.subjs(TYPE, IRI(OWL + kind)) if is_iri(s)}

    def usage(self):
        """Properties and classes used by non-schema subjects in data triples."""
        props, classes = set(), set()
        for s, p, o in self.E.triples:
            if self.schema_term(s) or (s, p, o) in self.schema_triples:
                continue
            props.add(p)
            if p == TYPE and is_iri(o):
                classes.add(o)
        return props, classes

    def ranges(self):
        out = defaultdict(set)
        for s, p, o in self.S.triples:
            if p == IRI(RDFS + "range") and is_iri(s) and is_iri(o):
                out[s].add(o)
        return out

    def domains(self):
        out = defaultdict(set)
        for s, p, o in self.S.triples:
            if p == IRI(RDFS + "domain") and is_iri(s) and is_iri(o):
                out[s].add(o)
        return out

    def range_kind(self, r) -> str:
        if r == IRI(RDFS + "Literal"):
            return "literal"
        if r == IRI(OWL + "Thing"):
            return "thing"
        if r == IRI(RDFS + "Resource"):
            return "resource"
        if str(r).startswith(XSD) or r == LANGSTRING or (r, TYPE, IRI(RDFS + "Datatype")) in self.S.triples:
            return "datatype"
        return "class"

    def deprecated_classes(self) -> set:
        flagged = {s for s in self.S.subjects_of(IRI(OWL + "deprecated"))}
        return ({s for s in self.S.subjs(TYPE, IRI(OWL + "DeprecatedClass")) if is_iri(s)}
                | (flagged & self.schema_classes()))

    def deprecated_properties(self) -> set:
        flagged = {s for s in self.S.subjects_of(IRI(OWL + "deprecated"))}
        return ({s for s in self.S.subjs(TYPE, IRI(OWL + "DeprecatedProperty")) if is_iri(s)}
                | (flagged & self.schema_properties()))

    # entity-level checks: focus = typed subjects, schema terms always pass

    def entity_scan(self, bad) -> set:
        return {x for x in self.typed() if not self.schema_term(x) and bad(x)}

    def labelled_scan(self, p, bad) -> set:
        return {x for x in self.E.subjects_of(p) if not self.schema_term(x) and bad(x)}


OPT_IN = {"I1M4b", "S1a", "S1b", "TW23", "TW5b"}
MANUAL = {"I1M4a", "SV2A1a", "SV2A1b", "SV2A1c", "SV2A2", "SV2A3", "SA2A2", "SA3a", "SA3b", "CN7", "CS2",
          "CP2", "CP3a", "CP3b", "R2", "TW5a", "TW6", "T1", "T2", "ITO1", "V2c"}


class Settings:
    """The parts of a run configuration the checker needs."""

    def __init__(self, enabled_shapes=None, domain_knowledge=None, uri_length_threshold=80,
                 dataset_base_iri=None):
        self.enabled_shapes = dict(enabled_shapes or {})
        self.domain_knowledge = dict(domain_knowledge or {})
        self.uri_length_threshold = uri_length_threshold
        self.dataset_base_iri = dataset_base_iri

    @classmethod
    def of(cls, cfg):
        return cls(cfg.enabled_shapes, cfg.domain_knowledge, cfg.uri_length_threshold, cfg.dataset_base_iri)

    def is_enabled_id(self, tid: str) -> bool:
        if tid in self.enabled_shapes:
            return self.enabled_shapes[tid]
        if tid in OPT_IN:
            return False
        if tid in MANUAL:
            return tid in self.domain_knowledge
        return True


def _key(bindings: dict) -> tuple:
    out = []
    for k, v in sorted(bindings.items()):
        if isinstance(v, tuple):
            out.append((k, tuple(x if isinstance(x, str) and not isinstance(x, (IRI, BNode)) else n3(x)
                                 for x in v)))
        elif isinstance(v, int):
            out.append((k, str(v)))
        elif isinstance(v, str) and not isinstance(v, (IRI, BNode)):
            out.append((k, v))
        else:
            out.append((k, n3(v)))
    return tuple(out)


def binding_key(bindings: dict) -> tuple:
    return _key(bindings)


def checks(o: Oracle, cfg) -> dict:
    """template id -> list of (binding key, unit, set of violating focus nodes).

    ``cfg`` supplies the manual bindings, the length threshold and the
    dataset base; automatic bindings are derived here from the graphs.
    """
    E, M = o.E, o.M
    out: dict = {}
    used_p, used_c = o.usage()

    def add(tid, bindings, focus, unit=None):
        key = binding_key(bindings)
        out.setdefault(tid, []).append((key, unit if unit is not None else key, {n3(f) for f in focus}))

    # --- entity filters
    add("P1", {}, o.entity_scan(lambda x: not is_iri(x) or "#" in x))
    add("CP4", {}, o.entity_scan(lambda x: not E.objs(x, o.sameas)))
    add("U1a", {}, o.entity_scan(lambda x: not E.objs(x, o.label)))
    add("RC1a", {"LENGTH_VALUE": cfg.uri_length_threshold},
        o.entity_scan(lambda x: not is_iri(x) or len(x) > cfg.uri_length_threshold))
    add("RC1b", {}, o.entity_scan(lambda x: is_iri(x) and re.search(r"\?.+=.*", x) is not None))
    add("RC2", {}, o.entity_scan(lambda x: any(E.instance_of(x, c) for c in PROLIX)))
    add("ITP1a", {}, o.entity_scan(lambda x: not is_iri(x)))
    add("ITP4", {}, o.entity_scan(is_bnode))
    add("V2a", {}, o.labelled_scan(o.label, lambda x: any(
        not (is_lit(v) and v.datatype == LANGSTRING) for v in E.objs(x, o.label))))
    add("V2b", {}, o.labelled_scan(o.comment, lambda x: any(
        not (is_lit(v) and v.datatype == LANGSTRING) for v in E.objs(x, o.comment))))

    # --- interlinking
    base = cfg.dataset_base_iri
    spaces = sorted({str(v) for v in M.objects_of(IRI(VOID + "uriSpace")) if is_lit(v) or is_iri(v)})
    if base is None and spaces:
        base = IRI(spaces[0])
    if base is not None:
        add("I2", {"DATASET_URI": IRI(base)}, {
            x for x in E.subjects_of(o.sameas)
            if any(not is_iri(v) or str(v).startswith(base) for v in E.objs(x, o.sameas))})

    # --- URI space compliance
    if o.have_metadata:
        patterns = sorted({v.lexical for v in M.objects_of(IRI(VOID + "uriRegexPattern")) if is_lit(v)})
        if patterns:
            add("U3b", {"URI_REGEX_PATTERN": patterns[0]},
                o.entity_scan(lambda x: not is_iri(x) or re.search("^" + patterns[0], x) is None))
        elif spaces:
            add("U3b", {"URI_SPACE": IRI(spaces[0])},
                o.entity_scan(lambda x: not is_iri(x) or not x.startswith(spaces[0])))

    # --- schema-driven templates
    if o.have_schema:
        classes = sorted(o.schema_classes())
        props = sorted(o.schema_properties())
        for p in props:
            add("CN2a", {"PROPERTY_URI": p}, {p} if E.subjs(TYPE, p) else set())
        for c in classes:
            add("CN2b", {"CLASS_URI": c}, o.entity_scan(lambda x, c=c: bool(E.objs(x, c))))
            has_real_instance = any(INDIVIDUAL not in E.objs(x, TYPE) for x in E.subjs(TYPE, c))
            add("CP1", {"CLASS_URI": c}, set() if has_real_instance else {c})
        for p in sorted(o.declared("DatatypeProperty") & used_p):
            add("CN3a", {"PROPERTY_URI": p}, {x for x in E.subjects_of(p) if any(not is_lit(v) for v in E.objs(x, p))})
        for p in sorted(o.declared("ObjectProperty") & used_p):
            add("CN3b", {"PROPERTY_URI": p}, {x for x in E.subjects_of(p) if any(is_lit(v) for v in E.objs(x, p))})
        dep = sorted(o.deprecated_classes())
        if dep:
            add("CN4a", {"CLASSES_LIST": tuple(dep)},
                o.entity_scan(lambda x: bool(E.objs(x, TYPE) & set(dep))))
        for p in sorted(o.deprecated_properties()):
            add("CN4b", {"PROPERTY_URI": p}, o.entity_scan(lambda x, p=p: bool(E.objs(x, p))))
        for p in sorted(o.declared("InverseFunctionalProperty") & used_p):
            add("CN5", {"PROPERTY_URI": p}, {v for v in E.objects_of(p) if len(E.subjs(p, v)) > 1})
        for p in sorted(o.declared("IrreflexiveProperty") & used_p):
            add("CN10a", {"PROPERTY_URI": p}, {x for x in E.subjects_of(p) if x in E.objs(x, p)})
        for p in sorted(o.declared("FunctionalProperty") & used_p):
            add("CN10b", {"PROPERTY_URI": p}, {x for x in E.subjects_of(p) if len(E.objs(x, p)) > 1})
        for p in sorted(o.declared("AsymmetricProperty") & used_p):
            add("CN10c", {"PROPERTY_URI": p}, {x for x in E.subjects_of(p) if E.objs(x, p) & E.subjs(p, x)})
        pairs = set()
        for a, p, b in o.S.triples:
            if p == IRI(OWL + "disjointWith") and is_iri(a) and is_iri(b) and a != b:
                pairs.add(tuple(sorted((a, b))))
        for a, b in sorted(pairs):
            if a in used_c and b in used_c:
                unit = ("pair", a, b)
                add("CN1", {"CLASS_URI": a, "DISJOINT_CLASS_URI": b},
                    {x for x in E.instances(a) if E.instance_of(x, b)}, unit)
                add("CN1", {"CLASS_URI": b, "DISJOINT_CLASS_URI": a},
                    {x for x in E.instances(b) if E.instance_of(x, a)}, unit)
        doms, rngs = o.domains(), o.ranges()
        for p in sorted(used_p & set(doms)):
            for d in sorted(doms[p]):
                if d in (IRI(OWL + "Thing"), IRI(RDFS + "Resource")):
                    add("CN9a", {"PROPERTY_URI": p}, {x for x in E.subjects_of(p) if is_lit(x)}, ("prop", p))
                else:
                    add("CN9a", {"PROPERTY_URI": p, "CLASS": d},
                        {x for x in E.subjects_of(p) if not E.instance_of(x, d)}, ("prop", p))
        for p in sorted(used_p & set(rngs)):
            for r in sorted(rngs[p]):
                kind = o.range_kind(r)
                subjects = E.subjects_of(p)

                def bad_values(test, p=p):
                    return {x for x in subjects if any(test(v) for v in E.objs(x, p))}

                if kind == "datatype":
                    bad = bad_values(lambda v, r=r: not (is_lit(v) and v.datatype == r and well_formed(v)))
                    add("CN9b", {"PROPERTY_URI": p, "DATATYPE": r}, bad, ("prop", p))
                    add("SV3", {"PROPERTY_URI": p, "DATATYPE_URI": r}, bad, ("prop", p))
                elif kind == "class":
                    add("CN9b", {"PROPERTY_URI": p, "CLASS": r},
                        bad_values(lambda v, r=r: not E.instance_of(v, r)), ("prop", p))
                elif kind == "thing":
                    add("CN9b", {"PROPERTY_URI": p}, bad_values(is_lit), ("prop", p))
                elif kind == "literal":
                    add("CN9b", {"PROPERTY_URI": p}, bad_values(lambda v: not is_lit(v)), ("prop", p))
                else:
                    add("CN9b", {"PROPERTY_URI": p}, set(), ("prop", p))
        for c in sorted(c for c in used_c if is_iri(c)):
            add("ITP3a", {"CLASS_URI": c}, set() if (c, TYPE, CLASS) in E.triples else {c})
        for p in sorted(used_p):
            add("ITP3b", {"PROPERTY_URI": p}, set() if (p, TYPE, PROPERTY) in E.triples else {p})
        if not o.schema_classes():
            out.pop("CN2b", None)
            out.pop("CP1", None)
        add("U1b", {}, {c for c in E.instances(CLASS) if not E.objs(c, o.label)})
        add("U1c", {}, {p for p in E.instances(PROPERTY) if not E.objs(p, o.label)})

    for p in sorted(used_p):
        add("ITP1b", {"PROPERTY_URI": p}, {v for v in E.objects_of(p) if not is_iri(v)})

    # --- metadata
    if o.have_metadata:
        cls = IRI(DCAT + "Dataset") if (o.datasets_in(M, DCAT) and not o.datasets_in(M, VOID)) else IRI(VOID + "Dataset")
        ds = M.instances(cls)

        def meta(tid, bad, bindings=None):
            if cfg.is_enabled_id(tid):
                add(tid, bindings or {}, {d for d in ds if bad(d)})

        def distribution_urls(d):
            return {u for dist in M.objs(d, IRI(DCAT + "distribution")) for u in M.objs(dist, IRI(DCAT + "downloadURL"))}

        meta("A2", lambda d: not M.objs(d, IRI(VOID + "dataDump")) and not distribution_urls(d))
        meta("L1", lambda d: not M.objs(d, IRI(DCT + "license")) or any(
            not M.instance_of(v, IRI(DCT + "LicenseDocument")) for v in M.objs(d, IRI(DCT + "license"))))
        meta("S2", lambda d: not any(M.objs(d, IRI(DCT + k)) for k in ("contributor", "creator", "publisher"))
             or not any(M.objs(d, IRI(DCT + k)) for k in ("source", "provenance")))
        meta("SV2A3", lambda d: not M.objs(d, IRI(FOAF + "homepage")) or any(
            not (is_lit(v) and v.datatype == IRI(XSD + "string")) for v in M.objs(d, IRI(FOAF + "homepage"))))

        def u1d(d):
            for p in (DCT + "title", DCT + "description"):
                vals = M.objs(d, IRI(p))
                if not vals or any(not is_lit(v) for v in vals):
                    return True
            pages = M.objs(d, IRI(FOAF + "homepage"))
            return not pages or any(not M.instance_of(v, IRI(FOAF + "Document")) for v in pages)

        if cls == IRI(DCAT + "Dataset"):
            def u1d_dcat(d):
                for p in (DCT + "title", DCT + "description"):
                    vals = M.objs(d, IRI(p))
                    if not vals or any(not is_lit(v) for v in vals):
                        return True
                pages = M.objs(d, IRI(DCAT + "landingPage"))
                return not pages or any(not M.instance_of(v, IRI(FOAF + "Document")) for v in pages)
            meta("U1d", u1d_dcat)
        else:
            meta("U1d", u1d)

        def features(d):
            vals = M.objs(d, IRI(VOID + "feature"))
            return not (1 <= len(vals) <= 5) or any(v not in FORMATS for v in vals)

        meta("V1", features)
        if cfg.is_enabled_id("U2U3U5"):
            add("U2", {}, {d for d in ds if not M.objs(d, IRI(VOID + "exampleResource"))})
            add("U5", {}, {d for d in ds if not M.objs(d, IRI(VOID + "vocabulary"))})
            add("U3", {}, {d for d in ds if not M.objs(d, IRI(VOID + "uriRegexPattern")) and not (
                M.objs(d, IRI(VOID + "uriSpace")) and all(is_lit(v) for v in M.objs(d, IRI(VOID + "uriSpace"))))})
        for b in cfg.domain_knowledge.get("T2", []):
            bound = b["DATE_RANGE_MIN_BOUND"]
            meta("T2", lambda d: any(not at_least(v, bound) for v in M.objs(d, IRI(DCT + "modified"))), b)
        for b in cfg.domain_knowledge.get("TW5a", []):
            prov_ok, contrib_ok = set(b["LIST_TRUSTED_PROVIDERS"]), set(b["LIST_TRUSTED_CONTRIBUTORS"])
            meta("TW5a", lambda d: bool(M.objs(d, IRI(DCT + "provider")) - prov_ok)
                 or bool(M.objs(d, IRI(DCT + "contributor")) - contrib_ok), b)

    # --- opt-in templates without placeholders
    trust = IRI(EX + "trustvalue")
    if cfg.is_enabled_id("TW23"):
        add("TW23", {}, o.entity_scan(lambda x: not E.objs(x, trust)))
    if cfg.is_enabled_id("TW5b"):
        def bad_pub(x):
            vals = E.objs(x, trust)
            return not vals or any(not (is_lit(v) and v.datatype == IRI(XSD + "integer") and well_formed(v)
                                        and 1 <= int(v.lexical) <= 9) for v in vals)
        add("TW5b", {}, {x for x in E.objects_of(IRI(DCT + "publisher")) if bad_pub(x)})
    if cfg.is_enabled_id("S1a"):
        proof = IRI(SEC + "DataIntegrityProof")
        add("S1a", {}, set() if E.subjs(TYPE, proof) else {proof})
    if cfg.is_enabled_id("S1b"):
        purposes = {IRI(SEC + n) for n in ("assertionMethod", "authentication", "keyAgreement",
                                           "capabilityInvocation", "capabilityDelegation")}

        def bad_proof(x):
            pp = E.objs(x, IRI(SEC + "proofPurpose"))
            cs = E.objs(x, IRI(SEC + "cryptosuite"))
            pv = E.objs(x, IRI(SEC + "proofValue"))
            return (not pp or bool(pp - purposes)
                    or not cs or any(not (is_lit(v) and v.datatype == IRI(SEC + "cryptosuiteString")) for v in cs)
                    or not pv or any(not (is_lit(v) and v.datatype == IRI(XSD + "string")) for v in pv))
        add("S1b", {}, {x for x in E.instances(IRI(SEC + "DataIntegrityProof")) if bad_proof(x)})
    if cfg.is_enabled_id("I1M4b"):
        add("I1M4b", {}, {x for x in E.subjects_of(o.sameas) if E.subjs(o.sameas, x) != E.objs(x, o.sameas)})

    # --- manual templates, bindings from the configuration
    dk = cfg.domain_knowledge
    for b in dk.get("I1M4a", []):
        e = b["ENTITY_URI"]
        seen, todo = set(), [e]
        while todo:
            for v in E.objs(todo.pop(), o.sameas):
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        add("I1M4a", b, set() if e in seen else {e})
    for b in dk.get("SV2A1a", []):
        p, lo, hi = b["PROPERTY_URI"], b["MIN_VALUE"], b["MAX_VALUE"]
        add("SV2A1a", b, {x for x in E.subjects_of(p)
                          if any(not (at_least(v, lo) and at_most(v, hi)) for v in E.objs(x, p))})
    for b in dk.get("SV2A1b", []):
        p = b["PROPERTY_URI"]
        add("SV2A1b", b, {x for x in E.subjects_of(p) if b["RDF_TERM"] not in E.objs(x, p)})
    for b in dk.get("SV2A1c", []):
        p, allowed = b["PROPERTY_URI"], set(b["LIST_ALLOWED_VALUES"])
        add("SV2A1c", b, {x for x in E.subjects_of(p) if E.objs(x, p) - allowed})
    for b in dk.get("SV2A2", []):
        p, rx = b["PROPERTY_URI"], re.compile(b["PATTERN"])
        add("SV2A2", b, {x for x in E.subjects_of(p)
                         if any(is_bnode(v) or rx.search(v.lexical if is_lit(v) else v) is None for v in E.objs(x, p))})
    for b in dk.get("SA2A2", []):
        p1, p2 = b["PROPERTY_URI_1"], b["PROPERTY_URI_2"]
        add("SA2A2", b, {x for x in E.subjects_of(p1) if E.objs(x, p1) != E.objs(x, p2)})
    for b in dk.get("SA3a", []):
        e, allowed = b["ENTITY_URI"], set(b["LIST_ALLOWED_VALUES"])
        add("SA3a", b, {e} if E.objs(e, o.label) - allowed else set())
    for b in dk.get("SA3b", []):
        e, allowed = b["ENTITY_URI"], set(b["CLASSES_LIST"])
        add("SA3b", b, {e} if E.objs(e, TYPE) - allowed else set())
    for b in dk.get("CN7", []):
        c, ante, cons = b["CLASS_URI"], b["PROPERTY_URI_1"], b["PROPERTY_URI_2"]
        add("CN7", b, {x for x in E.instances(c)
                       if all(E.objs(x, a) for a in ante) and any(E.objs(x, q) for q in cons)})
    for b in dk.get("CS2", []):
        p = b["PROPERTY_URI"]
        add("CS2", b, {v for v in E.objects_of(p) if len(E.subjs(p, v)) > 1})
    for b in dk.get("CP2", []):
        p, n = b["PROPERTY_URI"], b["COUNT"]
        add("CP2", b, {x for x in E.subjects_of(p) if len(E.objs(x, p)) < n})
    for b in dk.get("CP3a", []):
        e, p, n, allowed = b["ENTITY_URI"], b["PROPERTY_URI"], b["COUNT"], set(b["LIST_ALLOWED_VALUES"])
        vals = E.objs(e, p)
        add("CP3a", b, {e} if len(vals) != n or vals - allowed else set())
    for b in dk.get("CP3b", []):
        c, n, allowed = b["CLASS_URI"], b["COUNT"], set(b["LIST_ALLOWED_VALUES"])
        members = E.subjs(TYPE, c)
        add("CP3b", b, {c} if len(members) != n or members - allowed else set())
    for b in dk.get("R2", []):
        c, props = b["CLASS_URI"], b["PROPERTY_URI"]
        add("R2", b, {x for x in E.instances(c) if any(len(E.objs(x, p)) != 1 for p in props)})
    for b in dk.get("ITO1", []):
        c, props = b["CLASS_URI"], b["PROPERTY_URI"]
        add("ITO1", b, {x for x in E.instances(c) if any(not E.objs(x, p) for p in props)})
    for b in dk.get("TW6", []):
        allowed = set(b["LIST_TRUSTED_AUTHORS"])
        att = IRI(PROV + "wasAttributedTo")
        add("TW6", b, o.entity_scan(lambda x: not E.objs(x, att) or bool(E.objs(x, att) - allowed)))
    for b in dk.get("T1", []):
        bound = b["DATE_RANGE_MIN_BOUND"]
        add("T1", b, o.entity_scan(lambda x: any(not at_least(v, bound) for v in E.objs(x, IRI(DCT + "date")))))
    for b in dk.get("V2c", []):
        langs = b["REQUIRED_LANGUAGES"]

        def bad_labels(x):
            vals = E.objs(x, o.label)
            if any(not (is_lit(v) and v.datatype == LANGSTRING) for v in vals):
                return True
            tags = [v.language.lower() for v in vals]
            return any(not lang_in(t, langs) for t in tags) or len(tags) != len(set(tags))
        add("V2c", b, o.labelled_scan(o.label, bad_labels))
    return out


KIND = {
    "binary": {"A2", "L1", "S1a", "S1b", "S2", "SV2A3", "CN4a", "U1d", "U2", "U3", "U5", "TW5a", "TW5b", "T2", "V1"},
    "ratio": {"I2", "P1", "CP4", "U1a", "U1b", "U1c", "U3b", "TW23", "TW6", "T1", "RC1a", "RC1b", "RC2",
              "V2a", "V2b", "V2c", "ITP1a", "ITP4"},
    "report-only": {"I1M4a", "I1M4b"},
}


def population(o: Oracle, metric: str) -> set:
    if metric in ("V2a", "V2c"):
        return o.entities_having(o.label)
    if metric == "V2b":
        return o.entities_having(o.comment)
    if metric == "I2":
        return o.entities_having(o.sameas)
    if metric == "U1b":
        return o.schema_classes()
    if metric == "U1c":
        return o.schema_properties()
    return o.entities()


def measures(o: Oracle, found: dict) -> dict:
    """metric -> (violations, denominator, conformance) computed by hand."""
    out = {}
    for metric, rows in found.items():
        if metric in KIND["report-only"]:
            continue
        if metric in KIND["binary"]:
            focus = set().union(*(f for _, _, f in rows))
            out[metric] = (len(focus), None, 1.0 if not focus else 0.0)
        elif metric in KIND["ratio"]:
            focus = set().union(*(f for _, _, f in rows))
            pop = {n3(x) for x in population(o, metric)}
            v = len(focus & pop)
            out[metric] = (v, len(pop), (1 - v / len(pop)) if pop else None)
        else:
            units: dict = {}
            for _, unit, f in rows:
                units[unit] = units.get(unit, True) and not f
            failing = sum(1 for ok in units.values() if not ok)
            out[metric] = (failing, len(units), 1 - failing / len(units))
    return out
