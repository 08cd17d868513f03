"""Run configuration, read from a single JSON document.

Recognised keys (all optional)::

    {
      "type_property": "rdf:type",
      "label_property": "rdfs:label",
      "comment_property": "rdfs:comment",
      "sameas_property": "owl:sameAs",
      "dataset_base_iri": "http://example.org/",
      "uri_length_threshold": 80,
      "prefixes": {"ex": "http://example.org/"},
      "enabled_shapes": {"I1M4b": true, "CN2b": false},
      "domain_knowledge": {"CP2": [{"PROPERTY_URI": "ex:name", "COUNT": 1}]}
    }

IRIs may be written in full or as prefixed names. Literal values are JSON
strings (xsd:string), numbers, booleans, or objects of the form
``{"value": "...", "datatype": "..."}`` / ``{"value": "...", "language": "en"}``;
``{"iri": "..."}`` forces an IRI where either kind is allowed.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .rdf import xsd
from .rdf.terms import OWL, RDF, RDFS, XSD, IRI, Literal
from .rdf.turtle import is_absolute
from .shapes.catalog import lookup

STANDARD_PREFIXES = {
    "rdf": RDF,
    "rdfs": RDFS,
    "owl": OWL,
    "xsd": XSD,
    "skos": "http://www.w3.org/2004/02/skos/core#",
    "foaf": "http://xmlns.com/foaf/0.1/",
    "dcterms": "http://purl.org/dc/terms/",
    "dc": "http://purl.org/dc/elements/1.1/",
    "void": "http://rdfs.org/ns/void#",
    "dcat": "http://www.w3.org/ns/dcat#",
    "prov": "http://www.w3.org/ns/prov#",
    "schema": "http://schema.org/",
}

KEYS = (
    "type_property",
    "label_property",
    "comment_property",
    "sameas_property",
    "dataset_base_iri",
    "uri_length_threshold",
    "prefixes",
    "enabled_shapes",
    "domain_knowledge",
)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    type_property: IRI = IRI(RDF + "type")
    label_property: IRI = IRI(RDFS + "label")
    comment_property: IRI = IRI(RDFS + "comment")
    sameas_property: IRI = IRI(OWL + "sameAs")
    dataset_base_iri: IRI | None = None
    uri_length_threshold: int = 80
    enabled_shapes: dict = field(default_factory=dict)
    domain_knowledge: dict = field(default_factory=dict)  # template id -> list of binding dicts

    def __post_init__(self):
        if self.uri_length_threshold <= 0:
            raise ConfigError("uri_length_threshold must be positive")

    def terms(self) -> dict:
        """Values of the configuration-driven catalog leaves."""
        return {
            "type": self.type_property,
            "label": self.label_property,
            "comment": self.comment_property,
            "sameas": self.sameas_property,
        }

    def is_enabled(self, template) -> bool:
        override = self.enabled_shapes.get(template.id)
        if override is not None:
            return override
        if template.is_manual:
            return template.id in self.domain_knowledge
        return template.enabled


class _Decoder:
    def __init__(self, prefixes: dict):
        self.prefixes = prefixes

    def iri(self, value, where: str) -> IRI:
        if isinstance(value, dict) and set(value) == {"iri"}:
            value = value["iri"]
        if not isinstance(value, str):
            raise ConfigError(f"{where}: expected an IRI, got {value!r}")
        expanded = self._expand(value)
        if expanded is None:
            raise ConfigError(f"{where}: {value!r} is not an absolute IRI or known prefixed name")
        return expanded

    def _expand(self, text: str) -> IRI | None:
        if any(c in text for c in ' <>"{}|^`\\'):
            return None
        prefix, sep, local = text.partition(":")
        if sep and prefix in self.prefixes and not local.startswith("//"):
            return IRI(self.prefixes[prefix] + local)
        if is_absolute(text):
            return IRI(text)
        return None

    def literal(self, value, where: str) -> Literal:
        if isinstance(value, bool):
            return Literal("true" if value else "false", IRI(XSD + "boolean"))
        if isinstance(value, int):
            return Literal(str(value), IRI(XSD + "integer"))
        if isinstance(value, float):
            return Literal(repr(value), IRI(XSD + "double"))
        if isinstance(value, str):
            return Literal(value)
        if isinstance(value, dict) and "value" in value and set(value) <= {"value", "datatype", "language"}:
            lex = value["value"]
            if not isinstance(lex, str):
                raise ConfigError(f"{where}: literal value must be a string")
            if "language" in value:
                if "datatype" in value:
                    raise ConfigError(f"{where}: a literal has either a datatype or a language")
                return Literal(lex, language=value["language"])
            if "datatype" in value:
                dt = self.iri(value["datatype"], where + ".datatype")
                if not xsd.is_well_formed(Literal(lex, dt)):
                    raise ConfigError(f"{where}: {lex!r} is not a valid {dt}")
                return Literal(lex, dt)
            return Literal(lex)
        raise ConfigError(f"{where}: expected a literal, got {value!r}")

    def term(self, value, where: str):
        if isinstance(value, dict) and set(value) == {"iri"}:
            return self.iri(value, where)
        if isinstance(value, str):
            expanded = self._expand(value)
            if expanded is not None:
                return expanded
        return self.literal(value, where)

    def date(self, value, where: str) -> Literal:
        if isinstance(value, str):
            dt = IRI(XSD + ("dateTime" if "T" in value else "date"))
            if not xsd.is_well_formed(Literal(value, dt)):
                raise ConfigError(f"{where}: {value!r} is not a valid date")
            return Literal(value, dt)
        lit = self.literal(value, where)
        if lit.datatype not in (IRI(XSD + "date"), IRI(XSD + "dateTime"), IRI(XSD + "dateTimeStamp")):
            raise ConfigError(f"{where}: expected a date")
        return lit

    def value(self, spec, value, where: str):
        kind = spec.kind
        if kind == "iri":
            return self.iri(value, where)
        if kind == "literal":
            return self.literal(value, where)
        if kind == "term":
            return self.term(value, where)
        if kind == "integer":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{where}: expected an integer, got {value!r}")
            return value
        if kind == "date":
            return self.date(value, where)
        if kind == "regex":
            if not isinstance(value, str):
                raise ConfigError(f"{where}: expected a regular expression string")
            try:
                re.compile(value)
            except re.error as exc:
                raise ConfigError(f"{where}: invalid regular expression: {exc}") from None
            return value
        if kind == "term-list":
            if not isinstance(value, list):
                raise ConfigError(f"{where}: expected a list")
            items = []
            for i, item in enumerate(value):
                w = f"{where}[{i}]"
                if spec.item_kind == "iri":
                    items.append(self.iri(item, w))
                elif spec.item_kind == "language":
                    if not isinstance(item, str) or not item:
                        raise ConfigError(f"{w}: expected a language tag")
                    items.append(item)
                else:
                    items.append(self.term(item, w))
            return tuple(items)
        raise ConfigError(f"{where}: unsupported placeholder kind {kind}")


def _bindings(decoder: _Decoder, tid: str, blocks) -> list:
    try:
        t = lookup(tid)
    except KeyError:
        raise ConfigError(f"domain_knowledge: unknown template {tid!r}") from None
    if isinstance(blocks, dict):
        blocks = [blocks]
    if not isinstance(blocks, list):
        raise ConfigError(f"domain_knowledge.{tid}: expected a list of binding objects")
    names = {p.name for p in t.placeholders}
    out = []
    for i, block in enumerate(blocks):
        where = f"domain_knowledge.{tid}[{i}]"
        if not isinstance(block, dict):
            raise ConfigError(f"{where}: expected an object")
        for key in block:
            if key not in names:
                raise ConfigError(f"{where}: unknown placeholder {key!r}")
        bound = {}
        for p in t.placeholders:
            if p.name not in block:
                if p.optional:
                    continue
                raise ConfigError(f"{where}: missing placeholder {p.name}")
            bound[p.name] = decoder.value(p, block[p.name], f"{where}.{p.name}")
        out.append(bound)
    return out


def config_from_dict(doc: dict) -> Config:
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")
    for key in doc:
        if key not in KEYS:
            raise ConfigError(f"unknown configuration key {key!r}")
    prefixes = dict(STANDARD_PREFIXES)
    extra = doc.get("prefixes", {})
    if not isinstance(extra, dict) or not all(isinstance(v, str) for v in extra.values()):
        raise ConfigError("prefixes: expected an object of prefix -> namespace strings")
    prefixes.update(extra)
    dec = _Decoder(prefixes)

    kw: dict = {}
    for key in ("type_property", "label_property", "comment_property", "sameas_property", "dataset_base_iri"):
        if doc.get(key) is not None:
            kw[key] = dec.iri(doc[key], key)
    if "uri_length_threshold" in doc:
        v = doc["uri_length_threshold"]
        if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
            raise ConfigError("uri_length_threshold: expected a positive integer")
        kw["uri_length_threshold"] = v

    enabled = doc.get("enabled_shapes", {})
    if not isinstance(enabled, dict):
        raise ConfigError("enabled_shapes: expected an object of template id -> boolean")
    for tid, flag in enabled.items():
        try:
            lookup(tid)
        except KeyError:
            raise ConfigError(f"enabled_shapes: unknown template {tid!r}") from None
        if not isinstance(flag, bool):
            raise ConfigError(f"enabled_shapes.{tid}: expected true or false")
    kw["enabled_shapes"] = dict(sorted(enabled.items()))

    dk = doc.get("domain_knowledge", {})
    if not isinstance(dk, dict):
        raise ConfigError("domain_knowledge: expected an object of template id -> bindings")
    kw["domain_knowledge"] = {tid: _bindings(dec, tid, blocks) for tid, blocks in sorted(dk.items())}
    return Config(**kw)


def load_config(path) -> Config:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read configuration: {exc.strerror}") from None
    try:
        doc = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None
    try:
        return config_from_dict(doc)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None
