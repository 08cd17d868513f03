"""RDF terms: IRIs, blank nodes and literals.

IRIs and blank nodes are thin ``str`` subclasses so they hash and compare
quickly inside the graph indexes. Equality is type-aware, so an IRI never
equals a blank node or a plain string with the same characters.
"""

from __future__ import annotations

from typing import Union

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
SH = "http://www.w3.org/ns/shacl#"


class IRI(str):
    __slots__ = ()

    def __eq__(self, other):
        return type(other) is IRI and str.__eq__(self, other)

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = str.__hash__

    def __repr__(self):
        return f"IRI({str.__repr__(self)})"

    def n3(self) -> str:
        return "<" + _escape_iri(self) + ">"


class BNode(str):
    __slots__ = ()

    def __eq__(self, other):
        return type(other) is BNode and str.__eq__(self, other)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        # differ from the IRI with the same label
        return str.__hash__(self) ^ 0x5BD1E995

    def __repr__(self):
        return f"BNode({str.__repr__(self)})"

    def n3(self) -> str:
        return "_:" + self


XSD_STRING = IRI(XSD + "string")
RDF_LANGSTRING = IRI(RDF + "langString")


class Literal:
    """An RDF literal.

    ``datatype`` is always set: plain literals get ``xsd:string`` and
    language-tagged ones get ``rdf:langString``. Language tags are stored
    lower-cased, which is how they compare.
    """

    __slots__ = ("lexical", "datatype", "language", "_hash")

    def __init__(self, lexical: str, datatype: IRI | None = None, language: str | None = None):
        if language:
            language = language.lower()
            datatype = RDF_LANGSTRING
        else:
            language = None
            if datatype is None:
                datatype = XSD_STRING
        self.lexical = lexical
        self.datatype = datatype
        self.language = language
        self._hash = hash((lexical, datatype, language))

    def __eq__(self, other):
        return (
            type(other) is Literal
            and self.lexical == other.lexical
            and self.datatype == other.datatype
            and self.language == other.language
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Literal({self.n3()})"

    def __str__(self):
        return self.lexical

    def __reduce__(self):
        return (Literal, (self.lexical, self.datatype, self.language))

    def n3(self) -> str:
        out = '"' + escape_string(self.lexical) + '"'
        if self.language:
            return out + "@" + self.language
        if self.datatype != XSD_STRING:
            return out + "^^" + self.datatype.n3()
        return out


Term = Union[IRI, BNode, Literal]

_STRING_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}


def escape_string(value: str) -> str:
    if not any(ch in value for ch in _STRING_ESCAPES) and value.isprintable():
        return value
    out = []
    for ch in value:
        if ch in _STRING_ESCAPES:
            out.append(_STRING_ESCAPES[ch])
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append("\\u%04X" % ord(ch))
        else:
            out.append(ch)
    return "".join(out)


_IRI_BAD = set('<>"{}|^`\\ ')


def _escape_iri(value: str) -> str:
    if not any(ch in _IRI_BAD or ord(ch) <= 0x20 for ch in value):
        return value
    out = []
    for ch in value:
        if ch in _IRI_BAD or ord(ch) <= 0x20:
            out.append("\\u%04X" % ord(ch))
        else:
            out.append(ch)
    return "".join(out)


def is_iri(term) -> bool:
    return type(term) is IRI


def is_bnode(term) -> bool:
    return type(term) is BNode


def is_literal(term) -> bool:
    return type(term) is Literal


def sort_key(term) -> tuple:
    """Total order over terms: blank nodes, then IRIs, then literals."""
    t = type(term)
    if t is BNode:
        return (0, str(term), "", "")
    if t is IRI:
        return (1, str(term), "", "")
    return (2, term.lexical, term.datatype, term.language or "")


class Namespace(str):
    """String prefix that mints IRIs by attribute or item access."""

    def __getattr__(self, name: str) -> IRI:
        if name.startswith("__"):
            raise AttributeError(name)
        return IRI(str(self) + name)

    def __getitem__(self, name: str) -> IRI:
        return IRI(str(self) + name)

    def term(self, name: str) -> IRI:
        return IRI(str(self) + name)


RDF_NS = Namespace(RDF)
RDFS_NS = Namespace(RDFS)
OWL_NS = Namespace(OWL)
XSD_NS = Namespace(XSD)
SH_NS = Namespace(SH)

RDF_TYPE = RDF_NS.type
RDF_FIRST = RDF_NS.first
RDF_REST = RDF_NS.rest
RDF_NIL = RDF_NS.nil
