"""Turtle and N-Triples parsing.

Blank-node labels are scoped to the document they appear in: every parse
call draws a fresh document number and prefixes its blank nodes with it, so
the union of two parsed graphs never conflates their blank nodes.
"""

from __future__ import annotations

import itertools
import re
from pathlib import Path
from typing import Callable, Iterator

from .graph import Graph
from .terms import RDF_FIRST, RDF_NIL, RDF_REST, RDF_TYPE, XSD, BNode, IRI, Literal

_doc_counter = itertools.count(1)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


_PN_CHARS_BASE = (
    "A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF"
    "\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF\uFDF0-\uFFFD"
    "\U00010000-\U000EFFFF"
)
_PN_CHARS_U = _PN_CHARS_BASE + "_"
_PN_CHARS = _PN_CHARS_U + "\\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
_PLX = r"(?:%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%])"
_PN_PREFIX = f"[{_PN_CHARS_BASE}](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"
_PN_LOCAL = f"(?:[{_PN_CHARS_U}:0-9]|{_PLX})(?:(?:[{_PN_CHARS}.:]|{_PLX})*(?:[{_PN_CHARS}:]|{_PLX}))?"
_BNODE_LABEL = f"_:[{_PN_CHARS_U}0-9](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"
_LANGTAG = r"@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*"

_TOKEN_RE = re.compile(
    "|".join(
        [
            r"(?P<WS>(?:[ \t\r\n]+|#[^\r\n]*)+)",
            r"(?P<IRI><[^<>\"{}|^`\\\x00-\x20]*(?:\\[uU][^<>\"{}|^`\\\x00-\x20]*)*>)",
            r'(?P<SLONG2>"""(?:(?:"|"")?(?:[^"\\]|\\.))*""")',
            r"(?P<SLONG1>'''(?:(?:'|'')?(?:[^'\\]|\\.))*''')",
            r'(?P<S2>"(?:[^"\\\n\r]|\\.)*")',
            r"(?P<S1>'(?:[^'\\\n\r]|\\.)*')",
            f"(?P<BNODE>{_BNODE_LABEL})",
            r"(?P<DOUBLE>[+-]?(?:[0-9]+\.[0-9]*[eE][+-]?[0-9]+|\.[0-9]+[eE][+-]?[0-9]+|[0-9]+[eE][+-]?[0-9]+))",
            r"(?P<DECIMAL>[+-]?[0-9]*\.[0-9]+)",
            r"(?P<INTEGER>[+-]?[0-9]+)",
            f"(?P<PNAME>(?:{_PN_PREFIX})?:(?:{_PN_LOCAL})?)",
            r"(?P<DIRECTIVE>@(?:prefix|base)\b)",
            f"(?P<LANG>{_LANGTAG})",
            r"(?P<WORD>[A-Za-z]+)",
            r"(?P<DTYPE>\^\^)",
            r"(?P<PUNCT>[.;,\[\]()])",
        ]
    )
)

_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_UCHAR_RE = re.compile(r"\\u([0-9A-Fa-f]{4})|\\U([0-9A-Fa-f]{8})")
_ESCAPE_RE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))", re.S)
_LOCAL_ESC_RE = re.compile(r"\\([_~.\-!$&'()*+,;=/?#@%])")
_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")

XSD_INTEGER = IRI(XSD + "integer")
XSD_DECIMAL = IRI(XSD + "decimal")
XSD_DOUBLE = IRI(XSD + "double")
XSD_BOOLEAN = IRI(XSD + "boolean")


def _unescape_string(raw: str) -> str:
    if "\\" not in raw:
        return raw

    def repl(m):
        if m.group(1) or m.group(2):
            return chr(int(m.group(1) or m.group(2), 16))
        ch = m.group(3)
        if ch not in _ECHAR:
            raise ValueError(f"invalid escape \\{ch}")
        return _ECHAR[ch]

    return _ESCAPE_RE.sub(repl, raw)


def _unescape_iri(raw: str) -> str:
    if "\\" not in raw:
        return raw
    out = _UCHAR_RE.sub(lambda m: chr(int(m.group(1) or m.group(2), 16)), raw)
    if "\\" in out:
        raise ValueError("invalid escape in IRI")
    return out


def is_absolute(iri: str) -> bool:
    return bool(_SCHEME_RE.match(iri))


def _remove_dot_segments(path: str) -> str:
    out: list[str] = []
    while path:
        if path.startswith("../"):
            path = path[3:]
        elif path.startswith("./"):
            path = path[2:]
        elif path.startswith("/./"):
            path = path[2:]
        elif path == "/.":
            path = "/"
        elif path.startswith("/../") or path == "/..":
            path = "/" + path[4:] if path.startswith("/../") else "/"
            if out:
                out.pop()
        elif path in (".", ".."):
            path = ""
        else:
            start = 1 if path.startswith("/") else 0
            idx = path.find("/", start)
            if idx == -1:
                idx = len(path)
            out.append(path[:idx])
            path = path[idx:]
    return "".join(out)


_URI_RE = re.compile(r"^(?:([^:/?#]+):)?(?://([^/?#]*))?([^?#]*)(?:\?([^#]*))?(?:#(.*))?$", re.S)


def resolve_iri(ref: str, base: str) -> str:
    """Resolve a reference against a base IRI (RFC 3986, section 5.2).

    ``urllib.parse.urljoin`` only resolves for a fixed list of schemes, which
    breaks ``urn:`` and ``tag:`` bases, hence the local implementation.
    """
    r = _URI_RE.match(ref)
    b = _URI_RE.match(base)
    r_scheme, r_auth, r_path, r_query, r_frag = r.groups()
    b_scheme, b_auth, b_path, b_query, _ = b.groups()
    if r_scheme is not None:
        t_scheme, t_auth, t_path, t_query = r_scheme, r_auth, _remove_dot_segments(r_path), r_query
    else:
        t_scheme = b_scheme
        if r_auth is not None:
            t_auth, t_path, t_query = r_auth, _remove_dot_segments(r_path), r_query
        else:
            t_auth = b_auth
            if r_path == "":
                t_path = b_path
                t_query = r_query if r_query is not None else b_query
            else:
                if r_path.startswith("/"):
                    t_path = _remove_dot_segments(r_path)
                else:
                    if b_auth is not None and b_path == "":
                        merged = "/" + r_path
                    else:
                        merged = b_path[: b_path.rfind("/") + 1] + r_path
                    t_path = _remove_dot_segments(merged)
                t_query = r_query
    out = (t_scheme + ":") if t_scheme is not None else ""
    if t_auth is not None:
        out += "//" + t_auth
    out += t_path
    if t_query is not None:
        out += "?" + t_query
    if r_frag is not None:
        out += "#" + r_frag
    return out


class _Lexer:
    def __init__(self, text: str, source: str | None):
        self.text = text
        self.source = source
        self.pos = 0
        self._peeked: tuple | None = None

    def error(self, message: str, pos: int | None = None) -> ParseError:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return ParseError(message, line, col, self.source)

    def _scan(self) -> tuple:
        text = self.text
        while True:
            if self.pos >= len(text):
                return ("EOF", "", self.pos)
            m = _TOKEN_RE.match(text, self.pos)
            if m is None:
                raise self.error(f"unexpected character {text[self.pos]!r}")
            kind = m.lastgroup
            start = self.pos
            self.pos = m.end()
            if kind == "WS":
                continue
            return (kind, m.group(), start)

    def peek(self) -> tuple:
        if self._peeked is None:
            self._peeked = self._scan()
        return self._peeked

    def next(self) -> tuple:
        tok = self.peek()
        self._peeked = None
        return tok


class TurtleParser:
    def __init__(self, text: str, base: str | None = None, source: str | None = None,
                 sink: Callable | None = None, doc: int | str | None = None):
        self.lex = _Lexer(text, source)
        self.base = base
        self.prefixes: dict[str, str] = {}
        self.doc = next(_doc_counter) if doc is None else doc
        self._bnodes: dict[str, BNode] = {}
        self._anon = 0
        self.graph = Graph()
        self._emit = sink or self.graph.add

    def parse(self) -> Graph:
        lex = self.lex
        while True:
            kind, val, pos = lex.peek()
            if kind == "EOF":
                break
            if kind == "DIRECTIVE":
                lex.next()
                self._directive(val[1:].lower(), sparql_style=False)
            elif kind == "WORD" and val.upper() in ("PREFIX", "BASE"):
                lex.next()
                self._directive(val.lower(), sparql_style=True)
            else:
                self._triples()
                self._expect(".")
        return self.graph

    def _expect(self, punct: str):
        kind, val, pos = self.lex.next()
        if kind != "PUNCT" or val != punct:
            raise self.lex.error(f"expected {punct!r}, found {val or 'end of input'!r}", pos)

    def _directive(self, name: str, sparql_style: bool):
        lex = self.lex
        if name == "prefix":
            kind, val, pos = lex.next()
            if kind != "PNAME" or not val.endswith(":"):
                raise lex.error("expected prefix name ending in ':'", pos)
            iri = self._iriref(lex.next())
            self.prefixes[val[:-1]] = iri
        else:
            self.base = self._iriref(lex.next())
        if not sparql_style:
            self._expect(".")

    def _iriref(self, tok: tuple) -> IRI:
        kind, val, pos = tok
        if kind != "IRI":
            raise self.lex.error(f"expected IRI, found {val!r}", pos)
        try:
            raw = _unescape_iri(val[1:-1])
        except ValueError as exc:
            raise self.lex.error(str(exc), pos) from None
        if not is_absolute(raw):
            if self.base is None:
                raise self.lex.error(f"relative IRI <{raw}> with no base to resolve against", pos)
            raw = resolve_iri(raw, self.base)
        return IRI(raw)

    def _pname(self, val: str, pos: int) -> IRI:
        prefix, _, local = val.partition(":")
        if prefix not in self.prefixes:
            raise self.lex.error(f"undefined prefix {prefix!r}", pos)
        if "\\" in local:
            local = _LOCAL_ESC_RE.sub(r"\1", local)
        return IRI(self.prefixes[prefix] + local)

    def _bnode(self, label: str | None = None) -> BNode:
        if label is None:
            self._anon += 1
            return BNode(f"d{self.doc}a{self._anon}")
        node = self._bnodes.get(label)
        if node is None:
            node = self._bnodes[label] = BNode(f"d{self.doc}_{label}")
        return node

    def _triples(self):
        kind, val, pos = self.lex.peek()
        if kind == "PUNCT" and val == "[":
            self.lex.next()
            subject = self._bnode_property_list()
            k2, v2, _ = self.lex.peek()
            if not (k2 == "PUNCT" and v2 == "."):
                self._predicate_object_list(subject)
            return
        subject = self._subject()
        self._predicate_object_list(subject)

    def _subject(self):
        kind, val, pos = self.lex.next()
        if kind == "IRI":
            return self._iriref((kind, val, pos))
        if kind == "PNAME":
            return self._pname(val, pos)
        if kind == "BNODE":
            return self._bnode(val[2:])
        if kind == "PUNCT" and val == "(":
            return self._collection()
        raise self.lex.error(f"unexpected {val or 'end of input'!r} in subject position", pos)

    def _verb(self):
        kind, val, pos = self.lex.next()
        if kind == "WORD" and val == "a":
            return RDF_TYPE
        if kind == "IRI":
            return self._iriref((kind, val, pos))
        if kind == "PNAME":
            return self._pname(val, pos)
        raise self.lex.error(f"unexpected {val or 'end of input'!r} in predicate position", pos)

    def _predicate_object_list(self, subject):
        lex = self.lex
        while True:
            pred = self._verb()
            self._object_list(subject, pred)
            kind, val, _ = lex.peek()
            if not (kind == "PUNCT" and val == ";"):
                return
            while kind == "PUNCT" and val == ";":
                lex.next()
                kind, val, _ = lex.peek()
            if kind == "PUNCT" and val in (".", "]"):
                return

    def _object_list(self, subject, pred):
        emit = self._emit
        while True:
            emit(subject, pred, self._object())
            kind, val, _ = self.lex.peek()
            if kind == "PUNCT" and val == ",":
                self.lex.next()
                continue
            return

    def _object(self):
        lex = self.lex
        kind, val, pos = lex.next()
        if kind == "IRI":
            return self._iriref((kind, val, pos))
        if kind == "PNAME":
            return self._pname(val, pos)
        if kind == "BNODE":
            return self._bnode(val[2:])
        if kind in ("S2", "S1", "SLONG2", "SLONG1"):
            quote = 3 if kind.startswith("SLONG") else 1
            try:
                lexical = _unescape_string(val[quote:-quote])
            except ValueError as exc:
                raise lex.error(str(exc), pos) from None
            k2, v2, p2 = lex.peek()
            if k2 == "LANG":
                lex.next()
                return Literal(lexical, language=v2[1:])
            if k2 == "DTYPE":
                lex.next()
                k3, v3, p3 = lex.next()
                if k3 == "IRI":
                    dt = self._iriref((k3, v3, p3))
                elif k3 == "PNAME":
                    dt = self._pname(v3, p3)
                else:
                    raise lex.error("expected datatype IRI after '^^'", p3)
                return Literal(lexical, dt)
            return Literal(lexical)
        if kind == "INTEGER":
            return Literal(val, XSD_INTEGER)
        if kind == "DECIMAL":
            return Literal(val, XSD_DECIMAL)
        if kind == "DOUBLE":
            return Literal(val, XSD_DOUBLE)
        if kind == "WORD" and val in ("true", "false"):
            return Literal(val, XSD_BOOLEAN)
        if kind == "PUNCT" and val == "[":
            return self._bnode_property_list()
        if kind == "PUNCT" and val == "(":
            return self._collection()
        raise lex.error(f"unexpected {val or 'end of input'!r} in object position", pos)

    def _bnode_property_list(self) -> BNode:
        node = self._bnode()
        kind, val, _ = self.lex.peek()
        if kind == "PUNCT" and val == "]":
            self.lex.next()
            return node
        self._predicate_object_list(node)
        self._expect("]")
        return node

    def _collection(self):
        items = []
        lex = self.lex
        while True:
            kind, val, pos = lex.peek()
            if kind == "PUNCT" and val == ")":
                lex.next()
                break
            if kind == "EOF":
                raise lex.error("unterminated collection", pos)
            items.append(self._object())
        if not items:
            return RDF_NIL
        head = cell = self._bnode()
        for i, item in enumerate(items):
            self._emit(cell, RDF_FIRST, item)
            nxt = self._bnode() if i + 1 < len(items) else RDF_NIL
            self._emit(cell, RDF_REST, nxt)
            cell = nxt
        return head


_NT_IRI = r"<([^<>\"{}|^`\\\x00-\x20]*(?:\\[uU][0-9A-Fa-f]+[^<>\"{}|^`\\\x00-\x20]*)*)>"
_NT_BNODE = f"(_:[{_PN_CHARS_U}0-9](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?)"
_NT_LINE = re.compile(
    rf"[ \t]*(?:{_NT_IRI}|{_NT_BNODE})[ \t]*{_NT_IRI}[ \t]*"
    rf"(?:{_NT_IRI}|{_NT_BNODE}|\"((?:[^\"\\\n\r]|\\.)*)\"(?:({_LANGTAG})|\^\^{_NT_IRI})?)"
    r"[ \t]*\.[ \t]*(?:#.*)?$"
)
_NT_BLANK = re.compile(r"^[ \t]*(?:#.*)?$")


def _iter_ntriples(text: str, source: str | None, doc: int) -> Iterator[tuple]:
    bnodes: dict[str, BNode] = {}

    def bnode(label: str) -> BNode:
        node = bnodes.get(label)
        if node is None:
            node = bnodes[label] = BNode(f"d{doc}_{label[2:]}")
        return node

    def iri(raw: str, lineno: int, col: int) -> IRI:
        try:
            value = _unescape_iri(raw)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, col, source) from None
        if not is_absolute(value):
            raise ParseError(f"relative IRI <{value}> not allowed in N-Triples", lineno, col, source)
        return IRI(value)

    # only CR and LF end a statement; str.splitlines would also split on U+0085 etc.
    for lineno, line in enumerate(re.split(r"\r\n|\r|\n", text), 1):
        m = _NT_LINE.match(line)
        if m is None:
            if _NT_BLANK.match(line):
                continue
            stripped = len(line) - len(line.lstrip())
            raise ParseError("malformed N-Triples statement", lineno, stripped + 1, source)
        s_iri, s_bn, p, o_iri, o_bn, lex, lang, dt = m.groups()
        s = iri(s_iri, lineno, m.start(1) + 1) if s_iri is not None else bnode(s_bn)
        pred = iri(p, lineno, m.start(3) + 1)
        if o_iri is not None:
            o = iri(o_iri, lineno, m.start(4) + 1)
        elif o_bn is not None:
            o = bnode(o_bn)
        else:
            try:
                value = _unescape_string(lex)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, m.start(6) + 1, source) from None
            if lang:
                o = Literal(value, language=lang[1:])
            elif dt is not None:
                o = Literal(value, iri(dt, lineno, m.start(8) + 1))
            else:
                o = Literal(value)
        yield (s, pred, o)


def parse_ntriples(text: str, source: str | None = None, doc: int | str | None = None) -> Graph:
    """Parse N-Triples. ``doc`` fixes the blank-node label scope; by default
    every call gets a fresh one."""
    g = Graph(name=source)
    add = g.add
    for s, p, o in _iter_ntriples(text, source, next(_doc_counter) if doc is None else doc):
        add(s, p, o)
    return g


def parse_turtle(text: str, base: str | None = None, source: str | None = None,
                 doc: int | str | None = None) -> Graph:
    parser = TurtleParser(text, base=base, source=source, doc=doc)
    g = parser.parse()
    g.name = source
    return g


def parse_turtle_with_prefixes(text: str, base: str | None = None, source: str | None = None):
    """Like :func:`parse_turtle` but also returns the declared prefix map."""
    parser = TurtleParser(text, base=base, source=source)
    g = parser.parse()
    g.name = source
    return g, dict(parser.prefixes)


_NT_SUFFIXES = {".nt", ".ntriples"}
_TTL_SUFFIXES = {".ttl", ".turtle", ".n3"}


def guess_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in _NT_SUFFIXES:
        return "ntriples"
    return "turtle"


def load_graph(path: str | Path, fmt: str | None = None, base: str | None = None,
               doc: int | str | None = None) -> Graph:
    """Parse an RDF file. The document base defaults to the file's URI.

    Pass distinct ``doc`` values to get blank-node labels that do not depend
    on how many documents were parsed before.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    fmt = fmt or guess_format(path)
    if fmt == "ntriples":
        return parse_ntriples(text, source=str(path), doc=doc)
    if fmt != "turtle":
        raise ValueError(f"unsupported RDF format {fmt!r}")
    if base is None:
        base = path.resolve().as_uri()
    return parse_turtle(text, base=base, source=str(path), doc=doc)
