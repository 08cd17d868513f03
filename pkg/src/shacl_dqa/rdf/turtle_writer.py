"""Deterministic Turtle serialization.

Blank nodes that are the object of exactly one triple are written inline as
``[ ... ]`` and well-formed RDF lists as ``( ... )``. Output depends only on
the set of triples and the prefix map, never on insertion order.
"""

from __future__ import annotations

import re

from .graph import Graph
from .terms import RDF_FIRST, RDF_NIL, RDF_REST, RDF_TYPE, XSD, BNode, IRI, escape_string, sort_key

_LOCAL_OK = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$|^$")
_INT = re.compile(r"^[+-]?[0-9]+$")
_DEC = re.compile(r"^[+-]?[0-9]*\.[0-9]+$")
_SHORTHAND = {
    IRI(XSD + "integer"): _INT,
    IRI(XSD + "decimal"): _DEC,
}
_BOOLEAN = IRI(XSD + "boolean")
_STRING = IRI(XSD + "string")


class TurtleWriter:
    def __init__(self, graph: Graph, prefixes: dict[str, str] | None = None):
        self.g = graph
        self.prefixes = dict(sorted((prefixes or {}).items(), key=lambda kv: -len(kv[1])))
        self._used_prefixes: set[str] = set()
        self._inline: set = set()
        self._lists: dict = {}
        self._analyse()

    def _analyse(self):
        g = self.g
        refcount: dict = {}
        for s, p, o in g:
            if type(o) is BNode:
                refcount[o] = refcount.get(o, 0) + 1
        for node, n in refcount.items():
            if n == 1:
                self._inline.add(node)
        # a cycle of singly-referenced blank nodes has no root to hang off
        reached = set()
        stack = [s for s in g.all_subjects() if s not in self._inline]
        while stack:
            node = stack.pop()
            for objs in g.predicates_of(node).values():
                for o in objs:
                    if o in self._inline and o not in reached:
                        reached.add(o)
                        stack.append(o)
        self._inline &= reached
        # lists: head is inlinable and every cell holds only first/rest
        for node in list(self._inline):
            items = self._list_items(node, refcount)
            if items is not None:
                self._lists[node] = items
        # cells inside a list are emitted through their head
        self._list_cells = set()
        for head in self._lists:
            cell = head
            while cell != RDF_NIL:
                self._list_cells.add(cell)
                cell = next(iter(g.objects(cell, RDF_REST)))

    def _list_items(self, node, refcount):
        g = self.g
        items = []
        cell = node
        seen = set()
        while cell != RDF_NIL:
            if type(cell) is not BNode or cell in seen:
                return None
            if cell is not node and refcount.get(cell, 0) != 1:
                return None
            seen.add(cell)
            preds = g.predicates_of(cell)
            if set(preds) != {RDF_FIRST, RDF_REST}:
                return None
            firsts, rests = preds[RDF_FIRST], preds[RDF_REST]
            if len(firsts) != 1 or len(rests) != 1:
                return None
            items.append(next(iter(firsts)))
            cell = next(iter(rests))
        return items

    def term(self, t) -> str:
        if type(t) is IRI:
            if t == RDF_NIL:
                return "()"
            for prefix, ns in self.prefixes.items():
                if t.startswith(ns):
                    local = t[len(ns):]
                    if _LOCAL_OK.match(local):
                        self._used_prefixes.add(prefix)
                        return f"{prefix}:{local}"
            return t.n3()
        if type(t) is BNode:
            if t in self._lists:
                return "(" + " ".join(self.term(x) for x in self._lists[t]) + ")"
            return "_:" + t
        lex = t.lexical
        if t.language:
            return '"' + escape_string(lex) + '"@' + t.language
        if t.datatype == _STRING:
            return '"' + escape_string(lex) + '"'
        pattern = _SHORTHAND.get(t.datatype)
        if pattern is not None and pattern.match(lex):
            return lex
        if t.datatype == _BOOLEAN and lex in ("true", "false"):
            return lex
        return '"' + escape_string(lex) + '"^^' + self.term(t.datatype)

    def _object(self, o, indent: int) -> str:
        if type(o) is BNode and o in self._lists:
            return "(" + " ".join(self._object(x, indent) for x in self._lists[o]) + ")"
        if type(o) is BNode and o in self._inline:
            body = self._body(o, indent + 1)
            if not body:
                return "[]"
            pad = "    " * indent
            return "[\n" + body + "\n" + pad + "]"
        return self.term(o)

    def _body(self, s, indent: int) -> str:
        pad = "    " * indent
        preds = self.g.predicates_of(s)
        keys = sorted(preds, key=lambda p: (p != RDF_TYPE, self.term(p)))
        lines = []
        for p in keys:
            objs = sorted(preds[p], key=sort_key)
            rendered = ", ".join(self._object(o, indent) for o in objs)
            verb = "a" if p == RDF_TYPE else self.term(p)
            lines.append(f"{pad}{verb} {rendered}")
        return " ;\n".join(lines)

    def serialize(self, base: str | None = None) -> str:
        g = self.g
        subjects = [
            s
            for s in g.all_subjects()
            if not (type(s) is BNode and (s in self._inline or s in self._list_cells))
        ]
        subjects.sort(key=sort_key)
        blocks = []
        for s in subjects:
            if type(s) is BNode and s in self._lists:
                continue
            if type(s) is BNode:
                head = "[]" if s not in self._referenced() else self.term(s)
            else:
                head = self.term(s)
            blocks.append(head + "\n" + self._body(s, 1) + " .\n")
        header = []
        if base:
            header.append(f"@base <{base}> .")
        for prefix in sorted(self._used_prefixes):
            header.append(f"@prefix {prefix}: <{self.prefixes[prefix]}> .")
        out = "\n".join(header)
        if header:
            out += "\n\n"
        return out + "\n".join(blocks)

    def _referenced(self) -> set:
        cached = getattr(self, "_refs", None)
        if cached is None:
            cached = self._refs = {o for _, _, o in self.g if type(o) is BNode}
        return cached


def serialize_turtle(graph: Graph, prefixes: dict[str, str] | None = None, base: str | None = None) -> str:
    return TurtleWriter(graph, prefixes).serialize(base=base)
