"""Conversion between SHACL shapes graphs and :class:`Shape` trees."""

from __future__ import annotations

from ..rdf.graph import Graph
from ..rdf.terms import RDF_FIRST, RDF_NIL, RDF_REST, RDF_TYPE, RDFS_NS, SH, BNode, IRI, Literal, SH_NS
from ..rdf.turtle_writer import serialize_turtle
from .model import Constraint, Path, Pattern, QualifiedValue, Shape, Target

SH_NODESHAPE = SH_NS.NodeShape
SH_PROPERTYSHAPE = SH_NS.PropertyShape
SH_PATH = SH_NS.path

_TARGET_PREDS = {
    SH_NS.targetClass: "class",
    SH_NS.targetNode: "node",
    SH_NS.targetSubjectsOf: "subjectsOf",
    SH_NS.targetObjectsOf: "objectsOf",
}
_TARGET_IRIS = {v: k for k, v in _TARGET_PREDS.items()}

_SINGLE_TERM = ("class", "datatype", "nodeKind", "hasValue", "equals", "disjoint",
                "minExclusive", "minInclusive", "maxExclusive", "maxInclusive")
_INTEGER = ("minCount", "maxCount", "minLength", "maxLength")

_UNSUPPORTED = {
    SH_NS.xone: "sh:xone",
    SH_NS.lessThan: "sh:lessThan",
    SH_NS.lessThanOrEquals: "sh:lessThanOrEquals",
    SH_NS.closed: "sh:closed",
    SH_NS.ignoredProperties: "sh:ignoredProperties",
    SH_NS.sparql: "SPARQL constraints",
    SH_NS.target: "SPARQL-based targets",
    SH_NS.rule: "SHACL rules",
}

_PATH_PREDS = {
    SH_NS.inversePath: "inverse",
    SH_NS.alternativePath: "alt",
    SH_NS.zeroOrMorePath: "zeroOrMore",
    SH_NS.oneOrMorePath: "oneOrMore",
    SH_NS.zeroOrOnePath: "zeroOrOne",
}
_PATH_IRIS = {v: k for k, v in _PATH_PREDS.items()}

_SHAPE_REFS = (SH_NS.node, SH_NS.property, SH_NS["not"], SH_NS.qualifiedValueShape)
_SHAPE_LISTS = (SH_NS["and"], SH_NS["or"], SH_NS.xone)


class UnsupportedShapeError(ValueError):
    """The shapes graph uses a feature outside the supported core subset."""

    def __init__(self, feature: str, shape=None):
        self.feature = feature
        self.shape = shape
        where = f" in shape {shape.n3()}" if shape is not None else ""
        super().__init__(f"unsupported SHACL feature {feature}{where}")


class ShapesGraphError(ValueError):
    """The shapes graph is structurally malformed."""


def _list(g: Graph, head) -> list:
    try:
        return g.items(head)
    except ValueError as exc:
        raise ShapesGraphError(str(exc)) from None


def parse_path(g: Graph, node) -> Path:
    if type(node) is IRI:
        return Path("pred", node)
    if type(node) is not BNode:
        raise ShapesGraphError(f"invalid property path {node!r}")
    if g.objects(node, RDF_FIRST):
        items = _list(g, node)
        if len(items) < 2:
            raise ShapesGraphError("sequence paths need at least two members")
        return Path("seq", children=tuple(parse_path(g, x) for x in items))
    preds = g.predicates_of(node)
    kinds = [(p, _PATH_PREDS[p]) for p in preds if p in _PATH_PREDS]
    if len(kinds) != 1 or len(preds[kinds[0][0]]) != 1:
        raise ShapesGraphError(f"invalid property path at {node.n3()}")
    p, kind = kinds[0]
    value = next(iter(preds[p]))
    if kind == "alt":
        items = _list(g, value)
        if len(items) < 2:
            raise ShapesGraphError("alternative paths need at least two members")
        return Path("alt", children=tuple(parse_path(g, x) for x in items))
    return Path(kind, children=(parse_path(g, value),))


class ShapesGraphReader:
    def __init__(self, g: Graph):
        self.g = g
        self._cache: dict = {}
        self._stack: list = []

    def shape_nodes(self) -> list:
        """Every node that acts as a shape in ``g``."""
        g = self.g
        nodes = set()
        for cls in (SH_NODESHAPE, SH_PROPERTYSHAPE):
            nodes.update(g.subjects(RDF_TYPE, cls))
        for p in _TARGET_PREDS:
            nodes.update(g.subjects_of(p))
        nodes.update(g.subjects_of(SH_PATH))
        for p in _SHAPE_REFS:
            nodes.update(g.objects_of(p))
        for p in _SHAPE_LISTS:
            for head in g.objects_of(p):
                nodes.update(_list(g, head))
        return sorted((n for n in nodes if type(n) is not Literal), key=lambda n: (type(n) is BNode, str(n)))

    def read_all(self) -> list[Shape]:
        return [self.read(n) for n in self.shape_nodes()]

    def read(self, node) -> Shape:
        cached = self._cache.get(node)
        if cached is not None:
            return cached
        if node in self._stack:
            raise UnsupportedShapeError("recursive shape references", node)
        self._stack.append(node)
        try:
            shape = self._read(node)
        finally:
            self._stack.pop()
        self._cache[node] = shape
        return shape

    def _one(self, node, p):
        objs = self.g.objects(node, p)
        if len(objs) > 1:
            raise ShapesGraphError(f"{node.n3()} has several values for {p.n3()}")
        return next(iter(objs)) if objs else None

    def _int(self, node, value, p) -> int:
        if type(value) is not Literal:
            raise ShapesGraphError(f"{p.n3()} of {node.n3()} must be an integer literal")
        try:
            return int(value.lexical)
        except ValueError:
            raise ShapesGraphError(f"{p.n3()} of {node.n3()} must be an integer literal") from None

    def _read(self, node) -> Shape:
        g = self.g
        preds = g.predicates_of(node)
        for p, feature in _UNSUPPORTED.items():
            if p in preds:
                if p == SH_NS.closed and all(
                    type(v) is Literal and v.lexical == "false" for v in preds[p]
                ):
                    continue
                raise UnsupportedShapeError(feature, node)
        for sev in preds.get(SH_NS.severity, ()):
            if sev != SH_NS.Violation:
                raise UnsupportedShapeError("severity other than sh:Violation", node)

        targets = []
        for p, kind in _TARGET_PREDS.items():
            for v in preds.get(p, ()):
                targets.append(Target(kind, v))
        implicit = RDFS_NS.Class in preds.get(RDF_TYPE, ()) and type(node) is IRI

        path = None
        path_node = self._one(node, SH_PATH)
        if path_node is not None:
            path = parse_path(g, path_node)

        constraints = []
        for comp in _SINGLE_TERM:
            for v in preds.get(SH_NS[comp], ()):
                constraints.append(Constraint(comp, v))
        for comp in _INTEGER:
            for v in preds.get(SH_NS[comp], ()):
                constraints.append(Constraint(comp, self._int(node, v, SH_NS[comp])))
        for v in preds.get(SH_NS.uniqueLang, ()):
            # only the literal true switches the constraint on
            if type(v) is Literal and v.lexical == "true":
                constraints.append(Constraint("uniqueLang", True))
        for v in preds.get(SH_NS["in"], ()):
            constraints.append(Constraint("in", tuple(_list(g, v))))
        for v in preds.get(SH_NS.languageIn, ()):
            tags = []
            for item in _list(g, v):
                if type(item) is not Literal:
                    raise ShapesGraphError("sh:languageIn members must be literals")
                tags.append(item.lexical)
            constraints.append(Constraint("languageIn", tuple(tags)))
        flags = self._one(node, SH_NS.flags)
        for v in preds.get(SH_NS.pattern, ()):
            constraints.append(Constraint("pattern", Pattern(str(v), flags.lexical if flags is not None else None)))
        for comp in ("not", "node"):
            for v in preds.get(SH_NS[comp], ()):
                constraints.append(Constraint(comp, self.read(v)))
        for v in preds.get(SH_NS.property, ()):
            sub = self.read(v)
            if sub.path is None:
                raise ShapesGraphError(f"sh:property value {v.n3()} has no sh:path")
            constraints.append(Constraint("property", sub))
        for comp in ("and", "or"):
            for v in preds.get(SH_NS[comp], ()):
                constraints.append(Constraint(comp, tuple(self.read(x) for x in _list(g, v))))
        qmin = self._one(node, SH_NS.qualifiedMinCount)
        qmax = self._one(node, SH_NS.qualifiedMaxCount)
        qdis = self._one(node, SH_NS.qualifiedValueShapesDisjoint)
        for v in preds.get(SH_NS.qualifiedValueShape, ()):
            constraints.append(
                Constraint(
                    "qualifiedValueShape",
                    QualifiedValue(
                        self.read(v),
                        self._int(node, qmin, SH_NS.qualifiedMinCount) if qmin is not None else None,
                        self._int(node, qmax, SH_NS.qualifiedMaxCount) if qmax is not None else None,
                        qdis is not None and qdis.lexical in ("true", "1"),
                    ),
                )
            )
        deactivated = any(
            type(v) is Literal and v.lexical in ("true", "1") for v in preds.get(SH_NS.deactivated, ())
        )
        message = self._one(node, SH_NS.message)
        return Shape(
            id=node,
            targets=tuple(targets),
            path=path,
            constraints=tuple(constraints),
            deactivated=deactivated,
            message=str(message) if message is not None else None,
            implicit_class=implicit,
        )


def read_shapes(g: Graph) -> list[Shape]:
    """All shapes in ``g`` that have targets (directly or implicitly)."""
    reader = ShapesGraphReader(g)
    out = []
    for node in reader.shape_nodes():
        shape = reader.read(node)
        if shape.targets or shape.implicit_class:
            out.append(shape)
    return out


class ShapeWriter:
    """Renders shape trees as triples. Anonymous shapes become blank nodes."""

    def __init__(self, g: Graph | None = None):
        self.g = g if g is not None else Graph()
        self._n = 0
        self._done: set = set()

    def _bnode(self) -> BNode:
        self._n += 1
        return BNode(f"s{self._n}")

    def _list(self, items) -> object:
        if not items:
            return RDF_NIL
        head = cell = self._bnode()
        for i, item in enumerate(items):
            self.g.add(cell, RDF_FIRST, item)
            nxt = self._bnode() if i + 1 < len(items) else RDF_NIL
            self.g.add(cell, RDF_REST, nxt)
            cell = nxt
        return head

    def path(self, p: Path):
        if p.kind == "pred":
            return p.pred
        if p.kind == "seq":
            return self._list([self.path(c) for c in p.children])
        node = self._bnode()
        if p.kind == "alt":
            self.g.add(node, _PATH_IRIS["alt"], self._list([self.path(c) for c in p.children]))
        else:
            self.g.add(node, _PATH_IRIS[p.kind], self.path(p.children[0]))
        return node

    def shape(self, s: Shape, typed: bool = False):
        node = s.id if s.id is not None else self._bnode()
        if node in self._done:
            return node
        self._done.add(node)
        add = self.g.add
        if typed:
            add(node, RDF_TYPE, SH_PROPERTYSHAPE if s.path is not None else SH_NODESHAPE)
        for t in s.targets:
            add(node, _TARGET_IRIS[t.kind], t.value)
        if s.path is not None:
            add(node, SH_PATH, self.path(s.path))
        for c in s.constraints:
            comp, v = c.component, c.value
            if comp in _SINGLE_TERM:
                add(node, SH_NS[comp], v)
            elif comp in _INTEGER:
                add(node, SH_NS[comp], Literal(str(v), IRI(_XSD_INTEGER)))
            elif comp == "uniqueLang":
                add(node, SH_NS.uniqueLang, Literal("true" if v else "false", IRI(_XSD_BOOLEAN)))
            elif comp == "in":
                add(node, SH_NS["in"], self._list(list(v)))
            elif comp == "languageIn":
                add(node, SH_NS.languageIn, self._list([Literal(x) for x in v]))
            elif comp == "pattern":
                add(node, SH_NS.pattern, Literal(v.regex))
                if v.flags:
                    add(node, SH_NS.flags, Literal(v.flags))
            elif comp in ("not", "node", "property"):
                add(node, SH_NS[comp], self.shape(v, typed=type(v.id) is IRI))
            elif comp in ("and", "or"):
                add(node, SH_NS[comp], self._list([self.shape(x) for x in v]))
            elif comp == "qualifiedValueShape":
                add(node, SH_NS.qualifiedValueShape, self.shape(v.shape))
                if v.min_count is not None:
                    add(node, SH_NS.qualifiedMinCount, Literal(str(v.min_count), IRI(_XSD_INTEGER)))
                if v.max_count is not None:
                    add(node, SH_NS.qualifiedMaxCount, Literal(str(v.max_count), IRI(_XSD_INTEGER)))
                if v.disjoint:
                    add(node, SH_NS.qualifiedValueShapesDisjoint, Literal("true", IRI(_XSD_BOOLEAN)))
        if s.deactivated:
            add(node, SH_NS.deactivated, Literal("true", IRI(_XSD_BOOLEAN)))
        if s.message is not None:
            add(node, SH_NS.message, Literal(s.message))
        if s.implicit_class:
            add(node, RDF_TYPE, RDFS_NS.Class)
        return node


_XSD_INTEGER = "http://www.w3.org/2001/XMLSchema#integer"
_XSD_BOOLEAN = "http://www.w3.org/2001/XMLSchema#boolean"

DEFAULT_PREFIXES = {
    "sh": SH,
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "owl": "http://www.w3.org/2002/07/owl#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}


def shapes_to_graph(shapes, g: Graph | None = None) -> Graph:
    writer = ShapeWriter(g)
    for s in shapes:
        writer.shape(s, typed=True)
    return writer.g


def shapes_to_turtle(shapes, prefixes: dict[str, str] | None = None) -> str:
    merged = dict(DEFAULT_PREFIXES)
    merged.update(prefixes or {})
    return serialize_turtle(shapes_to_graph(shapes), merged)
