"""Shape trees for the supported SHACL-core subset.

A :class:`Shape` is an immutable, structurally comparable value. Constraint
and target tuples are kept in a canonical order so that two shapes built
from the same Turtle, in any triple order, compare equal.

Templates use the same classes with :class:`Var` (a named placeholder) and
:class:`Cfg` (a configuration-driven term such as the type property) in
term positions; :func:`substitute` turns a template tree into a concrete one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Any

from ..rdf.terms import BNode, IRI, Literal, sort_key

COMPONENTS = (
    "class",
    "datatype",
    "nodeKind",
    "minCount",
    "maxCount",
    "minExclusive",
    "minInclusive",
    "maxExclusive",
    "maxInclusive",
    "minLength",
    "maxLength",
    "pattern",
    "languageIn",
    "uniqueLang",
    "equals",
    "disjoint",
    "not",
    "and",
    "or",
    "node",
    "property",
    "qualifiedValueShape",
    "hasValue",
    "in",
)

TARGET_KINDS = ("class", "node", "subjectsOf", "objectsOf")
PATH_KINDS = ("pred", "inverse", "seq", "alt", "zeroOrMore", "oneOrMore", "zeroOrOne")


@dataclass(frozen=True)
class Var:
    """A named placeholder inside a template."""

    name: str


@dataclass(frozen=True)
class Cfg:
    """A term filled in from the run configuration (e.g. the type property)."""

    key: str


@dataclass(frozen=True)
class Local:
    """A shape name relative to the namespace chosen at substitution time."""

    name: str


@dataclass(frozen=True)
class Escaped:
    """Placeholder spliced into a regex with metacharacters escaped."""

    var: Var


@dataclass(frozen=True)
class Pattern:
    regex: Any  # str, or a tuple of str / Var / Escaped parts in templates
    flags: str | None = None


@dataclass(frozen=True)
class Path:
    kind: str
    pred: Any = None
    children: tuple = ()

    def __post_init__(self):
        if self.kind not in PATH_KINDS:
            raise ValueError(f"unknown path kind {self.kind!r}")

    def render(self) -> str:
        """Compact SPARQL-like rendering, used in reports and sort keys."""
        k = self.kind
        if k == "pred":
            return _term_str(self.pred)
        if k == "inverse":
            return "^" + self.children[0].render()
        if k == "seq":
            return "(" + "/".join(c.render() for c in self.children) + ")"
        if k == "alt":
            return "(" + "|".join(c.render() for c in self.children) + ")"
        suffix = {"zeroOrMore": "*", "oneOrMore": "+", "zeroOrOne": "?"}[k]
        return "(" + self.children[0].render() + ")" + suffix


def pred(p) -> Path:
    return Path("pred", p)


def inverse(p) -> Path:
    return Path("inverse", children=(p if isinstance(p, Path) else pred(p),))


def _term_str(t) -> str:
    if isinstance(t, (IRI, BNode, Literal)):
        return t.n3()
    if isinstance(t, Var):
        return "?" + t.name
    if isinstance(t, Cfg):
        return "$" + t.key
    if isinstance(t, Local):
        return ":" + t.name
    return repr(t)


@dataclass(frozen=True)
class Target:
    kind: str
    value: Any

    def __post_init__(self):
        if self.kind not in TARGET_KINDS:
            raise ValueError(f"unknown target kind {self.kind!r}")


@dataclass(frozen=True)
class QualifiedValue:
    shape: "Shape"
    min_count: Any = None
    max_count: Any = None
    disjoint: bool = False


@dataclass(frozen=True)
class ForEach:
    """Expands to one copy of ``body`` per item of the list bound to ``var``.

    Inside ``body`` the current item is available as ``Var(item)``.
    """

    var: Var
    item: str
    body: Any


@dataclass(frozen=True)
class Constraint:
    component: str
    value: Any

    def __post_init__(self):
        if self.component not in COMPONENTS:
            raise ValueError(f"unknown constraint component {self.component!r}")


def _key(obj) -> tuple:
    """Stable ordering key for constraint values and targets."""
    if isinstance(obj, (IRI, BNode, Literal)):
        return (0,) + sort_key(obj)
    if isinstance(obj, bool):
        return (1, int(obj))
    if isinstance(obj, int):
        return (2, obj)
    if isinstance(obj, str):
        return (3, obj)
    if isinstance(obj, tuple):
        return (4, len(obj)) + tuple(_key(x) for x in obj)
    if obj is None:
        return (5,)
    return (6, repr(obj))


@dataclass(frozen=True)
class Shape:
    id: Any = None
    targets: tuple = ()
    path: Path | None = None
    constraints: tuple = ()
    deactivated: bool = False
    message: str | None = None
    implicit_class: bool = False
    _hash: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(sorted(self.targets, key=lambda t: (t.kind, _key(t.value)))))
        object.__setattr__(
            self, "constraints", tuple(sorted(self.constraints, key=lambda c: (c.component, _key(c.value))))
        )
        object.__setattr__(
            self,
            "_hash",
            hash((self.id, self.targets, self.path, self.constraints, self.deactivated, self.message,
                  self.implicit_class)),
        )

    def __hash__(self):
        return self._hash

    @property
    def is_property_shape(self) -> bool:
        return self.path is not None

    def get(self, component: str) -> list:
        return [c.value for c in self.constraints if c.component == component]

    def with_id(self, new_id) -> "Shape":
        return replace(self, id=new_id)

    def walk(self):
        """Yield this shape and every nested shape, depth first."""
        yield self
        for c in self.constraints:
            for sub in _nested(c):
                yield from sub.walk()


def _nested(c: Constraint):
    v = c.value
    if c.component in ("not", "node", "property"):
        if isinstance(v, Shape):
            yield v
    elif c.component in ("and", "or"):
        if isinstance(v, tuple):
            for item in v:
                if isinstance(item, Shape):
                    yield item
    elif c.component == "qualifiedValueShape":
        if isinstance(v, QualifiedValue):
            yield v.shape


def node_shape(*constraints, id=None, targets=(), **kw) -> Shape:
    return Shape(id=id, targets=tuple(targets), constraints=tuple(constraints), **kw)


def property_shape(path, *constraints, id=None, targets=(), **kw) -> Shape:
    if not isinstance(path, Path):
        path = pred(path)
    return Shape(id=id, targets=tuple(targets), path=path, constraints=tuple(constraints), **kw)


def C(component: str, value) -> Constraint:
    return Constraint(component, value)


# substitution


class UnboundPlaceholder(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name


@dataclass
class Substitution:
    bindings: dict
    config_terms: dict
    optional: frozenset = frozenset()
    namespace: str = "urn:dqa:shape:"

    def term(self, value):
        if isinstance(value, Var):
            if value.name not in self.bindings:
                raise UnboundPlaceholder(value.name)
            return self.bindings[value.name]
        if isinstance(value, Cfg):
            return self.config_terms[value.key]
        if isinstance(value, Local):
            return IRI(self.namespace + value.name)
        return value

    def _inner(self, name: str, value) -> "Substitution":
        return Substitution({**self.bindings, name: value}, self.config_terms, self.optional, self.namespace)

    def apply(self, obj):
        if isinstance(obj, Shape):
            return Shape(
                id=self.term(obj.id),
                targets=tuple(Target(t.kind, self.term(t.value)) for t in obj.targets),
                path=self.apply(obj.path) if obj.path is not None else None,
                constraints=tuple(self._constraints(obj.constraints)),
                deactivated=obj.deactivated,
                message=obj.message,
                implicit_class=obj.implicit_class,
            )
        if isinstance(obj, Path):
            if obj.kind == "pred":
                return Path("pred", self.term(obj.pred))
            return Path(obj.kind, children=tuple(self.apply(c) for c in obj.children))
        raise TypeError(f"cannot substitute into {type(obj).__name__}")

    def _list(self, items) -> tuple:
        if isinstance(items, (Var, Cfg)):
            return tuple(self.term(items))
        out = []
        for item in items:
            if isinstance(item, ForEach):
                for value in self.term(item.var):
                    inner = self._inner(item.item, value)
                    out.append(inner.apply(item.body) if isinstance(item.body, Shape) else inner.term(item.body))
                continue
            try:
                out.append(self.apply(item) if isinstance(item, Shape) else self.term(item))
            except UnboundPlaceholder as exc:
                if exc.name in self.optional:
                    continue
                raise
        return tuple(out)

    def _pattern(self, p: Pattern) -> Pattern:
        if isinstance(p.regex, str):
            return p
        parts = []
        for part in p.regex:
            if isinstance(part, Escaped):
                parts.append(re.escape(str(self.term(part.var))))
            elif isinstance(part, Var):
                parts.append(str(self.term(part)))
            else:
                parts.append(part)
        return Pattern("".join(parts), p.flags)

    def _constraints(self, constraints):
        for c in constraints:
            if isinstance(c.value, ForEach):
                fe = c.value
                for value in self.term(fe.var):
                    yield self._inner(fe.item, value)._constraint(Constraint(c.component, fe.body))
            else:
                yield self._constraint(c)

    def _constraint(self, c: Constraint) -> Constraint:
        comp, v = c.component, c.value
        if comp in ("not", "node", "property"):
            return Constraint(comp, self.apply(v))
        if comp in ("and", "or", "in", "languageIn"):
            return Constraint(comp, self._list(v))
        if comp == "pattern":
            return Constraint(comp, self._pattern(v))
        if comp == "qualifiedValueShape":
            return Constraint(
                comp,
                QualifiedValue(self.apply(v.shape), self.term(v.min_count), self.term(v.max_count), v.disjoint),
            )
        return Constraint(comp, self.term(v))


def substitute(shape: Shape, bindings: dict, config_terms: dict | None = None, optional=(),
               namespace: str = "urn:dqa:shape:") -> Shape:
    return Substitution(dict(bindings), dict(config_terms or {}), frozenset(optional), namespace).apply(shape)


def placeholders(obj) -> set[str]:
    """Names of all :class:`Var` placeholders referenced inside ``obj``."""
    found: set[str] = set()
    _collect(obj, found, set())
    return found


def _collect(obj, found: set, bound: set):
    if isinstance(obj, Var):
        if obj.name not in bound:
            found.add(obj.name)
    elif isinstance(obj, Escaped):
        _collect(obj.var, found, bound)
    elif isinstance(obj, ForEach):
        _collect(obj.var, found, bound)
        _collect(obj.body, found, bound | {obj.item})
    elif isinstance(obj, Shape):
        _collect(obj.id, found, bound)
        for t in obj.targets:
            _collect(t.value, found, bound)
        _collect(obj.path, found, bound)
        for c in obj.constraints:
            _collect(c.value, found, bound)
    elif isinstance(obj, Path):
        _collect(obj.pred, found, bound)
        for ch in obj.children:
            _collect(ch, found, bound)
    elif isinstance(obj, Pattern):
        _collect(obj.regex, found, bound)
    elif isinstance(obj, QualifiedValue):
        _collect(obj.shape, found, bound)
        _collect(obj.min_count, found, bound)
        _collect(obj.max_count, found, bound)
    elif isinstance(obj, tuple):
        for x in obj:
            _collect(x, found, bound)


def anonymize(shape: Shape) -> Shape:
    """Drop blank-node ids everywhere, so trees from two parses compare equal."""

    def fix(obj):
        if isinstance(obj, Shape):
            return Shape(
                id=None if isinstance(obj.id, BNode) else obj.id,
                targets=obj.targets,
                path=obj.path,
                constraints=tuple(Constraint(c.component, fix(c.value)) for c in obj.constraints),
                deactivated=obj.deactivated,
                message=obj.message,
                implicit_class=obj.implicit_class,
            )
        if isinstance(obj, QualifiedValue):
            return QualifiedValue(fix(obj.shape), obj.min_count, obj.max_count, obj.disjoint)
        if isinstance(obj, tuple):
            return tuple(fix(x) for x in obj)
        return obj

    return fix(shape)
