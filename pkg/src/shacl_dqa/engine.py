"""Validation of an RDF graph against SHACL-core shapes.

Shapes are compiled once into closures over the graph indexes. Nested
shapes that are referenced from more than one place (the entity filters that
most catalog shapes share, for instance) memoise their conformance per node,
so that checking them for the thousandth shape costs a dict lookup.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Iterable

from .rdf import xsd
from .rdf.graph import Graph
from .rdf.terms import RDF_TYPE, RDFS_NS, SH_NS, BNode, IRI, Literal, sort_key
from .shapes.model import Path, Shape

log = logging.getLogger(__name__)

_EMPTY: frozenset = frozenset()
_NO_VALUE = None
RDFS_SUBCLASSOF = RDFS_NS.subClassOf


def component_iri(name: str) -> IRI:
    return SH_NS[name[0].upper() + name[1:] + "ConstraintComponent"]


_MIN_COUNT = component_iri("minCount")
_MAX_COUNT = component_iri("maxCount")
_QMIN = component_iri("qualifiedMinCount")
_QMAX = component_iri("qualifiedMaxCount")

_MESSAGES = {
    "class": "Value is not an instance of {p}",
    "datatype": "Value does not have datatype {p}",
    "nodeKind": "Value is not of node kind {p}",
    "minCount": "Fewer than {p} values",
    "maxCount": "More than {p} values",
    "minExclusive": "Value is not greater than {p}",
    "minInclusive": "Value is not greater than or equal to {p}",
    "maxExclusive": "Value is not less than {p}",
    "maxInclusive": "Value is not less than or equal to {p}",
    "minLength": "Value is shorter than {p} characters",
    "maxLength": "Value is longer than {p} characters",
    "pattern": "Value does not match pattern {p}",
    "languageIn": "Language tag not in {p}",
    "uniqueLang": "Language tag used more than once",
    "equals": "Value sets differ for {p}",
    "disjoint": "Value also occurs for {p}",
    "not": "Value conforms to a negated shape",
    "and": "Value does not conform to every shape in sh:and",
    "or": "Value does not conform to any shape in sh:or",
    "node": "Value does not conform to the referenced shape",
    "qualifiedMinCount": "Fewer than {p} values conform to the qualified shape",
    "qualifiedMaxCount": "More than {p} values conform to the qualified shape",
    "hasValue": "Missing expected value {p}",
    "in": "Value is not in the allowed list",
}


def _param_str(p) -> str:
    if isinstance(p, (IRI, BNode, Literal)):
        return p.n3()
    if isinstance(p, tuple):
        return "(" + " ".join(_param_str(x) for x in p) + ")"
    return str(p)


@dataclass(frozen=True)
class ValidationResult:
    focus_node: object
    result_path: Path | None
    value: object
    source_shape: object
    source_component: IRI
    message: str | None
    shape_id: str

    def sort_key(self) -> tuple:
        return (
            self.shape_id,
            render_term(self.focus_node),
            self.result_path.render() if self.result_path is not None else "",
            str(self.source_component),
            render_term(self.value) if self.value is not None else "",
            render_term(self.source_shape) if self.source_shape is not None else "",
        )


def render_term(t) -> str:
    return t.n3() if t is not None else ""


def shape_key(shape_id) -> str:
    if type(shape_id) is BNode:
        return "_:" + shape_id
    return str(shape_id)


class ShapeError(ValueError):
    """A shape whose parameters cannot be compiled (bad regex, negative count, ...)."""


@dataclass
class ValidationReport:
    results: list
    focus_counts: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)  # (shape id, message) for shapes that were skipped

    @property
    def conforms(self) -> bool:
        return not self.results

    def by_shape(self) -> dict:
        out: dict = {}
        for r in self.results:
            out.setdefault(r.shape_id, []).append(r)
        return out


class _Compiled:
    __slots__ = ("shape", "path", "values", "checks", "props", "memo", "deactivated", "message", "source")

    def __init__(self, shape: Shape):
        self.shape = shape
        self.path = shape.path
        self.values = None
        self.checks: list = []
        self.props: list = []
        self.memo: dict | None = None
        self.deactivated = shape.deactivated
        self.message = shape.message
        self.source = shape.id


def _lang_matches(tag: str, rng: str) -> bool:
    rng = rng.lower()
    if rng == "*":
        return bool(tag)
    return tag == rng or tag.startswith(rng + "-")


def _push_inverse(path: Path) -> Path:
    """Rewrite so that inversion only ever wraps a plain predicate."""
    k = path.kind
    if k == "pred":
        return path
    if k == "inverse":
        inner = path.children[0]
        ik = inner.kind
        if ik == "pred":
            return path
        if ik == "inverse":
            return _push_inverse(inner.children[0])
        if ik == "seq":
            return Path("seq", children=tuple(
                _push_inverse(Path("inverse", children=(c,))) for c in reversed(inner.children)))
        return Path(ik, children=tuple(_push_inverse(Path("inverse", children=(c,))) for c in inner.children))
    return Path(k, children=tuple(_push_inverse(c) for c in path.children))


class Validator:
    def __init__(self, graph: Graph, shapes: Iterable[Shape] = ()):
        self.g = graph
        self.shapes = list(shapes)
        self._compiled: dict = {}
        self._subclass_cache: dict = {}
        self._refcount: dict = {}
        for s in self.shapes:
            self._count_refs(s)

    # helpers over the data graph

    def subclasses(self, cls) -> frozenset:
        """``cls`` and every class reaching it through rdfs:subClassOf*."""
        cached = self._subclass_cache.get(cls)
        if cached is not None:
            return cached
        seen = {cls}
        stack = [cls]
        g = self.g
        while stack:
            c = stack.pop()
            for sub in g.subjects(RDFS_SUBCLASSOF, c):
                if sub not in seen:
                    seen.add(sub)
                    stack.append(sub)
        out = frozenset(seen)
        self._subclass_cache[cls] = out
        return out

    def is_instance(self, node, cls) -> bool:
        types = self.g.objects(node, RDF_TYPE)
        if not types:
            return False
        if cls in types:
            return True
        return not self.subclasses(cls).isdisjoint(types)

    def instances(self, cls) -> set:
        out: set = set()
        g = self.g
        for c in self.subclasses(cls):
            out.update(g.subjects(RDF_TYPE, c))
        return out

    def focus_nodes(self, shape: Shape) -> set:
        g = self.g
        out: set = set()
        for t in shape.targets:
            if t.kind == "class":
                out |= self.instances(t.value)
            elif t.kind == "node":
                out.add(t.value)
            elif t.kind == "subjectsOf":
                out |= g.subjects_of(t.value)
            else:
                out.update(g.objects_of(t.value))
        if shape.implicit_class and shape.id is not None:
            out |= self.instances(shape.id)
        return out

    # compilation

    def _count_refs(self, shape: Shape):
        for sub in shape.walk():
            self._refcount[sub] = self._refcount.get(sub, 0) + 1

    def compile(self, shape: Shape, siblings: tuple = ()) -> _Compiled:
        key = (shape, siblings)
        cs = self._compiled.get(key)
        if cs is not None:
            return cs
        cs = _Compiled(shape)
        self._compiled[key] = cs
        if self._refcount.get(shape, 0) > 1 and not shape.targets:
            cs.memo = {}
        cs.values = self._value_fn(shape.path)
        qualified = [c.value for c in shape.constraints if c.component == "property"]
        sibling_qvs = {}
        for prop in qualified:
            sibling_qvs[prop] = tuple(
                c.value.shape
                for other in qualified
                if other is not prop
                for c in other.constraints
                if c.component == "qualifiedValueShape"
            )
        for c in shape.constraints:
            if c.component == "property":
                cs.props.append(self.compile(c.value, sibling_qvs.get(c.value, ())))
            else:
                cs.checks.append(self._check_fn(c.component, c.value, shape, siblings))
        return cs

    def _value_fn(self, path: Path | None):
        if path is None:
            return lambda n: (n,)
        return self._path_fn(_push_inverse(path))

    def _path_fn(self, path: Path):
        g = self.g
        k = path.kind
        if k == "pred":
            p = path.pred
            spo = g._spo

            def fwd(n, spo=spo, p=p):
                preds = spo.get(n)
                if preds is None:
                    return _EMPTY
                return preds.get(p, _EMPTY)

            return fwd
        if k == "inverse":
            p = path.children[0].pred
            pos = g._pos

            def inv(n, pos=pos, p=p):
                by_obj = pos.get(p)
                if by_obj is None:
                    return _EMPTY
                return by_obj.get(n, _EMPTY)

            return inv
        fns = [self._path_fn(c) for c in path.children]
        if k == "seq":
            def seq(n):
                cur = {n}
                for fn in fns:
                    nxt = set()
                    for x in cur:
                        nxt.update(fn(x))
                    cur = nxt
                    if not cur:
                        break
                return cur

            return seq
        if k == "alt":
            def alt(n):
                out = set()
                for fn in fns:
                    out.update(fn(n))
                return out

            return alt
        step = fns[0]
        if k == "zeroOrOne":
            return lambda n: {n} | set(step(n))

        def closure(n, include_self=(k == "zeroOrMore")):
            seen = {n} if include_self else set()
            frontier = [n]
            while frontier:
                x = frontier.pop()
                for y in step(x):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
            return seen

        return closure

    def _check_fn(self, comp: str, param, shape: Shape, siblings: tuple):
        iri = component_iri(comp)
        if comp == "class":
            is_instance = self.is_instance

            def check(f, vals):
                return [(v, iri) for v in vals if not is_instance(v, param)]

            return check
        if comp == "datatype":
            supported = xsd.is_supported(param)
            well_formed = xsd.is_well_formed

            def check(f, vals):
                bad = []
                for v in vals:
                    if type(v) is not Literal or v.datatype != param or (supported and not well_formed(v)):
                        bad.append((v, iri))
                return bad

            return check
        if comp == "nodeKind":
            allowed = _NODE_KINDS.get(param)
            if allowed is None:
                raise ShapeError(f"unknown node kind {param!r}")

            def check(f, vals):
                return [(v, iri) for v in vals if type(v) not in allowed]

            return check
        if comp in ("minCount", "maxCount", "minLength", "maxLength"):
            if type(param) is not int or param < 0:
                raise ShapeError(f"{comp} expects a non-negative integer, got {param!r}")
        if comp == "minCount":
            def check(f, vals):
                return [(_NO_VALUE, iri)] if len(vals) < param else ()

            return check
        if comp == "maxCount":
            def check(f, vals):
                return [(_NO_VALUE, iri)] if len(vals) > param else ()

            return check
        if comp in ("minExclusive", "minInclusive", "maxExclusive", "maxInclusive"):
            ok = {
                "minExclusive": (1,),
                "minInclusive": (0, 1),
                "maxExclusive": (-1,),
                "maxInclusive": (-1, 0),
            }[comp]
            compare = xsd.compare

            def check(f, vals):
                bad = []
                for v in vals:
                    if type(v) is not Literal or type(param) is not Literal or compare(v, param) not in ok:
                        bad.append((v, iri))
                return bad

            return check
        if comp in ("minLength", "maxLength"):
            is_min = comp == "minLength"

            def check(f, vals):
                bad = []
                for v in vals:
                    if type(v) is BNode:
                        bad.append((v, iri))
                        continue
                    n = len(v.lexical) if type(v) is Literal else len(v)
                    if (n < param) if is_min else (n > param):
                        bad.append((v, iri))
                return bad

            return check
        if comp == "pattern":
            source = param.regex
            if param.flags and "q" in param.flags:
                source = re.escape(source)
            try:
                regex = re.compile(source, _regex_flags(param.flags))
            except re.error as exc:
                raise ShapeError(f"pattern {param.regex!r} does not compile: {exc}") from None
            search = regex.search

            def check(f, vals):
                bad = []
                for v in vals:
                    if type(v) is BNode:
                        bad.append((v, iri))
                    elif search(v.lexical if type(v) is Literal else v) is None:
                        bad.append((v, iri))
                return bad

            return check
        if comp == "languageIn":
            ranges = tuple(param)

            def check(f, vals):
                bad = []
                for v in vals:
                    tag = v.language if type(v) is Literal else None
                    if not tag or not any(_lang_matches(tag, r) for r in ranges):
                        bad.append((v, iri))
                return bad

            return check
        if comp == "uniqueLang":
            if not param:
                return lambda f, vals: ()

            def check(f, vals):
                seen: dict = {}
                for v in vals:
                    if type(v) is Literal and v.language:
                        seen[v.language] = seen.get(v.language, 0) + 1
                return [(_NO_VALUE, iri) for tag, n in sorted(seen.items()) if n > 1]

            return check
        if comp == "equals":
            g = self.g

            def check(f, vals):
                other = g.objects(f, param)
                vals = set(vals)
                return [(v, iri) for v in vals ^ set(other)]

            return check
        if comp == "disjoint":
            g = self.g

            def check(f, vals):
                other = g.objects(f, param)
                return [(v, iri) for v in vals if v in other]

            return check
        if comp == "hasValue":
            def check(f, vals):
                return () if param in vals else [(_NO_VALUE, iri)]

            return check
        if comp == "in":
            allowed_set = frozenset(param)

            def check(f, vals):
                return [(v, iri) for v in vals if v not in allowed_set]

            return check
        if comp == "not":
            inner = self.compile(param)
            conforms = self.conforms

            def check(f, vals):
                return [(v, iri) for v in vals if conforms(inner, v)]

            return check
        if comp == "node":
            inner = self.compile(param)
            conforms = self.conforms

            def check(f, vals):
                return [(v, iri) for v in vals if not conforms(inner, v)]

            return check
        if comp == "and":
            members = [self.compile(s) for s in param]
            conforms = self.conforms

            def check(f, vals):
                bad = []
                for v in vals:
                    for m in members:
                        if not conforms(m, v):
                            bad.append((v, iri))
                            break
                return bad

            return check
        if comp == "or":
            members = [self.compile(s) for s in param]
            conforms = self.conforms

            def check(f, vals):
                bad = []
                for v in vals:
                    for m in members:
                        if conforms(m, v):
                            break
                    else:
                        bad.append((v, iri))
                return bad

            return check
        if comp == "qualifiedValueShape":
            inner = self.compile(param.shape)
            others = [self.compile(s) for s in siblings] if param.disjoint else []
            qmin, qmax = param.min_count, param.max_count
            conforms = self.conforms

            def check(f, vals):
                n = 0
                for v in vals:
                    if conforms(inner, v) and not any(conforms(o, v) for o in others):
                        n += 1
                out = []
                if qmin is not None and n < qmin:
                    out.append((_NO_VALUE, _QMIN))
                if qmax is not None and n > qmax:
                    out.append((_NO_VALUE, _QMAX))
                return out

            return check
        raise ShapeError(f"unsupported component {comp!r}")

    # evaluation

    def conforms(self, cs: _Compiled, node) -> bool:
        memo = cs.memo
        if memo is not None:
            hit = memo.get(node)
            if hit is not None:
                return hit
        ok = True
        if not cs.deactivated:
            vals = cs.values(node)
            for check in cs.checks:
                if check(node, vals):
                    ok = False
                    break
            else:
                conforms = self.conforms
                for sub in cs.props:
                    for v in vals:
                        if not conforms(sub, v):
                            ok = False
                            break
                    if not ok:
                        break
        if memo is not None:
            memo[node] = ok
        return ok

    def _results(self, cs: _Compiled, focus, shape_id: str, out: list):
        if cs.deactivated:
            return
        vals = cs.values(focus)
        for check in cs.checks:
            for value, comp in check(focus, vals):
                out.append(ValidationResult(focus, cs.path, value, cs.source, comp,
                                            cs.message or self._message(cs.shape, comp), shape_id))
        for sub in cs.props:
            for v in vals:
                self._results(sub, v, shape_id, out)

    def _message(self, shape: Shape, comp: IRI) -> str:
        name = comp[len(SH_NS):-len("ConstraintComponent")]
        name = name[0].lower() + name[1:]
        template = _MESSAGES.get(name, name)
        if "{p}" not in template:
            return template
        if name.startswith("qualified"):
            for c in shape.constraints:
                if c.component == "qualifiedValueShape":
                    return template.format(p=c.value.min_count if name.endswith("MinCount") else c.value.max_count)
        for c in shape.constraints:
            if c.component == name:
                p = c.value.regex if name == "pattern" else c.value
                return template.format(p=_param_str(p))
        return template.format(p="")

    def validate_shape(self, shape: Shape, focus: Iterable | None = None) -> tuple[list, int]:
        """Results of one top-level shape, plus the number of focus nodes."""
        if shape.deactivated:
            return [], 0
        nodes = self.focus_nodes(shape) if focus is None else set(focus)
        before = set(self._compiled)
        try:
            cs = self.compile(shape)
        except ShapeError:
            # drop the half-built entries so a later shape cannot pick them up
            for key in set(self._compiled) - before:
                del self._compiled[key]
            raise
        sid = shape_key(shape.id)
        out: list = []
        for n in nodes:
            self._results(cs, n, sid, out)
        return out, len(nodes)

    def validate(self) -> ValidationReport:
        results: list = []
        counts: dict = {}
        errors: list = []
        for shape in self.shapes:
            key = shape_key(shape.id)
            try:
                res, n = self.validate_shape(shape)
            except ShapeError as exc:
                log.error("shape %s skipped: %s", key, exc)
                errors.append((key, str(exc)))
                continue
            results.extend(res)
            counts[key] = counts.get(key, 0) + n
        results.sort(key=ValidationResult.sort_key)
        return ValidationReport(results, counts, sorted(errors))


def _regex_flags(flags: str | None) -> int:
    out = 0
    for ch in flags or "":
        if ch == "i":
            out |= re.IGNORECASE
        elif ch == "s":
            out |= re.DOTALL
        elif ch == "m":
            out |= re.MULTILINE
        elif ch == "x":
            out |= re.VERBOSE
        elif ch == "q":
            pass
        else:
            raise ShapeError(f"unsupported regex flag {ch!r}")
    return out


_NODE_KINDS = {
    SH_NS.IRI: (IRI,),
    SH_NS.BlankNode: (BNode,),
    SH_NS.Literal: (Literal,),
    SH_NS.BlankNodeOrIRI: (BNode, IRI),
    SH_NS.BlankNodeOrLiteral: (BNode, Literal),
    SH_NS.IRIOrLiteral: (IRI, Literal),
}


def validate(graph: Graph, shapes: Iterable[Shape]) -> ValidationReport:
    return Validator(graph, shapes).validate()


def resolve_targets(shape: Shape, graph: Graph) -> set:
    """Focus nodes selected by the shape's targets."""
    return Validator(graph).focus_nodes(shape)


def evaluate_path(graph: Graph, focus, path: Path) -> set:
    """Value nodes reached from ``focus`` along ``path``."""
    return set(Validator(graph)._value_fn(path)(focus))


__all__ = ["ShapeError", "Validator", "ValidationResult", "ValidationReport", "validate", "resolve_targets", "evaluate_path", "component_iri", "sort_key"]
