"""In-memory triple store with subject- and predicate-first hash indexes."""

from __future__ import annotations

import threading
from typing import Iterable, Iterator

from .terms import RDF_FIRST, RDF_NIL, RDF_REST, BNode, IRI, Literal, Term

_EMPTY: frozenset = frozenset()

Triple = tuple


class Graph:
    """A set of triples.

    Two indexes are kept up to date on insertion: ``spo`` maps subject to
    predicate to the object set, ``pos`` maps predicate to object to the
    subject set. An object-first index is built on demand the first time a
    lookup needs it and thrown away on the next mutation.

    The sets handed out by the lookup methods are the live index entries.
    Callers must not mutate them.
    """

    def __init__(self, triples: Iterable[Triple] = (), name: str | None = None):
        self.name = name
        self._spo: dict = {}
        self._pos: dict = {}
        self._osp: dict | None = None
        self._subjects_by_pred: dict = {}
        self._size = 0
        self._lock = threading.Lock()
        for t in triples:
            self.add(*t)

    def add(self, s: Term, p: IRI, o: Term) -> bool:
        """Insert a triple; returns True when it was not already present."""
        preds = self._spo.get(s)
        if preds is None:
            preds = self._spo[s] = {}
        objs = preds.get(p)
        if objs is None:
            objs = preds[p] = set()
        elif o in objs:
            return False
        objs.add(o)
        by_obj = self._pos.get(p)
        if by_obj is None:
            by_obj = self._pos[p] = {}
        subs = by_obj.get(o)
        if subs is None:
            by_obj[o] = {s}
        else:
            subs.add(s)
        self._size += 1
        if self._osp is not None:
            self._osp = None
        if p in self._subjects_by_pred:
            del self._subjects_by_pred[p]
        return True

    def remove(self, s: Term, p: IRI, o: Term) -> bool:
        objs = self._spo.get(s, {}).get(p)
        if not objs or o not in objs:
            return False
        objs.discard(o)
        if not objs:
            del self._spo[s][p]
            if not self._spo[s]:
                del self._spo[s]
        subs = self._pos[p][o]
        subs.discard(s)
        if not subs:
            del self._pos[p][o]
            if not self._pos[p]:
                del self._pos[p]
        self._size -= 1
        self._osp = None
        self._subjects_by_pred.pop(p, None)
        return True

    def update(self, triples: Iterable[Triple]) -> int:
        """Add many triples; returns how many were new."""
        added = 0
        add = self.add
        for s, p, o in triples:
            if add(s, p, o):
                added += 1
        return added

    def __len__(self) -> int:
        return self._size

    def __contains__(self, triple: Triple) -> bool:
        s, p, o = triple
        return o in self._spo.get(s, {}).get(p, _EMPTY)

    def __iter__(self) -> Iterator[Triple]:
        for s, preds in self._spo.items():
            for p, objs in preds.items():
                for o in objs:
                    yield (s, p, o)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return len(self) == len(other) and all(t in other for t in self)

    __hash__ = None

    def copy(self) -> "Graph":
        g = Graph(name=self.name)
        g._spo = {s: {p: set(objs) for p, objs in preds.items()} for s, preds in self._spo.items()}
        g._pos = {p: {o: set(subs) for o, subs in objs.items()} for p, objs in self._pos.items()}
        g._size = self._size
        return g

    def __or__(self, other: "Graph") -> "Graph":
        g = self.copy()
        g.update(other)
        return g

    # lookups

    def objects(self, s: Term, p: IRI) -> set | frozenset:
        return self._spo.get(s, {}).get(p, _EMPTY)

    def subjects(self, p: IRI, o: Term) -> set | frozenset:
        return self._pos.get(p, {}).get(o, _EMPTY)

    def value(self, s: Term, p: IRI):
        objs = self.objects(s, p)
        for o in objs:
            return o
        return None

    def has(self, s: Term, p: IRI) -> bool:
        return p in self._spo.get(s, ())

    def predicates_of(self, s: Term) -> dict:
        """Predicate -> object set for one subject."""
        return self._spo.get(s, {})

    def all_subjects(self) -> Iterable[Term]:
        return self._spo.keys()

    def all_predicates(self) -> Iterable[IRI]:
        return self._pos.keys()

    def subjects_of(self, p: IRI) -> set | frozenset:
        """Distinct subjects that have at least one value for ``p``."""
        cached = self._subjects_by_pred.get(p)
        if cached is not None:
            return cached
        by_obj = self._pos.get(p)
        if not by_obj:
            return _EMPTY
        out = set()
        for subs in by_obj.values():
            out.update(subs)
        out = frozenset(out)
        self._subjects_by_pred[p] = out
        return out

    def objects_of(self, p: IRI) -> Iterable[Term]:
        """Distinct objects of ``p``."""
        return self._pos.get(p, {}).keys()

    def count_predicate(self, p: IRI) -> int:
        return sum(len(subs) for subs in self._pos.get(p, {}).values())

    def _object_index(self) -> dict:
        osp = self._osp
        if osp is not None:
            return osp
        with self._lock:
            if self._osp is None:
                idx: dict = {}
                for p, by_obj in self._pos.items():
                    for o, subs in by_obj.items():
                        entry = idx.get(o)
                        if entry is None:
                            entry = idx[o] = {}
                        entry[p] = subs
                self._osp = idx
            return self._osp

    def incoming(self, o: Term) -> dict:
        """Predicate -> subject set for triples whose object is ``o``."""
        return self._object_index().get(o, {})

    def triples(self, s=None, p=None, o=None) -> Iterator[Triple]:
        """Match a triple pattern; ``None`` is a wildcard."""
        if s is not None:
            preds = self._spo.get(s)
            if not preds:
                return
            if p is not None:
                objs = preds.get(p, _EMPTY)
                if o is not None:
                    if o in objs:
                        yield (s, p, o)
                    return
                for obj in objs:
                    yield (s, p, obj)
                return
            for pred, objs in preds.items():
                if o is None:
                    for obj in objs:
                        yield (s, pred, obj)
                elif o in objs:
                    yield (s, pred, o)
            return
        if p is not None:
            by_obj = self._pos.get(p)
            if not by_obj:
                return
            if o is not None:
                for sub in by_obj.get(o, _EMPTY):
                    yield (sub, p, o)
                return
            for obj, subs in by_obj.items():
                for sub in subs:
                    yield (sub, p, obj)
            return
        if o is not None:
            for pred, subs in self.incoming(o).items():
                for sub in subs:
                    yield (sub, pred, o)
            return
        yield from self

    def match(self, s=None, p=None, o=None, ordered: bool = False) -> Iterator[Triple]:
        """Like ``triples``; ``ordered`` sorts by N-Triples rendering."""
        if not ordered:
            return self.triples(s, p, o)
        return iter(sorted(self.triples(s, p, o), key=lambda t: (t[0].n3(), t[1].n3(), t[2].n3())))

    def items(self, head: Term) -> list:
        """Members of the RDF collection starting at ``head``.

        Raises ValueError on a malformed or cyclic list.
        """
        out = []
        seen = set()
        node = head
        while node != RDF_NIL:
            if node in seen:
                raise ValueError(f"cyclic RDF list at {node!r}")
            seen.add(node)
            firsts = self.objects(node, RDF_FIRST)
            rests = self.objects(node, RDF_REST)
            if len(firsts) != 1 or len(rests) != 1:
                raise ValueError(f"malformed RDF list at {node!r}")
            out.append(next(iter(firsts)))
            node = next(iter(rests))
        return out


__all__ = ["Graph", "IRI", "BNode", "Literal"]
