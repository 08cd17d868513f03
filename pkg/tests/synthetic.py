"""Synthetic knowledge graphs of a chosen size, for timing runs.

The ontology is fixed in shape (classes, properties with domains and
ranges, a few characteristic axioms, disjoint pairs) so the number of
instantiated shapes depends on ``n_classes`` and ``n_props`` only; the
data grows with ``n_entities``. Roughly 7.5 triples per entity.
"""

from __future__ import annotations

import random
from pathlib import Path

EX = "http://example.org/"
HEAD = """@prefix ex: <http://example.org/> .
@prefix exr: <http://example.org/resource/> .
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
"""


def ontology(n_classes: int, n_props: int) -> str:
    lines = [HEAD]
    for c in range(n_classes):
        lines.append(f'ex:C{c} a owl:Class ; rdfs:label "Class {c}"@en .')
    for a in range(0, n_classes - 1, 10):
        lines.append(f"ex:C{a} owl:disjointWith ex:C{a + 1} .")
    for p in range(n_props):
        dom = f"ex:C{p % n_classes}"
        if p % 3 == 0:
            kind, rng = "owl:DatatypeProperty", "xsd:integer"
        elif p % 3 == 1:
            kind, rng = "owl:DatatypeProperty", "xsd:string"
        else:
            kind, rng = "owl:ObjectProperty", f"ex:C{(p + 1) % n_classes}"
        extra = ""
        if p % 20 == 2:
            extra = ", owl:IrreflexiveProperty"
        elif p % 20 == 5:
            extra = ", owl:InverseFunctionalProperty"
        elif p % 20 == 8:
            extra = ", owl:FunctionalProperty"
        lines.append(f"ex:p{p} a {kind}{extra} ; rdfs:domain {dom} ; rdfs:range {rng} ; "
                     f'rdfs:label "property {p}"@en .')
    return "\n".join(lines) + "\n"


def data(n_entities: int, n_classes: int, n_props: int, seed: int = 7) -> str:
    rnd = random.Random(seed)
    out = [HEAD]
    for e in range(n_entities):
        c = rnd.randrange(n_classes)
        s = f"exr:e{e}"
        parts = [f"a ex:C{c}"]
        if rnd.random() < 0.97:
            lang = "@en" if rnd.random() < 0.9 else ""
            parts.append(f'rdfs:label "entity {e}"{lang}')
        if rnd.random() < 0.5:
            parts.append(f'rdfs:comment "about {e}"@en')
        if rnd.random() < 0.6:
            parts.append(f"owl:sameAs <http://other.org/e{e}>")
        for _ in range(3):
            p = rnd.randrange(n_props)
            if p % 3 == 0:
                parts.append(f"ex:p{p} {rnd.randrange(1000)}")
            elif p % 3 == 1:
                parts.append(f'ex:p{p} "v{rnd.randrange(1000)}"')
            else:
                parts.append(f"ex:p{p} exr:e{rnd.randrange(n_entities)}")
        out.append(s + " " + " ;\n    ".join(parts) + " .")
    return "\n".join(out) + "\n"


def write(directory: Path, n_entities: int, n_classes: int = 40, n_props: int = 60, seed: int = 7):
    directory.mkdir(parents=True, exist_ok=True)
    d, o = directory / "data.ttl", directory / "onto.ttl"
    d.write_text(data(n_entities, n_classes, n_props, seed), encoding="utf-8")
    o.write_text(ontology(n_classes, n_props), encoding="utf-8")
    return d, o
