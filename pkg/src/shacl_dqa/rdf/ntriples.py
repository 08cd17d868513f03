"""Canonical N-Triples output: one triple per line, lines sorted."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .graph import Graph


def triple_line(s, p, o) -> str:
    return f"{s.n3()} {p.n3()} {o.n3()} .\n"


def serialize(triples: Graph | Iterable[tuple]) -> str:
    return "".join(sorted(triple_line(s, p, o) for s, p, o in triples))


def write(triples: Graph | Iterable[tuple], path: str | Path) -> None:
    Path(path).write_text(serialize(triples), encoding="utf-8")
