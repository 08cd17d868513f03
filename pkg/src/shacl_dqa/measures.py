"""Data-quality measures computed from validation results.

Three kinds of measure are produced:

* binary: 1 when the shape found no violation, 0 otherwise;
* ratio: violating focus nodes over a population taken from the profile
  (entities, entities with a label, schema classes, ...);
* composite: the share of instantiations (or groups of instantiations,
  such as the two directions of a disjoint-class pair) without violations.

Every record carries both the raw violation ratio and the conformance
score, which is one minus that ratio.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .engine import ValidationReport
from .instantiator import InstantiatedShape
from .profiler import DataProfile
from .shapes.catalog import DIMENSIONS, GROUPS, lookup
from .shapes.model import pred


@dataclass(frozen=True)
class MeasureRecord:
    group: str
    dimension: str
    metric_id: str
    measure_kind: str
    shape_ids: tuple
    violations: int
    denominator: int | None
    raw_violation_ratio: float | None
    conformance_score: float | None
    applicable: bool

    @property
    def shape_count(self) -> int:
        return len(self.shape_ids)

    def sort_key(self) -> tuple:
        return _order(self.group, self.dimension, self.metric_id)


def _order(group: str, dimension: str, metric_id: str) -> tuple:
    gi = GROUPS.index(group)
    di = DIMENSIONS[group].index(dimension)
    return (gi, di, metric_id)


def compute_binary(violations: int) -> int:
    if violations < 0:
        raise ValueError("violation count cannot be negative")
    return 1 if violations == 0 else 0


def compute_ratio(violations: int, denominator: int) -> tuple:
    """(raw violation ratio, conformance score, applicable)."""
    if denominator <= 0:
        return None, None, False
    if violations > denominator:
        raise ValueError(f"{violations} violations exceed the population of {denominator}")
    raw = violations / denominator
    return raw, 1.0 - raw, True


def compute_composite(results: Iterable[tuple]) -> tuple:
    """Per-unit scores and their mean.

    ``results`` holds (unit, violation count) pairs; several pairs may share
    a unit, which then scores 1 only if all of them are violation-free.
    """
    scores: dict = {}
    for unit, violations in results:
        ok = violations == 0
        scores[unit] = scores.get(unit, 1) and (1 if ok else 0)
    if not scores:
        return scores, None
    return scores, sum(scores.values()) / len(scores)


POPULATIONS = {
    "entities": lambda p: p.entities,
    "entities_with_interlink": lambda p: p.entities_with_interlink,
    "entities_with_label": lambda p: p.entities_with_label,
    "entities_with_description": lambda p: p.entities_with_description,
    "schema_classes": lambda p: p.schema_classes,
    "schema_properties": lambda p: p.schema_properties,
}


def _record(t, metric_id, kind, shape_ids, violations, denominator, raw, conf, applicable) -> MeasureRecord:
    return MeasureRecord(
        group=t.group,
        dimension=t.dimension,
        metric_id=metric_id,
        measure_kind=kind,
        shape_ids=tuple(sorted(str(s) for s in shape_ids)),
        violations=violations,
        denominator=denominator,
        raw_violation_ratio=raw,
        conformance_score=conf,
        applicable=applicable,
    )


def compute_all(report: ValidationReport, shapes: list[InstantiatedShape], profile: DataProfile) -> list:
    """One record per catalog template (or per split metric) with instances."""
    by_shape = report.by_shape()
    per_template: dict = {}
    for s in shapes:
        per_template.setdefault(s.template_id, []).append(s)

    records = []
    for tid, insts in per_template.items():
        t = lookup(tid)
        ids = [s.shape_id for s in insts]
        if t.measure_kind == "report-only":
            continue
        if t.measure_kind == "binary":
            results = [r for i in ids for r in by_shape.get(str(i), ())]
            if t.metrics:
                for metric_id, path in t.metrics:
                    want = pred(path) if path is not None else None
                    focus = {r.focus_node for r in results if r.result_path == want}
                    records.append(_record(t, metric_id, "binary", ids, len(focus), None, None,
                                           float(compute_binary(len(focus))), True))
            else:
                focus = {r.focus_node for r in results}
                records.append(_record(t, tid, "binary", ids, len(focus), None, None,
                                       float(compute_binary(len(focus))), True))
        elif t.measure_kind == "ratio":
            population = POPULATIONS[t.denominator](profile)
            focus = {r.focus_node for i in ids for r in by_shape.get(str(i), ())}
            violations = len(focus & population)
            raw, conf, ok = compute_ratio(violations, len(population))
            records.append(_record(t, tid, "ratio", ids, violations, len(population), raw, conf, ok))
        elif t.measure_kind == "composite":
            pairs = [(s.unit, len(by_shape.get(str(s.shape_id), ()))) for s in insts]
            scores, aggregate = compute_composite(pairs)
            failing = sum(1 for v in scores.values() if v == 0)
            if aggregate is None:
                records.append(_record(t, tid, "composite", ids, 0, 0, None, None, False))
            else:
                records.append(_record(t, tid, "composite", ids, failing, len(scores),
                                       failing / len(scores), aggregate, True))
        else:
            raise ValueError(f"unknown measure kind {t.measure_kind}")
    records.sort(key=MeasureRecord.sort_key)
    return records
