"""Files written at the end of a run.

``measures.csv``, ``validation-report.json`` and ``validation-report.ttl``
are byte-stable for identical inputs. ``summary.html`` is a static page
built from the measure records alone, and ``figures/*.png`` are bar charts
of the same records.
"""

from __future__ import annotations

import csv
import html
import io
import json
import logging
from collections import Counter
from pathlib import Path

from .engine import ValidationReport
from .rdf.graph import Graph
from .rdf.terms import RDF_TYPE, SH_NS, BNode, IRI, Literal, XSD
from .rdf.turtle_writer import serialize_turtle
from .shapes.catalog import DIMENSIONS, GROUPS
from .shapes.shapes_graph import ShapeWriter, shapes_to_turtle

log = logging.getLogger(__name__)

CSV_HEADER = (
    "group",
    "dimension",
    "metric_id",
    "measure_kind",
    "shape_count",
    "violations",
    "denominator",
    "raw_violation_ratio",
    "conformance_score",
    "applicable",
)
FORMATS = ("csv", "json", "ttl", "html", "png")

def fmt_number(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def measures_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([
            r.group,
            r.dimension,
            r.metric_id,
            r.measure_kind,
            r.shape_count,
            r.violations,
            fmt_number(r.denominator),
            fmt_number(r.raw_violation_ratio),
            fmt_number(r.conformance_score),
            "true" if r.applicable else "false",
        ])
    return buf.getvalue()


def _term(t):
    if t is None:
        return None
    return t.n3()


def report_dict(report: ValidationReport, shapes) -> dict:
    info = {str(s.shape_id): s for s in shapes}
    results = []
    for r in report.results:
        inst = info.get(r.shape_id)
        results.append({
            "shape": r.shape_id,
            "template": inst.template_id if inst else None,
            "focusNode": _term(r.focus_node),
            "resultPath": r.result_path.render() if r.result_path is not None else None,
            "value": _term(r.value),
            "sourceConstraintComponent": str(r.source_component),
            "resultMessage": r.message,
        })
    per_shape = Counter(r.shape_id for r in report.results)
    shape_list = []
    for s in shapes:
        sid = str(s.shape_id)
        shape_list.append({
            "id": sid,
            "template": s.template_id,
            "variant": s.variant,
            "bindings": {k: _binding_json(v) for k, v in s.bindings},
            "focusNodes": report.focus_counts.get(sid, 0),
            "violations": per_shape.get(sid, 0),
        })
    return {
        "conforms": report.conforms,
        "resultCount": len(report.results),
        "shapes": shape_list,
        "results": results,
        "errors": [{"shape": sid, "message": msg} for sid, msg in report.errors],
    }


def _binding_json(v):
    if isinstance(v, (IRI, BNode, Literal)):
        return v.n3()
    if isinstance(v, tuple):
        return [_binding_json(x) for x in v]
    return v


def report_json(report: ValidationReport, shapes) -> str:
    return json.dumps(report_dict(report, shapes), indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def report_graph(report: ValidationReport) -> Graph:
    """The results as a graph in the SHACL validation-report vocabulary.

    ``sh:sourceShape`` names the instantiated top-level shape, since nested
    shapes of generated templates are anonymous.
    """
    g = Graph()
    writer = ShapeWriter(g)
    rep = BNode("report")
    g.add(rep, RDF_TYPE, SH_NS.ValidationReport)
    g.add(rep, SH_NS.conforms, Literal("true" if report.conforms else "false", IRI(XSD + "boolean")))
    for n, r in enumerate(report.results):
        node = BNode(f"r{n}")
        g.add(rep, SH_NS.result, node)
        g.add(node, RDF_TYPE, SH_NS.ValidationResult)
        g.add(node, SH_NS.resultSeverity, SH_NS.Violation)
        g.add(node, SH_NS.focusNode, r.focus_node)
        if r.result_path is not None:
            g.add(node, SH_NS.resultPath, writer.path(r.result_path))
        if r.value is not None:
            g.add(node, SH_NS.value, r.value)
        g.add(node, SH_NS.sourceShape, IRI(r.shape_id))
        g.add(node, SH_NS.sourceConstraintComponent, r.source_component)
        if r.message:
            g.add(node, SH_NS.resultMessage, Literal(r.message))
    return g


def report_turtle(report: ValidationReport) -> str:
    return serialize_turtle(report_graph(report), {"sh": str(SH_NS), "xsd": XSD})


def summary_html(records, title: str = "Data quality assessment") -> str:
    """Static page with one table per group; no scripts, no external assets."""
    esc = html.escape
    out = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8">',
        f"<title>{esc(title)}</title>",
        "<style>",
        "body{font-family:sans-serif;margin:2em;color:#222}",
        "table{border-collapse:collapse;margin-bottom:2em}",
        "th,td{border:1px solid #bbb;padding:4px 8px;text-align:left}",
        "td.num{text-align:right}",
        "tr.fail td.score{background:#f6d5d5}",
        "tr.pass td.score{background:#d8efd8}",
        "</style>",
        "</head>",
        "<body>",
        f"<h1>{esc(title)}</h1>",
        f"<p>{len(records)} measures.</p>",
    ]
    cols = ("Dimension", "Metric", "Kind", "Shapes", "Violations", "Denominator", "Raw violation ratio",
            "Conformance", "Applicable")
    for group in GROUPS:
        rows = [r for r in records if r.group == group]
        if not rows:
            continue
        out.append(f"<h2>{esc(group)}</h2>")
        out.append("<table>")
        out.append("<tr>" + "".join(f"<th>{c}</th>" for c in cols) + "</tr>")
        for r in rows:
            cls = "" if r.conformance_score is None else (" class=\"pass\"" if r.conformance_score == 1 else
                                                         " class=\"fail\"")
            cells = [
                f"<td>{esc(r.dimension)}</td>",
                f"<td>{esc(r.metric_id)}</td>",
                f"<td>{esc(r.measure_kind)}</td>",
                f'<td class="num">{r.shape_count}</td>',
                f'<td class="num">{r.violations}</td>',
                f'<td class="num">{fmt_number(r.denominator)}</td>',
                f'<td class="num">{fmt_number(r.raw_violation_ratio)}</td>',
                f'<td class="num score">{fmt_number(r.conformance_score)}</td>',
                f"<td>{'yes' if r.applicable else 'no'}</td>",
            ]
            out.append(f"<tr{cls}>" + "".join(cells) + "</tr>")
        out.append("</table>")
    out += ["</body>", "</html>", ""]
    return "\n".join(out)


def render_figures(records, directory: Path) -> list[Path]:
    """Bar charts of conformance per metric, and the mean per dimension."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    directory.mkdir(parents=True, exist_ok=True)
    scored = [r for r in records if r.conformance_score is not None]
    written = []
    meta = {"Software": None}

    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.28 * len(scored) + 1)))
    if scored:
        labels = [f"{r.metric_id} ({r.dimension})" for r in scored]
        values = [r.conformance_score for r in scored]
        colors = ["#4c9a4c" if v == 1 else "#c0504d" if v == 0 else "#d9a441" for v in values]
        y = list(range(len(scored)))
        ax.barh(y, values, color=colors)
        ax.set_yticks(y)
        ax.set_yticklabels(labels, fontsize=8)
        ax.invert_yaxis()
    else:
        ax.text(0.5, 0.5, "no applicable measures", ha="center", va="center", transform=ax.transAxes)
        ax.set_yticks([])
    ax.set_xlim(0, 1)
    ax.set_xlabel("conformance score")
    ax.set_title("Conformance per metric")
    fig.tight_layout()
    path = directory / "conformance-by-metric.png"
    fig.savefig(path, dpi=100, metadata=meta)
    plt.close(fig)
    written.append(path)

    dims = []
    for group in GROUPS:
        for dim in DIMENSIONS[group]:
            vals = [r.conformance_score for r in scored if r.group == group and r.dimension == dim]
            if vals:
                dims.append((dim, sum(vals) / len(vals), len(vals)))
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.35 * len(dims) + 1)))
    if dims:
        y = list(range(len(dims)))
        ax.barh(y, [d[1] for d in dims], color="#4f81bd")
        ax.set_yticks(y)
        ax.set_yticklabels([f"{d[0]} (n={d[2]})" for d in dims], fontsize=8)
        ax.invert_yaxis()
    else:
        ax.text(0.5, 0.5, "no applicable measures", ha="center", va="center", transform=ax.transAxes)
        ax.set_yticks([])
    ax.set_xlim(0, 1)
    ax.set_xlabel("mean conformance score")
    ax.set_title("Mean conformance per dimension")
    fig.tight_layout()
    path = directory / "conformance-by-dimension.png"
    fig.savefig(path, dpi=100, metadata=meta)
    plt.close(fig)
    written.append(path)
    return written


def _write(path: Path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_outputs(records, report: ValidationReport, shapes, out_dir, formats=FORMATS,
                  run_log: list[str] | None = None) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if "csv" in formats:
        p = out_dir / "measures.csv"
        _write(p, measures_csv(records))
        written.append(p)
    if "json" in formats:
        p = out_dir / "validation-report.json"
        _write(p, report_json(report, shapes))
        written.append(p)
    if "ttl" in formats:
        p = out_dir / "validation-report.ttl"
        _write(p, report_turtle(report))
        written.append(p)
    if "html" in formats:
        p = out_dir / "summary.html"
        _write(p, summary_html(records))
        written.append(p)
    if "png" in formats:
        written += render_figures(records, out_dir / "figures")
    if run_log is not None:
        p = out_dir / "run.log"
        _write(p, "".join(line + "\n" for line in run_log))
        written.append(p)
    for p in written:
        log.info("wrote %s", p)
    return written


def write_shapes(shapes, directory) -> Path:
    """All instantiated shapes as one Turtle file, for inspection."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / "shapes.ttl"
    prefixes = {"dqa": "urn:dqa:shape:"}
    _write(path, shapes_to_turtle([s.shape for s in shapes], prefixes))
    return path
