"""Command-line entry point: ``shacl-dqa --data graph.ttl [...]``.

Exit status is 0 on success, 1 for bad arguments or unusable input files,
and 2 for anything unexpected.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .config import Config, ConfigError, load_config
from .instantiator import BindingError
from .outputs import FORMATS, write_outputs, write_shapes
from .pipeline import InputError, Inputs, run
from .shapes.catalog import manifest_json

log = logging.getLogger("shacl_dqa")

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; ours is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="shacl-dqa",
        description="Assess the quality of an RDF knowledge graph with SHACL-core shapes "
                    "instantiated from a built-in template catalog.",
    )
    p.add_argument("--data", metavar="FILE", help="data graph (Turtle or N-Triples); required")
    p.add_argument("--ontology", metavar="FILE", action="append", default=[],
                   help="ontology graph; repeatable")
    p.add_argument("--vocab", metavar="FILE", action="append", default=[],
                   help="vocabulary graph; repeatable")
    p.add_argument("--metadata", metavar="FILE",
                   help="VoID or DCAT description of the dataset (detected among the other inputs if omitted)")
    p.add_argument("--config", metavar="FILE", help="JSON configuration file")
    p.add_argument("--base-iri", metavar="IRI", help="base IRI for resolving relative references")
    p.add_argument("--out", metavar="DIR", help="output directory (default: $DQA_OUT or ./dqa-out)")
    p.add_argument("--format", default=",".join(FORMATS),
                   help=f"comma-separated outputs among {','.join(FORMATS)} (default: all)")
    p.add_argument("--emit-shapes", metavar="DIR", help="also write the instantiated shapes as Turtle")
    p.add_argument("--log-level", default="WARNING",
                   choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], type=str.upper)
    p.add_argument("--list-templates", action="store_true",
                   help="print the template catalog as JSON and exit")
    return p


def _formats(text: str) -> tuple:
    items = tuple(dict.fromkeys(f.strip().lower() for f in text.split(",") if f.strip()))
    bad = [f for f in items if f not in FORMATS]
    if bad or not items:
        raise UsageError(f"--format: unknown format(s) {', '.join(bad) or '(none given)'}; "
                         f"choose from {','.join(FORMATS)}")
    return items


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.list_templates:
            sys.stdout.write(manifest_json())
            return EXIT_OK
        if not args.data:
            parser.print_usage(sys.stderr)
            raise UsageError("the --data argument is required")
        formats = _formats(args.format)
    except UsageError as exc:
        print(f"shacl-dqa: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return exc.code or EXIT_OK

    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")
    out_dir = Path(args.out or os.environ.get("DQA_OUT") or "dqa-out")
    try:
        cfg = load_config(args.config) if args.config else Config()
        inputs = Inputs(
            data=Path(args.data),
            ontologies=[Path(p) for p in args.ontology],
            vocabs=[Path(p) for p in args.vocab],
            metadata=Path(args.metadata) if args.metadata else None,
            base_iri=args.base_iri,
        )
        result = run(inputs, cfg)
        write_outputs(result.records, result.report, result.shapes, out_dir, formats,
                      run_log=result.log_lines())
        if args.emit_shapes:
            write_shapes(result.shapes, args.emit_shapes)
    except (InputError, ConfigError, BindingError) as exc:
        print(f"shacl-dqa: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"shacl-dqa: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL

    n_fail = sum(1 for r in result.records if r.applicable and r.conformance_score < 1)
    print(f"{len(result.records)} measures ({n_fail} below 1.0), "
          f"{len(result.report.results)} violations; written to {out_dir}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
