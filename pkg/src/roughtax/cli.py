"""Command line interface.

    roughtax run --input table.csv --output-dir out/
    roughtax characterize --input table.csv --delta-kappa 1
    roughtax similarity   --input table.csv --measure jaccard
    roughtax group        --input table.csv --theta-g 0.8
    roughtax induce       --input table.csv --delta-alpha 0.75
    roughtax example      > headache.csv

Flags mirror :class:`~roughtax.pipeline.PipelineConfig` fields.  ``--config``
names a JSON file with the same keys (snake_case); flags win over it.
"""

from __future__ import annotations

import argparse
import logging
import sys
from importlib import resources

from . import __version__
from .errors import RoughTaxError
from .pipeline import (
    EMIT_KINDS,
    PipelineConfig,
    analyse,
    group_subrules_doc,
    load_table,
    run_pipeline,
)
from .serialize import (
    characterizations_doc,
    dumps,
    matrix_json,
    rules_doc,
    taxonomy_json,
    trace_json,
)
from .similarity import Measure


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON file with PipelineConfig keys")
    p.add_argument("--input", help="decision table CSV (header row; optional 'id' column)")
    p.add_argument("--class-column", help="decision attribute (default: last column)")
    p.add_argument("--delta-kappa", help="coverage threshold for characterization sets (default 1)")
    p.add_argument("--theta-g", help="grouping threshold on the representative similarity (default 0)")
    p.add_argument("--measure", choices=[m.value for m in Measure],
                   help="similarity used for grouping (default interval)")
    p.add_argument("--single-tree", action=argparse.BooleanOptionalAction, default=None,
                   help="join leftover roots into one tree (default on)")
    p.add_argument("--tie-break", choices=["order", "name"], help="tie-break between equal pairs")
    p.add_argument("--delta-alpha", help="rule accuracy threshold (default 0.75)")
    p.add_argument("--rule-delta-kappa", help="rule coverage threshold (default 0.5)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roughtax",
                                     description="Mine a diagnostic taxonomy and multi-stage rules "
                                                 "from a decision table.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("characterize", "print characterization sets as JSON"),
        ("similarity", "print the initial pairwise similarity matrix as JSON"),
        ("group", "print the taxonomy and grouping trace as JSON"),
        ("induce", "print the induced rules as JSON"),
        ("run", "run the whole pipeline and write artifacts to --output-dir"),
    ]:
        p = sub.add_parser(name, help=help_text)
        _common(p)
        if name == "run":
            p.add_argument("--output-dir", help="directory for the artifacts")
            p.add_argument("--emit", help=f"comma-separated subset of {','.join(EMIT_KINDS)}")
    sub.add_parser("example", help="print the bundled worked-example table as CSV")
    return parser


def _config(args) -> PipelineConfig:
    return PipelineConfig.from_sources(
        args.config,
        input=args.input,
        class_column=args.class_column,
        delta_kappa=args.delta_kappa,
        theta_g=args.theta_g,
        measure=args.measure,
        single_tree=args.single_tree,
        tie_break=args.tie_break,
        delta_alpha=args.delta_alpha,
        rule_delta_kappa=args.rule_delta_kappa,
        output_dir=getattr(args, "output_dir", None),
        emit=getattr(args, "emit", None),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR,
                        format="%(levelname)s: %(message)s")
    out = sys.stdout
    try:
        if args.command == "example":
            out.write(resources.files("roughtax.data").joinpath("headache.csv").read_text("utf-8"))
            return 0
        config = _config(args)
        if args.command == "run":
            written = run_pipeline(config)
            for name in written:
                print(written[name], file=out)
            return 0
        t = load_table(config)
        if args.command == "characterize":
            from .characterize import characterize_all
            doc = characterizations_doc(characterize_all(t, config.delta_kappa), config.delta_kappa)
        elif args.command == "similarity":
            from .grouping import group
            _, trace = group(t, config.grouping())
            doc = matrix_json(trace.matrices[0])
        else:
            result = analyse(t, config)
            if args.command == "group":
                doc = {"taxonomy": taxonomy_json(result.roots, config.delta_kappa),
                       "trace": trace_json(result.trace)}
            else:
                doc = rules_doc(result.rules, result.retained, group_subrules_doc(result.roots))
        out.write(dumps(doc))
        return 0
    except RoughTaxError as exc:
        print(f"roughtax: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
