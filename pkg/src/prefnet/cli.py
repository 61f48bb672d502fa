"""Command-line interface.

Subcommands: evolve, simulate, measure, report, and pipeline (all four in
order). A JSON configuration file gives the full run description; the flags
--seed, --data, --svg and --out override the corresponding fields.

Exit codes: 0 success, 1 validation error, 2 IO error, 3 undefined measure
(every compared pair failed).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import pipeline
from .errors import PrefnetError, UndefinedMeasureError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_UNDEFINED_MEASURE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefnet",
        description=(
            "Evolve preference networks, simulate hashtag diffusion as noisy "
            "biased walks, and measure route-preference overlap."
        ),
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("evolve", "evolve the configured underlying networks"),
        ("simulate", "run walk ensembles on the evolved networks"),
        ("measure", "compute pair measures for imprints and data"),
        ("report", "build histograms, error bands and the KS matrix"),
        ("pipeline", "run evolve, simulate, measure and report in order"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON run configuration file")
        p.add_argument("--out", default="prefnet_out", help="output directory (default: prefnet_out)")
        p.add_argument("--seed", type=int, help="override the master seed")
        p.add_argument("--data", help="retweet CSV (hashtag,user_a,user_b,timestamp)")
        p.add_argument("--svg", action="store_true", default=None, help="emit SVG plots in the report")
    return parser


def _load_config(args: argparse.Namespace) -> pipeline.RunConfig:
    raw = None
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    return pipeline.build_run_config(
        raw, output_dir=args.out, seed=args.seed, data_path=args.data, emit_svg=args.svg
    )


COMMANDS = {
    "evolve": pipeline.cmd_evolve,
    "simulate": pipeline.cmd_simulate,
    "measure": pipeline.cmd_measure,
    "report": pipeline.cmd_report,
    "pipeline": pipeline.run_pipeline,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = _load_config(args)
        COMMANDS[args.command](cfg)
    except UndefinedMeasureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED_MEASURE
    except (PrefnetError, ValueError, IndexError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def entry() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    entry()
