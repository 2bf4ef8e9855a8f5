"""
Command-line entry point for the wall gadget toolkit.

Exit codes: 0 verified or witness found, 1 refuted or none, 2 input error,
3 budget exceeded. Diagnostics go to standard error.
"""
import argparse
import logging
import os
import sys
from typing import List, Optional

from config_loader import DEFAULT_CONFIG_PATH, default_config, load_config
from handlers.command_handlers import CommandHandlerService
from handlers.error_handler import EXIT_INPUT, ErrorHandler
from logging_setup import setup_logging
from models.report import LemmaId, TrialMode

logger = logging.getLogger(__name__)

FAMILIES = ("grid", "wall", "condensed-wall", "brick-wall", "gstar", "figure-host")


def _budget_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=None, help="node budget (default from config)")


def _trial_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trial", choices=[m.value for m in TrialMode], default=None)
    p.add_argument("--seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wall-gadgets", description="Condensed wall gadgets and their lemma checks")
    parser.add_argument("--config", default=None, help=f"configuration file (default {DEFAULT_CONFIG_PATH})")
    parser.add_argument("--log-level", default=None, help="override app.log_level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph family as a GraphDocument")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--size", type=int, default=2)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--columns", type=int, default=None)
    p.add_argument("--no-jumps", action="store_true")
    p.add_argument("--id", default=None, help="brick wall id, B1..B10 or B1sq")
    p.add_argument("--figure", default=None, help="figure template for figure-host")
    p.add_argument("--copies", type=int, default=1)
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--cert-out", default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("embed", help="search a topological minor")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", required=True, help="library id or GraphDocument path")
    p.add_argument("--forbid", action="append", help="host vertex the embedding must avoid")
    p.add_argument("--pin", action="append", help="pattern=host branch vertex pin")
    p.add_argument("--cert-out", default=None)
    _budget_arg(p)

    p = sub.add_parser("linkage", help="search an (a-b, c-d) linkage")
    p.add_argument("--host", required=True)
    p.add_argument("--two", action="store_true", help="two edge-disjoint linkages")
    p.add_argument("--cert-out", default=None)
    _budget_arg(p)

    p = sub.add_parser("pack", help="search k edge-disjoint embeddings")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--cert-out", default=None)
    _budget_arg(p)

    p = sub.add_parser("verify", help="re-check a certificate against its host")
    p.add_argument("--host", required=True)
    p.add_argument("--cert", required=True)
    p.add_argument("--pattern", default=None)

    p = sub.add_parser("verify-lemma", help="run one lemma check")
    p.add_argument("--id", required=True, choices=[x.value for x in LemmaId])
    p.add_argument("--size", "-r", type=int, default=None, dest="size")
    p.add_argument("-n", type=int, default=None)
    p.add_argument("--out", default=None, help="directory for the report JSON")
    _trial_args(p)
    _budget_arg(p)

    p = sub.add_parser("run-all", help="run every lemma check")
    p.add_argument("--max-r", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None, help="directory for reports and summary.json")
    _trial_args(p)
    _budget_arg(p)

    p = sub.add_parser("export-dot", help="DOT text for a GraphDocument")
    p.add_argument("--graph", required=True)
    p.add_argument("--overlay", action="append", help="certificate JSON to colour")
    p.add_argument("--out", default=None)
    return parser


def _config(args) -> dict:
    if args.config:
        config = load_config(args.config)
    elif os.path.exists(DEFAULT_CONFIG_PATH):
        config = load_config(DEFAULT_CONFIG_PATH)
    else:
        config = default_config()
    if args.log_level:
        config["app"]["log_level"] = args.log_level.upper()
    return config


def cli(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else 0

    errors = ErrorHandler()
    try:
        config = _config(args)
        setup_logging(config)
        handlers = CommandHandlerService(config)
        command = args.command.replace("-", "_")
        logger.debug(f"running {args.command}")
        return getattr(handlers, command)(args)
    except Exception as e:
        return errors.handle(e)


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
