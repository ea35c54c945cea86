#!/usr/bin/env python3
"""
Lab CLI - one command per invocation.

Usage:
    python -m src.cli.main indices --n 3 --alpha -2/3 --s 3 --p 3 --ptilde inf
    python -m src.cli.main heat-decay --grid 64 --box 12 --q 6 --qtilde 6
    python -m src.cli.main simulate --config runs/simulate.json --out runs

Known flags set run options; every other `--key value` pair lands in the
command's params (`--key=value` also works). A flag followed by another flag
is a boolean switch.
"""

import argparse
import json
import logging
import logging.config
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from src.cli.config import PARAMS, TOLERANCE_KEYS, parse_config
from src.cli.runner import EXIT_ERROR, run
from src.common.config import settings
from src.common.errors import ConfigError, LabError
from src.common.types import Command
from src.common.utils import safe_json_dumps

logger = logging.getLogger(__name__)


def configure_logging(level: Optional[str] = None) -> None:
    """Route library loggers to stderr; stdout carries the run summary"""
    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {"plain": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"}},
            "handlers": {
                "stderr": {"class": "logging.StreamHandler", "formatter": "plain", "stream": "ext://sys.stderr"}
            },
            "root": {"handlers": ["stderr"], "level": (level or settings.log_level).upper()},
        }
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Weighted radial-angular norms and Navier-Stokes regularity criteria",
        allow_abbrev=False,
    )
    parser.add_argument("command", nargs="?", choices=[c.value for c in Command], help="Command to run")
    parser.add_argument("--config", help="JSON run config")
    parser.add_argument("--out", help="Output directory")
    parser.add_argument("--seed", type=int, help="Random seed (default 0)")
    parser.add_argument("--jobs", type=int, help="Worker cap")
    parser.add_argument("--grid", type=int, help="Grid points per axis")
    parser.add_argument("--box", type=float, help="Box half-width L")
    parser.add_argument("--log-level", help="Logging level")
    return parser


def parse_extras(extras: Sequence[str]) -> Dict[str, Any]:
    """`--key value`, `--key=value` and bare `--flag` into a dict of strings"""
    values: Dict[str, Any] = {}
    i = 0
    while i < len(extras):
        token = extras[i]
        if not token.startswith("--") or token == "--":
            raise ConfigError(f"unexpected argument '{token}'", field_name=token)
        key, sep, value = token[2:].partition("=")
        key = key.replace("-", "_")
        if sep:
            values[key] = value
            i += 1
        elif i + 1 < len(extras) and not extras[i + 1].startswith("--"):
            values[key] = extras[i + 1]
            i += 2
        else:
            values[key] = "true"
            i += 1
    return values


def assemble(args: argparse.Namespace, extras: Sequence[str]) -> Dict[str, Any]:
    """Merge the config file (if any) with command-line overrides"""
    data: Dict[str, Any] = {}
    if args.config:
        parse_config(args.config)
        data = json.loads(Path(args.config).read_text())
    if args.command:
        if data.get("command") not in (None, args.command):
            raise ConfigError(
                f"command '{args.command}' does not match config command '{data['command']}'", field_name="command"
            )
        data["command"] = args.command
    if "command" not in data:
        raise ConfigError("no command given", field_name="command")

    grid = dict(data.get("grid", {}))
    params = dict(data.get("params", {}))
    tolerances = dict(data.get("tolerances", {}))
    param_fields = PARAMS[Command(data["command"])].model_fields
    for key, value in parse_extras(extras).items():
        if key in TOLERANCE_KEYS:
            tolerances[key] = value
        elif key == "n" and "n" not in param_fields:
            grid["n"] = value
        else:
            params[key] = value
    if args.grid is not None:
        grid["points"] = args.grid
    if args.box is not None:
        grid["half_width"] = args.box

    data.update({"grid": grid, "params": params, "tolerances": tolerances})
    for flag, key in (("out", "output_dir"), ("seed", "seed"), ("jobs", "jobs")):
        if getattr(args, flag) is not None:
            data[key] = getattr(args, flag)
    return data


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args, extras = parser.parse_known_args(argv)
    logger.debug("command-line params: %s", extras)
    configure_logging(args.log_level)

    try:
        cfg = parse_config(assemble(args, extras))
        outcome = run(cfg)
    except LabError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_ERROR
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    print(
        safe_json_dumps(
            {
                "command": outcome.command.value,
                "exit_code": outcome.exit_code,
                "artifacts": [str(p) for p in outcome.artifacts],
                **outcome.summary,
            }
        )
    )
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
