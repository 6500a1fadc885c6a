"""
Command-line entry point.

    circlelab classify --config configs/classify_rotation.json --seed 3 -v

Exit status is 0 on success, 1 on a domain error and 2 on a config error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from colorama import Fore, Style, just_fix_windows_console

from circlelab.config import ConfigParser
from circlelab.engine import Engine
from circlelab.exceptions import ConfigError, DomainError
from circlelab.experiment_registry import DEFAULT_EXPERIMENTS
from circlelab.version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_CONFIG_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlelab",
        description="Experiments on group actions on the circle.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for cls in DEFAULT_EXPERIMENTS:
        sub = subparsers.add_parser(cls.key, help=(cls.__doc__ or "").strip().splitlines()[0])
        sub.add_argument("--config", required=True, type=Path, help="JSON config file")
        sub.add_argument("--seed", type=int, default=None, help="override rng_seed")
        sub.add_argument("--out", default=None, help="override the report path")
        sub.add_argument("--workers", type=int, default=None, help="override the worker count")
        sub.add_argument("-v", "--verbose", action="count", default=0,
                         help="-v for info, -vv for debug logging")
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def error_record(error: Exception) -> dict[str, Any]:
    if isinstance(error, DomainError):
        return error.to_record()
    return {
        "error": type(error).__name__,
        "message": str(error),
        "key": getattr(error, "key", None),
        "path": getattr(error, "path", None),
    }


def _report_error(error: Exception, report_path: Optional[str]) -> None:
    record = json.loads(json.dumps(error_record(error), default=str))
    if report_path is not None:
        try:
            Engine.write_report(record, report_path)
        except OSError as e:
            logger.warning("Could not write the error record to %s: %s", report_path, e)
    sys.stderr.write(f"{Fore.RED}{json.dumps(record, sort_keys=True)}"
                     f"{Style.RESET_ALL}\n")


def run(command: str, config_path: Path, seed: Optional[int] = None, out: Optional[str] = None,
        workers: Optional[int] = None) -> int:
    """Run one subcommand end to end and return the exit status."""
    report_path = out
    try:
        raw = ConfigParser().load(config_path)
        report_path = out or raw.output.report
        if raw.experiment != command:
            raise ConfigError(f"config selects '{raw.experiment}' but the command is '{command}'",
                              key="experiment", path=str(config_path))
        engine = Engine()
        config = engine.initialize(raw, seed=seed, out=out, workers=workers)
        output = engine.run()
        report = engine.build_report(output)
        Engine.write_report(report, config.output.report)
        if config.output.csv and output.tables:
            Engine.write_tables(output.tables, config.output.csv)
    except ConfigError as e:
        _report_error(e, report_path)
        return EXIT_CONFIG_ERROR
    except DomainError as e:
        _report_error(e, report_path)
        return EXIT_DOMAIN_ERROR
    logger.info("Report written to %s.", config.output.report)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    just_fix_windows_console()
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    return run(args.command, args.config, args.seed, args.out, args.workers)


if __name__ == "__main__":
    sys.exit(main())
