"""``donflow run|check|compare|schema``."""
from __future__ import annotations
import argparse
import json
import logging
import os
import sys
from typing import Sequence

from ..config import OUTPUT_DIR_ENV, describe_config, resolve_output_directory
from ..exceptions import ConfigError, DonflowError
from .artifacts import ERROR_NAME, error_payload, write_json
from .checks import CheckLevel
from .commands import EXIT_CONFIG, EXIT_OK, EXIT_RUNTIME, cmd_check, cmd_compare, cmd_run

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="donflow",
        description="Numerical experiments with the Donaldson flow on the flat 4-torus.",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="More logging (repeatable)"
    )
    parser.add_argument("-q", "--quiet", action="count", default=0, help="Less logging")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, text in (
        ("run", "Integrate the flow and write diagnostics, snapshots and a report"),
        ("compare", "Cross-check the reduced evolution routes"),
    ):
        command = commands.add_parser(name, help=text, description=text)
        command.add_argument("--config", required=True, help="Configuration file")
        command.add_argument(
            "--out", default=None, help=f"Output directory (overrides {OUTPUT_DIR_ENV})"
        )

    check = commands.add_parser("check", help="Run the invariant suites")
    check.add_argument(
        "--level",
        choices=[level.value for level in CheckLevel],
        default=CheckLevel.FAST.value,
    )
    commands.add_parser("schema", help="Describe every configuration key")
    return parser


def configure_logging(verbose: int, quiet: int) -> None:
    level = logging.WARNING - 10 * verbose + 10 * quiet
    logging.basicConfig(
        level=min(max(level, logging.DEBUG), logging.CRITICAL),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _report_failure(error: DonflowError, out: str | None) -> None:
    """Print the error JSON, and write it where an output directory was requested."""
    payload = error_payload(error)
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    if getattr(error, "artifact", None) is not None:
        return
    if out is not None or os.environ.get(OUTPUT_DIR_ENV):
        # raised before the configuration could name a directory
        write_json(resolve_output_directory(None, out) / ERROR_NAME, payload)


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, dispatch, and map errors to exit statuses.

    Returns:
        int: 0 success, 1 invariant failure, 2 configuration error, 3 runtime failure.
    """
    arguments = build_parser().parse_args(argv)
    configure_logging(arguments.verbose, arguments.quiet)
    out = getattr(arguments, "out", None)
    try:
        if arguments.command == "run":
            return cmd_run(arguments.config, out)
        if arguments.command == "compare":
            return cmd_compare(arguments.config, out)
        if arguments.command == "check":
            return cmd_check(arguments.level)
        sys.stdout.write(describe_config())
        return EXIT_OK
    except ConfigError as error:
        _report_failure(error, out)
        return EXIT_CONFIG
    except DonflowError as error:
        logger.error("%s", error)
        _report_failure(error, out)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
