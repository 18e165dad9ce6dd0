"""
Command-line entry point: rsq [--field F] [-v] <subcommand> ...

Exit codes: 0 success, 1 domain error, 2 malformed input, 64 usage error.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from rsq import config
from rsq.commands import analyze, ar, classify, cover, decompose, hom, homology, koszul, selfcheck, simples
from rsq.errors import InputFormatError, RsqError
from rsq.linalg import FieldSpec

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2
EXIT_USAGE = 64

COMMANDS = (analyze, cover, koszul, decompose, homology, hom, ar, simples, classify, selfcheck)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError()


# --------------------- Configuration ---------------------
@dataclass(frozen=True)
class CommandConfig:
    """Validated view of the parsed arguments shared by every subcommand."""

    subcommand: str
    field: FieldSpec
    window: Optional[Tuple[int, int]] = None
    depth: int = config.DEFAULT_DEPTH
    outputs: Dict[str, Optional[str]] = field(default_factory=dict)
    evidence: bool = False
    steps: int = config.KNIT_STEP_LIMIT

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CommandConfig":
        try:
            fld = FieldSpec.parse(args.field)
        except InputFormatError as exc:
            raise UsageError(str(exc)) from None
        window = getattr(args, "window", None)
        if window is not None and not window[0] <= 0 <= window[1]:
            raise UsageError(f"window bounds must satisfy LO <= 0 <= HI, got {window[0]}..{window[1]}")
        depth = getattr(args, "depth", None)
        depth = config.DEFAULT_DEPTH if depth is None else depth
        if depth < 1:
            raise UsageError(f"depth must be at least 1, got {depth}")
        steps = getattr(args, "steps", None)
        steps = config.KNIT_STEP_LIMIT if steps is None else steps
        if steps < 0:
            raise UsageError(f"steps must be nonnegative, got {steps}")
        outputs = {key: getattr(args, key, None) for key in ("output", "dot")}
        return cls(args.command, fld, window, depth, outputs, bool(getattr(args, "evidence", False)), steps)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rsq", description="Exact computations for radical-square-zero algebras kQ/(kQ+)^2.")
    parser.add_argument("--field", default=config.DEFAULT_FIELD, help="'q' or 'fp:P' (default: %(default)s)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def _log_level(verbose: int) -> int:
    if verbose >= 2:
        return logging.DEBUG
    if verbose == 1:
        return logging.INFO
    return getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, dispatch to the subcommand and map failures to exit codes.

    Returns:
        int: process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        cfg = CommandConfig.from_args(args)
    except UsageError as exc:
        if str(exc):
            sys.stderr.write(f"rsq: usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(level=_log_level(args.verbose), format=config.LOG_FORMAT)
    try:
        return args.handler(args, cfg)
    except InputFormatError as exc:
        sys.stderr.write(f"rsq: malformed input: {exc}\n")
        return EXIT_INPUT
    except RsqError as exc:
        sys.stderr.write(f"rsq: {exc}\n")
        return EXIT_DOMAIN
    except OSError as exc:
        sys.stderr.write(f"rsq: cannot write output: {exc}\n")
        return EXIT_INPUT


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
