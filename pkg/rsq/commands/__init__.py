"""
Subcommands of the rsq command line, one module each.

Every module exposes register(subparsers); the registered handler takes
(args, cfg) and returns an exit code. Only these modules write to stdout.
"""

import argparse
from typing import Optional, Tuple

from rsq.io import load_quiver, write_text
from rsq.quiver import Quiver


def parse_window(text: str) -> Tuple[int, int]:
    """'LO..HI' -> (LO, HI)."""
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def add_quiver_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("quiver", help="quiver JSON file")


def add_window_argument(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--window", type=parse_window, required=required, metavar="LO..HI",
                        help="covering levels to materialize")
    parser.add_argument("--anchor", default=None, help="base vertex placed at level 0")


def quiver_from_args(args: argparse.Namespace) -> Quiver:
    return load_quiver(args.quiver)


def emit(text: str, path: Optional[str] = None) -> None:
    """Write text to path, or to stdout when no path is given."""
    if path:
        write_text(path, text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")
