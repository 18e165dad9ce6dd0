"""rsq cover: a window of the minimal gradable covering as DOT (and optionally JSON)."""

from rsq.commands import add_quiver_argument, add_window_argument, emit, quiver_from_args
from rsq.cover import build_cover_window
from rsq.io import dumps, quiver_to_dict


def register(subparsers) -> None:
    parser = subparsers.add_parser("cover", help="materialize covering levels LO..HI")
    add_quiver_argument(parser)
    add_window_argument(parser)
    parser.add_argument("--dot", default=None, help="DOT output file (stdout when omitted)")
    parser.add_argument("-o", "--output", default=None, help="also write the window quiver as JSON")
    parser.set_defaults(handler=handle)


def handle(args, cfg) -> int:
    q = quiver_from_args(args)
    lo, hi = cfg.window
    cw = build_cover_window(q, lo, hi, args.anchor)
    emit(cw.to_dot(), cfg.outputs["dot"])
    if cfg.outputs["output"]:
        emit(dumps(quiver_to_dict(cw.quiver())), cfg.outputs["output"])
    return 0
