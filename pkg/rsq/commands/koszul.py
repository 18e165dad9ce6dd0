"""rsq koszul: Koszul image F(M) of a window representation, optionally pushed down."""

from rsq.commands import add_quiver_argument, add_window_argument, emit, quiver_from_args
from rsq.cover import build_cover_window, parse_label
from rsq.errors import InputFormatError, WindowError
from rsq.io import complex_to_dict, dumps, load_json, rep_from_dict
from rsq.koszul import koszul_rep, pushdown


def register(subparsers) -> None:
    parser = subparsers.add_parser("koszul", help="Koszul image of a covering representation")
    add_quiver_argument(parser)
    parser.add_argument("--rep", required=True, help="representation JSON (keys 'vertex@level')")
    add_window_argument(parser, required=False)
    parser.add_argument("--pushdown", action="store_true", help="relabel onto the base quiver")
    parser.add_argument("--depth", type=int, default=None, help="levels kept above the representation")
    parser.add_argument("-o", "--output", default=None, help="complex JSON output (stdout when omitted)")
    parser.set_defaults(handler=handle)


def _levels(data) -> list:
    dims = data.get("dims")
    if not isinstance(dims, dict):
        raise InputFormatError("representation: missing 'dims' object.")
    try:
        return sorted({parse_label(text)[1] for text, d in dims.items() if d})
    except WindowError as exc:
        raise InputFormatError(str(exc)) from None


def handle(args, cfg) -> int:
    q = quiver_from_args(args)
    data = load_json(args.rep)
    if cfg.window is not None:
        lo, hi = cfg.window
    else:
        levels = _levels(data) or [0]
        lo, hi = min(0, levels[0]), max(0, levels[-1] + cfg.depth)
    cw = build_cover_window(q, lo, hi, args.anchor)
    m = rep_from_dict(cw, data, cfg.field)
    c = koszul_rep(cw, m)
    if args.pushdown:
        c = pushdown(cw, c)
    emit(dumps(complex_to_dict(c)), cfg.outputs["output"])
    return 0
