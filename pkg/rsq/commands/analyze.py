"""rsq analyze: gradability, grading period and shape of a quiver."""

from rsq.commands import add_quiver_argument, emit, quiver_from_args
from rsq.quiver import classify_shape, grading_period, infinite_path_profile


def register(subparsers) -> None:
    parser = subparsers.add_parser("analyze", help="grading period r_Q and underlying shape")
    add_quiver_argument(parser)
    parser.add_argument("--paths", action="store_true", help="also report infinite paths")
    parser.set_defaults(handler=handle)


def handle(args, cfg) -> int:
    q = quiver_from_args(args)
    q.require_connected()
    r = grading_period(q)
    line = f"gradable: {'yes' if r == 0 else 'no'}, r_Q: {r}, shape: {classify_shape(q)}"
    if args.paths:
        profile = infinite_path_profile(q)
        line += f", infinite paths: {'yes' if profile.has_infinite else 'no'}"
    emit(line)
    return 0
