"""rsq classify: components of the derived AR quiver that hold simple complexes."""

from rsq.commands import add_quiver_argument, emit, quiver_from_args
from rsq.derived_ar import classify_components, component_evidence


def register(subparsers) -> None:
    parser = subparsers.add_parser("classify", help="component table of the derived AR quiver")
    add_quiver_argument(parser)
    parser.add_argument("--evidence", action="store_true", help="also knit the windows behind the table")
    parser.add_argument("--steps", type=int, default=None, help="knitting step budget for --evidence")
    parser.add_argument("--depth", type=int, default=None, help="covering levels knitted for --evidence")
    parser.add_argument("--dot-prefix", default=None, help="write evidence windows to PREFIX.K.dot")
    parser.set_defaults(handler=handle)


def handle(args, cfg) -> int:
    q = quiver_from_args(args)
    q.require_connected()
    report = classify_components(q)
    emit(f"shape: {report.shape}, r_Q: {report.r}")
    emit(report.table())
    if cfg.evidence:
        for k, (description, w) in enumerate(component_evidence(q, cfg.field, cfg.steps, cfg.depth)):
            emit(f"evidence {k}: {description}")
            if args.dot_prefix:
                emit(w.to_dot(f"evidence{k}"), f"{args.dot_prefix}.{k}.dot")
    return 0
