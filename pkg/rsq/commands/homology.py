"""rsq homology: dimension vectors of the reliable homology of a complex."""

from rsq.commands import emit
from rsq.complexes import homology_dims
from rsq.cover import label
from rsq.io import dumps, load_complex, load_quiver


def register(subparsers) -> None:
    parser = subparsers.add_parser("homology", help="homology dimension vectors")
    parser.add_argument("complex", help="complex JSON file")
    parser.add_argument("--quiver", default=None, help="quiver JSON when the complex does not embed one")
    parser.add_argument("--degree", type=int, default=None, help="single degree (error when unreliable)")
    parser.set_defaults(handler=handle)


def handle(args, cfg) -> int:
    quiver = load_quiver(args.quiver) if args.quiver else None
    c = load_complex(args.complex, quiver)
    degrees = [args.degree] if args.degree is not None else list(c.degrees())
    result, unreliable = {}, []
    for n in degrees:
        if args.degree is None and not c.reliable(n):
            unreliable.append(n)
            continue
        dims = homology_dims(c, n)
        result[str(n)] = {label(v): d for v, d in dims.items() if d}
    emit(dumps({"homology": result, "unreliable": unreliable}))
    return 0
