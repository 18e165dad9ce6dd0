"""rsq hom: dimensions of Hom(X, Y[m]) in the homotopy category."""

from rsq.commands import emit
from rsq.complexes import hom_homotopy
from rsq.io import dumps, load_complex, load_quiver


def register(subparsers) -> None:
    parser = subparsers.add_parser("hom", help="dim Hom(X, Y[m]) up to homotopy")
    parser.add_argument("source", help="complex JSON file for X")
    parser.add_argument("target", help="complex JSON file for Y")
    parser.add_argument("--quiver", default=None, help="quiver JSON when the complexes do not embed one")
    parser.add_argument("--shift", type=int, action="append", default=None,
                        help="shift m of the target (repeatable, default 0)")
    parser.set_defaults(handler=handle)


def handle(args, cfg) -> int:
    quiver = load_quiver(args.quiver) if args.quiver else None
    x = load_complex(args.source, quiver)
    y = load_complex(args.target, quiver)
    result = {}
    for m in args.shift or [0]:
        hom = hom_homotopy(x, y.shift(m))
        result[str(m)] = hom.dim
    emit(dumps({"dim": result}))
    return 0
