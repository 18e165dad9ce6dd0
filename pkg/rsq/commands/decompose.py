"""rsq decompose: split a complex along the connected components of its support quiver."""

import os

from rsq.commands import emit
from rsq.complexes import decompose_by_support, radicalize
from rsq.io import complex_to_dict, dumps, load_complex, load_quiver


def register(subparsers) -> None:
    parser = subparsers.add_parser("decompose", help="support decomposition of a complex")
    parser.add_argument("complex", help="complex JSON file")
    parser.add_argument("--quiver", default=None, help="quiver JSON when the complex does not embed one")
    parser.add_argument("--radicalize", action="store_true", help="cancel contractible summands first")
    parser.add_argument("-o", "--output", default=None, help="output prefix (default: input path without .json)")
    parser.set_defaults(handler=handle)


def handle(args, cfg) -> int:
    quiver = load_quiver(args.quiver) if args.quiver else None
    c = load_complex(args.complex, quiver)
    if args.radicalize:
        c = radicalize(c)
    parts = decompose_by_support(c)
    prefix = cfg.outputs["output"] or os.path.splitext(args.complex)[0]
    for k, part in enumerate(parts):
        emit(dumps(complex_to_dict(part)), f"{prefix}.{k}.json")
    emit(f"{len(parts)} summands")
    return 0
