"""rsq simples: where S[a][n] comes from, and the irreducible map leaving S[a]."""

from rsq.commands import add_quiver_argument, emit, quiver_from_args
from rsq.cover import label
from rsq.derived_ar import connecting_profile, irreducible_to_simples, locate_simple
from rsq.errors import InputFormatError


def register(subparsers) -> None:
    parser = subparsers.add_parser("simples", help="locate S[a][n] and its irreducible maps")
    add_quiver_argument(parser)
    parser.add_argument("--vertex", required=True, help="base vertex a")
    parser.add_argument("--shift", type=int, default=0, help="shift n of S[a][n]")
    parser.add_argument("--anchor", default=None, help="base vertex placed at level 0")
    parser.add_argument("--depth", type=int, default=None, help="truncation depth for non-perfect simples")
    parser.set_defaults(handler=handle)


def handle(args, cfg) -> int:
    q = quiver_from_args(args)
    if args.vertex not in q.vertices:
        raise InputFormatError(f"Unknown vertex {args.vertex!r}.")
    x, s = locate_simple(q, args.vertex, args.shift, args.anchor)
    emit(f"S[{args.vertex}][{args.shift}] = F(I_{label(x)})[{s}] pushed down")
    emit(connecting_profile(q, args.anchor).summary())
    if q.out_arrows(args.vertex):
        emit(irreducible_to_simples(q, args.vertex, cfg.field, cfg.depth, args.anchor).summary())
    return 0
