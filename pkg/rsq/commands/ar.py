"""rsq ar: knitted AR windows of a covering window, and almost split triangles."""

from rsq.ar_window import mesh_defects, shape_report
from rsq.commands import add_quiver_argument, add_window_argument, emit, quiver_from_args
from rsq.cover import build_cover_window, label
from rsq.derived_ar import ar_triangle
from rsq.errors import RsqError
from rsq.io import complex_to_dict, dumps, load_json, rep_from_dict
from rsq.reps import injective_at, knit_component


def register(subparsers) -> None:
    parser = subparsers.add_parser("ar", help="Auslander-Reiten data of a covering window")
    actions = parser.add_subparsers(dest="action", metavar="action")
    actions.required = True

    knit = actions.add_parser("knit", help="knit the window's translation quiver from its injectives")
    add_quiver_argument(knit)
    add_window_argument(knit)
    knit.add_argument("--steps", type=int, default=None, help="knitting step budget")
    knit.add_argument("--dot", default=None, help="DOT output file for the knitted window")
    knit.set_defaults(handler=handle_knit)

    triangle = actions.add_parser("triangle", help="almost split triangle ending at F(M)[s]")
    add_quiver_argument(triangle)
    triangle.add_argument("--rep", required=True, help="indecomposable window representation JSON")
    add_window_argument(triangle)
    triangle.add_argument("--shift", type=int, default=0, help="shift s of the right end")
    triangle.add_argument("-o", "--output", default=None, help="middle term as complex JSON")
    triangle.set_defaults(handler=handle_triangle)


def handle_knit(args, cfg) -> int:
    q = quiver_from_args(args)
    lo, hi = cfg.window
    cw = build_cover_window(q, lo, hi, args.anchor)
    opp = cw.quiver().opposite()
    if not opp.vertices:
        raise RsqError(f"Window [{lo}, {hi}] is empty.")
    seeds = [injective_at(opp, x, cfg.field) for x in opp.vertices]
    w = knit_component(opp, seeds, cfg.steps)
    defects = mesh_defects(w)
    emit(f"{shape_report(w)}: {len(w.vertices)} vertices, {len(w.boundary)} on the boundary, "
         f"{len(defects)} mesh defects")
    if cfg.outputs["dot"]:
        emit(w.to_dot(), cfg.outputs["dot"])
    return 0


def handle_triangle(args, cfg) -> int:
    q = quiver_from_args(args)
    lo, hi = cfg.window
    cw = build_cover_window(q, lo, hi, args.anchor)
    m = rep_from_dict(cw, load_json(args.rep), cfg.field)
    tri = ar_triangle(cw, m, args.shift)
    data = {str(n): {label(v): k for v, k in mults.items() if k} for n, mults in tri.dimension_data().items()}
    emit(dumps({
        "case": tri.case,
        "left": tri.left.name,
        "middle": [o.name for o in tri.middle],
        "right": tri.right.name,
        "middle_multiplicities": {n: d for n, d in data.items() if d},
    }))
    if cfg.outputs["output"]:
        emit(dumps(complex_to_dict(tri.middle_presentation())), cfg.outputs["output"])
    return 0
