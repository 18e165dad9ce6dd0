"""
Derived-category layer over kQ/(kQ+)^2.

    - simple complexes S[a][n] as push-downs of Koszul images of covering injectives
    - Hom in the homotopy category with automatic truncation depth
    - irreducible maps between simple complexes, checked within a window
    - almost split triangles from module-level almost split sequences
    - connecting component profile and component classification table
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Hashable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import pandas as pd
from dask import compute, delayed

from rsq import config
from rsq.ar_window import ARWindow, shape_report
from rsq.complexes import ChainMap, HomSpace, ProjComplex, direct_sum, homotopy_equivalent
from rsq.cover import CoverWindow, build_cover_window, label
from rsq.errors import InsufficientWindowError, NotComputableError, RsqError, WindowError
from rsq.koszul import koszul_morphism, koszul_rep, pushdown, pushdown_map, shift_map
from rsq.linalg import FieldSpec
from rsq.quiver import Quiver, classify_shape, grading_period, infinite_path_profile, potentials, reachable_cycle
from rsq.reps import (QuiverRep, RepMorphism, ar_sequence_ending_at, block_rep_morphism, injective_at,
                      injective_path_map, is_indecomposable, is_isomorphic, knit_component, projective_at, projective_path_map,
                      top_generators)

logger = logging.getLogger(__name__)

Vertex = Hashable


# --------------------- Shift arithmetic ---------------------
def normalize_shift(r: int, s: int) -> Tuple[int, int]:
    """
    Split a shift as s = k r + s' with s' in Z_r.

    Returns:
        tuple: (rho power k, reduced shift s'); (0, s) when r = 0
    """
    if r == 0:
        return 0, s
    return s // r, s % r


def theta_act(r: int, provenance: Tuple[int, int], power: int = 1) -> Tuple[int, int]:
    """Shifted translation rho o [-r] on a (rho power, shift) pair."""
    k, s = provenance
    return k + power, s - power * r


def _offset(q: Quiver, a: Vertex, anchor: Optional[Vertex]) -> int:
    pot = potentials(q)
    anchor = q.vertices[0] if anchor is None else anchor
    if a not in pot or anchor not in pot:
        raise WindowError(f"Unknown vertex {a!r} or anchor {anchor!r}.")
    return pot[a] - pot[anchor]


def locate_simple(q: Quiver, a: Vertex, n: int, anchor: Optional[Vertex] = None) -> Tuple[Tuple[Vertex, int], int]:
    """
    Covering vertex x over a and shift s in Z_r with S[a][n] = F(I_x)[s] after push-down.

    x = (a, t) has t congruent to the degree d of a walk from the anchor to a,
    and t + s = n.
    """
    q.require_connected()
    r = grading_period(q)
    d = _offset(q, a, anchor)
    s = n - d if r == 0 else (n - d) % r
    return (a, n - s), s


def _longest_path_from(q: Quiver, a: Vertex) -> Optional[int]:
    """Length of the longest path starting at a; None when a reaches an oriented cycle."""
    if reachable_cycle(q, a):
        return None
    graph = nx.DiGraph(q.to_networkx())
    reach = nx.descendants(graph, a) | {a}
    return nx.dag_longest_path_length(graph.subgraph(reach))


# --------------------- Derived objects ---------------------
@dataclass(eq=False)
class DerivedObject:
    """
    F(M)[s] pushed down to the base algebra. Simple complexes carry their
    covering vertex and are re-presented on demand at any depth; objects built
    from a window representation are tied to that window.
    """

    base: Quiver
    field: FieldSpec
    shift: int
    vertex: Optional[Vertex] = None
    level: Optional[int] = None
    anchor: Optional[Vertex] = None
    window: Optional[CoverWindow] = None
    rep: Optional[QuiverRep] = None
    name: str = ""
    _cache: Dict[int, ProjComplex] = field(default_factory=dict, repr=False)

    @classmethod
    def simple(cls, q: Quiver, a: Vertex, n: int, field: FieldSpec,
               anchor: Optional[Vertex] = None) -> "DerivedObject":
        x, s = locate_simple(q, a, n, anchor)
        return cls(q, field, s, vertex=a, level=x[1], anchor=anchor, name=f"S[{a}][{n}]")

    @classmethod
    def from_rep(cls, cw: CoverWindow, m: QuiverRep, shift: int = 0, name: str = "") -> "DerivedObject":
        return cls(cw.base, m.field, shift, anchor=cw.anchor, window=cw, rep=m,
                   name=name or f"F{tuple(m.dim_vector())}[{shift}]")

    @property
    def is_simple(self) -> bool:
        return self.vertex is not None

    @property
    def degree(self) -> Optional[int]:
        """n for S[a][n]."""
        return self.level + self.shift if self.is_simple else None

    @property
    def perfect(self) -> bool:
        if self.is_simple:
            return not reachable_cycle(self.base, self.vertex)
        return not self.presentation().truncated_below

    def provenance(self) -> Tuple[object, int, int]:
        """(window representation or covering vertex, shift in Z_r, rho power absorbed)."""
        k, s = normalize_shift(grading_period(self.base), self.shift)
        source = (self.vertex, self.level) if self.is_simple else self.rep
        return source, s, k

    def same_as(self, other: "DerivedObject") -> bool:
        if self.is_simple and other.is_simple:
            return self.vertex == other.vertex and self.degree == other.degree
        return self is other

    def shifted(self, m: int) -> "DerivedObject":
        if self.is_simple:
            return DerivedObject.simple(self.base, self.vertex, self.degree + m, self.field, self.anchor)
        return replace(self, shift=self.shift + m, name=f"{self.name}[{m}]", _cache={})

    # --------------------- Presentations ---------------------
    def presentation(self, depth: Optional[int] = None) -> ProjComplex:
        """
        Radical complex over the base algebra; for non-perfect simple complexes
        the covering is cut depth levels below the top term.
        """
        depth = config.DEFAULT_DEPTH if depth is None else depth
        if not self.is_simple:
            depth = 0
        if depth in self._cache:
            return self._cache[depth]
        if self.is_simple:
            c = self._simple_presentation(depth)
        else:
            c = pushdown(self.window, koszul_rep(self.window, self.rep)).shift(self.shift)
        self._cache[depth] = c
        return c

    def _simple_presentation(self, depth: int) -> ProjComplex:
        longest = _longest_path_from(self.base, self.vertex)
        if longest is not None:
            depth = max(depth, longest)
        t = self.level
        cw = build_cover_window(self.base, min(0, t - 1), max(0, t + depth), self.anchor)
        inj = injective_at(cw.quiver().opposite(), (self.vertex, t), self.field)
        return pushdown(cw, koszul_rep(cw, inj)).shift(self.shift)

    def presentation_reaching(self, lo_target: int) -> ProjComplex:
        """A presentation whose lowest degree is at most lo_target."""
        if not self.is_simple:
            c = self.presentation()
            if c.truncated_below and c.lo > lo_target:
                raise WindowError(f"{self.name} is cut at degree {c.lo}; a wider covering window is needed.")
            return c
        return self.presentation(max(1, -lo_target - self.degree))

    def presentation_at(self, floor: int) -> ProjComplex:
        """Perfect objects in full; the others cut exactly at degree floor."""
        c = self.presentation()
        if not c.truncated_below:
            return c
        return self.presentation_reaching(floor).truncate_below(floor)

    def top_degree(self) -> int:
        if self.is_simple:
            return -self.degree
        c = self.presentation()
        return c.nonzero_degrees()[-1] if not c.is_zero else 0

    def low_degree(self) -> int:
        c = self.presentation()
        if c.truncated_below or c.is_zero:
            return self.top_degree()
        return c.nonzero_degrees()[0]

    def __repr__(self) -> str:
        return f"DerivedObject({self.name})"


def simple_complex(q: Quiver, a: Vertex, n: int, field: FieldSpec, depth: Optional[int] = None,
                   anchor: Optional[Vertex] = None) -> ProjComplex:
    """Presentation of S[a][n]."""
    return DerivedObject.simple(q, a, n, field, anchor).presentation(depth)


# --------------------- Hom ---------------------
def _start_floor(objects: Sequence[DerivedObject], depth: Optional[int]) -> int:
    depth = config.DEFAULT_DEPTH if depth is None else depth
    return min(min(o.top_degree(), o.low_degree()) for o in objects) - 1 - depth


def derived_hom(x: DerivedObject, y: DerivedObject, depth: Optional[int] = None) -> HomSpace:
    """
    Hom(x, y) in the homotopy category, deepening the truncations until the
    window suffices.

    Raises:
        InsufficientWindowError: no adequate truncation within MAX_DEPTH steps
    """
    floor = _start_floor([x, y], depth)
    for _ in range(config.MAX_DEPTH):
        try:
            return HomSpace(x.presentation_at(floor), y.presentation_at(floor - 1))
        except InsufficientWindowError as exc:
            logger.debug("Deepening Hom(%s, %s) below %s: %s", x.name, y.name, floor, exc)
            floor -= 1
    raise InsufficientWindowError(f"Hom({x.name}, {y.name}) needs more than {config.MAX_DEPTH} extra levels.")


def hom_degree_pattern(x: DerivedObject, y: DerivedObject, shifts: Sequence[int],
                       depth: Optional[int] = None) -> Dict[int, int]:
    """m -> dim Hom(x, y[m]), one dask task per shift."""
    shifts = list(shifts)

    def dim_at(m):
        return derived_hom(x, y.shifted(m), depth).dim

    tasks = [delayed(dim_at)(m) for m in shifts]
    dims = compute(*tasks, scheduler=config.SCHEDULER) if tasks else ()
    return dict(zip(shifts, dims))


@dataclass
class IrrContext:
    floor: int
    source: ProjComplex
    target: ProjComplex
    space: HomSpace
    composites: List[ChainMap]

    @property
    def composite_rank(self) -> int:
        return self.space.class_rank(self.composites)


def _irr_context(x: DerivedObject, y: DerivedObject, intermediates: Sequence[DerivedObject],
                 depth: Optional[int]) -> IrrContext:
    through = [z for z in intermediates if not z.same_as(x) and not z.same_as(y)]
    floor = _start_floor([x, y, *through], depth)
    for _ in range(config.MAX_DEPTH):
        try:
            px, py = x.presentation_at(floor), y.presentation_at(floor - 2)
            space = HomSpace(px, py)
            composites = []
            for z in through:
                pz = z.presentation_at(floor - 1)
                first, second = HomSpace(px, pz), HomSpace(pz, py)
                composites.extend(g.compose(f) for f in first.basis for g in second.basis)
            return IrrContext(floor, px, py, space, composites)
        except InsufficientWindowError as exc:
            logger.debug("Deepening irr(%s, %s) below %s: %s", x.name, y.name, floor, exc)
            floor -= 1
    raise InsufficientWindowError(f"irr({x.name}, {y.name}) needs more than {config.MAX_DEPTH} extra levels.")


def irr_dimension(x: DerivedObject, y: DerivedObject, intermediates: Sequence[DerivedObject],
                  depth: Optional[int] = None) -> int:
    """
    dim rad(x, y) minus the span of composites x -> z -> y through the given
    objects: irreducible maps within the window they describe.
    """
    ctx = _irr_context(x, y, intermediates, depth)
    rad = ctx.space.dim - (1 if x.same_as(y) else 0)
    return max(rad - ctx.composite_rank, 0)


# --------------------- Irreducible maps between simples ---------------------
@dataclass
class IrreducibleMap:
    source: DerivedObject
    targets: List[DerivedObject]
    arrows: List[Hashable]
    chain_map: ChainMap
    components: List[ChainMap]
    nonzero: bool
    component_nonzero: List[bool]
    irr_dims: List[int]
    irreducible: List[bool]
    window: Tuple[int, int]
    checked: Dict[str, int] = field(default_factory=dict)

    def summary(self) -> str:
        parts = [f"{t.name} via {a}: irr {d}{'' if ok else ' (not verified)'}"
                 for t, a, d, ok in zip(self.targets, self.arrows, self.irr_dims, self.irreducible)]
        lo, hi = self.window
        checked = ", ".join(f"{n} {kind}" for kind, n in self.checked.items())
        return (f"{self.source.name} -> " + "; ".join(parts) + f" (window degrees {lo}..{hi}"
                + (f"; checked against {checked})" if checked else ")"))


def _simple_map(q: Quiver, a: Vertex, arrows, field: FieldSpec, anchor, hi: int) -> Tuple[ChainMap, List[ChainMap]]:
    """Push-down of F(I_x -> sum of I_{x_i}) for the arrows x -> x_i over the given arrows."""
    (_, t), s = locate_simple(q, a, 0, anchor)
    cw = build_cover_window(q, min(0, t - 1), max(0, t + 1, hi), anchor)
    opp = cw.quiver().opposite()
    x = (a, t)
    parts = [injective_path_map(opp, ((arrow.id, t),), (arrow.tgt, t + 1), x, field) for arrow in arrows]
    total = block_rep_morphism([parts[0].source], [p.target for p in parts], {(i, 0): p for i, p in enumerate(parts)})

    def down(f: RepMorphism) -> ChainMap:
        return shift_map(pushdown_map(cw, koszul_morphism(cw, f)), s)

    return down(total), [down(p) for p in parts]


def _cut_to_target(f: ChainMap) -> ChainMap:
    """Cut a truncated source one degree above the target's truncation."""
    source, target = f.source, f.target
    if source.truncated_below and target.truncated_below:
        source = source.truncate_below(target.lo + 1)
    return f.between(source, target)


def _window_objects(q: Quiver, source: DerivedObject, targets: Sequence[DerivedObject],
                    field: FieldSpec, anchor) -> Tuple[List[DerivedObject], List[DerivedObject]]:
    """
    Perfect push-downs F(P_x), F(I_x) and knitted indecomposables of a window
    around the source, at the source shift and the next one. Objects
    equivalent to the source or a target are dropped.
    """
    (_, t), s = locate_simple(q, source.vertex, 0, anchor)
    cw = build_cover_window(q, min(0, t - 1), max(0, t + 2), anchor)
    opp = cw.quiver().opposite()
    injectives = [injective_at(opp, x, field) for x in opp.vertices]
    standard = injectives + [projective_at(opp, x, field) for x in opp.vertices]
    knitted_window = knit_component(opp, injectives, config.IRR_KNIT_STEPS)
    knitted = [knitted_window.payload[v.id] for v in knitted_window.vertices if v.id in knitted_window.payload]

    kept: List[QuiverRep] = []

    def keep(reps: Sequence[QuiverRep]) -> List[QuiverRep]:
        # perfect inside the covering, one per isomorphism class
        fresh = []
        for m in reps:
            if m.is_zero or any(cw.is_cut(v) for v in m.support()):
                continue
            if any(n.dims == m.dims and is_isomorphic(n, m) for n in kept):
                continue
            kept.append(m)
            fresh.append(m)
        return fresh

    ends = [o.presentation() for o in (source, *targets) if o.perfect]

    def objects(reps: Sequence[QuiverRep], kind: str) -> List[DerivedObject]:
        out = []
        for k, m in enumerate(reps):
            for shift in (s, s + 1):
                z = DerivedObject.from_rep(cw, m, shift, name=f"{kind}{k}[{shift}]")
                if not any(homotopy_equivalent(z.presentation(), e) for e in ends):
                    out.append(z)
        return out

    return objects(keep(standard), "F(P/I)"), objects(keep(knitted), "F(knit)")


def irreducible_to_simples(q: Quiver, a: Vertex, field: FieldSpec, depth: Optional[int] = None,
                           anchor: Optional[Vertex] = None) -> IrreducibleMap:
    """
    The map S[a] -> sum over arrows a -> a_i of S[a_i][1] on (truncated)
    projective resolutions, checked nonzero up to homotopy and not a
    composite of radical maps through the simple complexes of degree 0 or 1,
    the perfect push-downs F(P_x), F(I_x) of a window around a and the
    indecomposables knitted in that window.

    Raises:
        RsqError: a is a sink
    """
    out = list(q.out_arrows(a))
    if not out:
        raise RsqError(f"{a!r} has no outgoing arrows.")
    depth = max(config.DEFAULT_DEPTH if depth is None else depth, 2)
    source = DerivedObject.simple(q, a, 0, field, anchor)
    targets = [DerivedObject.simple(q, arrow.tgt, 1, field, anchor) for arrow in out]
    simples = [DerivedObject.simple(q, b, m, field, anchor) for m in (0, 1) for b in q.vertices]
    standard, knitted = _window_objects(q, source, targets, field, anchor)
    checked = {"simple complexes": len(simples), "window F(P_x)/F(I_x)": len(standard),
               "knitted window objects": len(knitted)}
    (_, t), s = locate_simple(q, a, 0, anchor)

    contexts = [_irr_context(source, target, simples + standard + knitted, depth) for target in targets]
    floor = min(ctx.floor for ctx in contexts)
    reach = max((_longest_path_from(q, arrow.tgt) or 0) for arrow in out)
    hi = max(t + 1 + depth, 2 - floor - s, t + 1 + reach)
    total, components = _simple_map(q, a, out, field, anchor, hi)
    total = _cut_to_target(total)
    nonzero = not HomSpace(total.source, total.target).is_null_homotopic(total)

    component_nonzero, irr_dims, irreducible = [], [], []
    for g, ctx in zip(components, contexts):
        cut = _cut_to_target(g)
        component_nonzero.append(not HomSpace(cut.source, cut.target).is_null_homotopic(cut))
        base_rank = ctx.composite_rank
        irr_dims.append(max(ctx.space.dim - base_rank, 0))
        aligned = g.between(ctx.source, ctx.target)
        irreducible.append(ctx.space.class_rank(ctx.composites + [aligned]) > base_rank)
    logger.info("Irreducible map from %s checked against %s", source.name, checked)
    return IrreducibleMap(source, targets, [arrow.id for arrow in out], total, components, nonzero,
                          component_nonzero, irr_dims, irreducible, (floor, total.source.hi), checked)


# --------------------- Almost split triangles ---------------------
@dataclass
class ARTriangle:
    left: DerivedObject
    middle: List[DerivedObject]
    right: DerivedObject
    maps: List[ChainMap]
    case: str

    def middle_presentation(self) -> ProjComplex:
        return direct_sum([o.presentation() for o in self.middle])

    def dimension_data(self) -> Dict[int, Dict[Vertex, int]]:
        """Degree -> base vertex -> multiplicity of the middle term."""
        return self.middle_presentation().multiplicities()


def _derived_map(cw: CoverWindow, f: RepMorphism, shift: int) -> ChainMap:
    return shift_map(pushdown_map(cw, koszul_morphism(cw, f)), shift)


def _require_inside(cw: CoverWindow, reps: Sequence[QuiverRep], what: str) -> None:
    for m in reps:
        cut = [v for v in m.support() if cw.is_cut(v)]
        if cut:
            raise NotComputableError(
                f"{what} reaches {label(cut[0])}, which has covering neighbors outside the window; widen the window."
            )


def ar_triangle(cw: CoverWindow, m: QuiverRep, shift: int = 0) -> ARTriangle:
    """
    Almost split triangle ending at F(M)[shift] for an indecomposable finite
    dimensional window representation M.

    A non-projective M gives the push-down of the almost split sequence
    ending at M. For M = P_x the triangle is
    F(I_x)[s-1] -> F(I_x / soc)[s-1] + F(rad P_x)[s] -> F(P_x)[s]; its
    middle term is returned summand by summand, with the maps leaving the
    left end onto the injective summands and the maps from the radical
    summands into the right end.

    Raises:
        NotComputableError: M, its almost split sequence or F(I_x) reaches a window
            vertex whose covering neighbors are cut off
        RsqError: M is decomposable
    """
    _require_inside(cw, [m], "The representation")
    if koszul_rep(cw, m).truncated_below:
        raise NotComputableError("Koszul image is not perfect inside the window; the triangle cannot be materialized.")
    if not is_indecomposable(m):
        raise RsqError("Almost split triangles end at indecomposable objects.")
    right = DerivedObject.from_rep(cw, m, shift)
    seq = ar_sequence_ending_at(m)
    if seq is not None:
        _require_inside(cw, [seq.left, seq.middle], "The almost split sequence")
        left = DerivedObject.from_rep(cw, seq.left, shift)
        middle = DerivedObject.from_rep(cw, seq.middle, shift)
        maps = [_derived_map(cw, seq.inclusion, shift), _derived_map(cw, seq.projection, shift)]
        return ARTriangle(left, [middle], right, maps, "sequence")

    F = m.field
    x = top_generators(m)[0][0]
    window_quiver = cw.quiver()
    opp = window_quiver.opposite()
    inj = injective_at(opp, x, F)
    if koszul_rep(cw, inj).truncated_below:
        raise NotComputableError(f"F(I_{label(x)}) leaves the window; widen it above level {x[1]}.")
    left = DerivedObject.from_rep(cw, inj, shift - 1, name=f"F(I_{label(x)})[{shift - 1}]")
    middle, maps = [], []
    for arrow in window_quiver.out_arrows(x):
        xi = arrow.tgt
        middle.append(DerivedObject.from_rep(cw, injective_at(opp, xi, F), shift - 1,
                                             name=f"F(I_{label(xi)})[{shift - 1}]"))
        maps.append(_derived_map(cw, injective_path_map(opp, (arrow.id,), xi, x, F), shift - 1))
    for arrow in window_quiver.in_arrows(x):
        y = arrow.src
        middle.append(DerivedObject.from_rep(cw, projective_at(opp, y, F), shift,
                                             name=f"F(P_{label(y)})[{shift}]"))
        maps.append(_derived_map(cw, projective_path_map(opp, (arrow.id,), x, y, F), shift))
    return ARTriangle(left, middle, right, maps, "projective")


# --------------------- Components ---------------------
@dataclass(frozen=True)
class ConnectingProfile:
    r: int
    gradable: bool
    section: Tuple[str, ...]
    membership: str
    clause: str

    def summary(self) -> str:
        return (f"r_Q: {self.r}, simple complexes S[b][n] with {self.membership} form a section "
                f"({', '.join(self.section)}); {self.clause}")


def connecting_profile(q: Quiver, anchor: Optional[Vertex] = None) -> ConnectingProfile:
    q.require_connected()
    r = grading_period(q)
    section = tuple(f"{b}@{_offset(q, b, anchor)}" for b in q.vertices)
    membership = "n = d_b" if r == 0 else f"n = d_b (mod {r})"
    profile = infinite_path_profile(q)
    if not profile.has_infinite:
        clause = "shape ZQ~ (no infinite path)"
    elif not profile.has_right_infinite:
        clause = "left-stable, perfect complexes only (no right infinite path)"
    else:
        clause = "contains a left-most section of non-perfect complexes"
    return ConnectingProfile(r, r == 0, section, membership, clause)


@dataclass(frozen=True)
class ComponentRow:
    shape: str
    count: Union[int, str]
    simples: bool
    perfect_only: bool


@dataclass
class ComponentReport:
    shape: str
    r: int
    rows: List[ComponentRow]

    @property
    def is_infinite(self) -> bool:
        return any(row.count == "infinite" for row in self.rows)

    def table(self) -> str:
        frame = pd.DataFrame(
            [(row.shape, str(row.count), "yes" if row.simples else "no", "yes" if row.perfect_only else "no")
             for row in self.rows],
            columns=["component", "count", "simple complexes", "perfect only"],
        )
        return frame.to_string(index=False)


def classify_components(q: Quiver) -> ComponentReport:
    """Shapes and numbers of components of the derived AR quiver holding simple complexes."""
    shape = classify_shape(q)
    r = grading_period(q)
    if shape.is_dynkin:
        rows = [ComponentRow(f"Z{shape.kind}{shape.n}", 1, True, True)]
    elif shape.kind == "TildeA" and shape.is_oriented_cycle:
        n = shape.n
        rows = [ComponentRow("ZA_inf", n, False, True), ComponentRow("DoubleInfinitePath", n, True, False)]
    elif shape.kind == "TildeA" and 0 < r < shape.n:
        rows = [ComponentRow("ZA_inf", 2 * r, False, True), ComponentRow("ZQ~", r, True, True)]
    else:
        rows = [ComponentRow("various", "infinite", True, not infinite_path_profile(q).has_infinite)]
    return ComponentReport(str(shape), r, rows)


def _simple_chain_window(q: Quiver, steps: int, start: Vertex) -> ARWindow:
    """Simple complexes S[b][m] reachable from S[start][0] along irreducible maps S[b][m] -> S[c][m+1]."""
    w = ARWindow()
    ids: Dict[Tuple[Vertex, int], int] = {}
    frontier = [start]
    ids[(start, 0)] = w.add_vertex(f"S[{start}][0]", {start: 1}, perfect=not reachable_cycle(q, start),
                                   simple_complex=True)
    for m in range(steps):
        nxt = []
        for b in frontier:
            for arrow in q.out_arrows(b):
                key = (arrow.tgt, m + 1)
                if key not in ids:
                    ids[key] = w.add_vertex(f"S[{arrow.tgt}][{m + 1}]", {arrow.tgt: 1},
                                            perfect=not reachable_cycle(q, arrow.tgt), simple_complex=True)
                    nxt.append(arrow.tgt)
                w.add_arrow(ids[(b, m)], ids[key])
        frontier = sorted(set(nxt))
    last = {v for (_, m), v in ids.items() if m == steps}
    w.boundary = last | {ids[(start, 0)]}
    return w


def component_evidence(q: Quiver, field: FieldSpec, steps: Optional[int] = None,
                       depth: Optional[int] = None) -> List[Tuple[str, ARWindow]]:
    """
    Knitted windows backing the classification: the translation quiver of a
    covering window (regular and preinjective parts of the perfect complexes)
    and, when simples are non-perfect, the chain of simple complexes.
    """
    steps = config.KNIT_STEP_LIMIT if steps is None else steps
    depth = config.DEFAULT_DEPTH if depth is None else depth
    cw = build_cover_window(q, 0, depth)
    opp = cw.quiver().opposite()
    seeds = [injective_at(opp, x, field) for x in opp.vertices]
    knitted = knit_component(opp, seeds, steps)
    evidence = [(f"covering window [0, {depth}]: {shape_report(knitted)}", knitted)]
    if infinite_path_profile(q).has_infinite:
        chain = _simple_chain_window(q, depth, q.vertices[0])
        evidence.append((f"simple complexes from S[{q.vertices[0]}][0]: {shape_report(chain)}", chain))
    return evidence
