"""
Finite fragments of translation quivers and their shape recognition.

An ARWindow is what knitting (or a theorem-driven construction) leaves
behind: vertices with dimension data and flags, arrows with multiplicities,
a partial translation tau, and the frontier of vertices whose meshes were
never completed. Shape reports only speak about the window.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Set, Tuple

import networkx as nx

from rsq.errors import RsqError
from rsq.quiver import Quiver, classify_shape

logger = logging.getLogger(__name__)


# --------------------- Data Model ---------------------
@dataclass
class ARVertex:
    id: int
    label: str
    dims: Optional[Dict[Hashable, int]] = None
    projective: bool = False
    injective: bool = False
    perfect: bool = True
    simple_complex: bool = False

    @property
    def total_dim(self) -> Optional[int]:
        return None if self.dims is None else sum(self.dims.values())


@dataclass
class ARWindow:
    vertices: List[ARVertex] = field(default_factory=list)
    arrows: Dict[Tuple[int, int], int] = field(default_factory=dict)
    tau: Dict[int, int] = field(default_factory=dict)
    boundary: Set[int] = field(default_factory=set)
    payload: Dict[int, object] = field(default_factory=dict, repr=False)

    # --------------------- Builders ---------------------
    def add_vertex(self, label: str, dims=None, payload=None, **flags) -> int:
        v = ARVertex(len(self.vertices), label, dict(dims) if dims is not None else None, **flags)
        self.vertices.append(v)
        if payload is not None:
            self.payload[v.id] = payload
        return v.id

    def add_arrow(self, src: int, tgt: int, mult: int = 1) -> None:
        self.arrows[(src, tgt)] = self.arrows.get((src, tgt), 0) + mult

    def set_tau(self, v: int, tv: int) -> None:
        if v in self.tau and self.tau[v] != tv:
            raise RsqError(f"tau({self.vertices[v].label}) already set.")
        if any(u != v and w == tv for u, w in self.tau.items()):
            raise RsqError(f"{self.vertices[tv].label} already has a tau-preimage.")
        self.tau[v] = tv

    # --------------------- Queries ---------------------
    def predecessors(self, v: int) -> List[Tuple[int, int]]:
        return sorted((s, m) for (s, t), m in self.arrows.items() if t == v)

    def successors(self, v: int) -> List[Tuple[int, int]]:
        return sorted((t, m) for (s, t), m in self.arrows.items() if s == v)

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(v.id for v in self.vertices)
        for (s, t), m in sorted(self.arrows.items()):
            for k in range(m):
                g.add_edge(s, t, key=k)
        return g

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and nx.is_weakly_connected(self.graph())

    @property
    def is_complete(self) -> bool:
        return not self.boundary

    def tau_inverse(self) -> Dict[int, int]:
        return {tv: v for v, tv in self.tau.items()}

    def orbits(self) -> List[List[int]]:
        """tau-orbits, each listed from left to right."""
        inv = self.tau_inverse()
        seen: Set[int] = set()
        result = []
        for v in self.vertices:
            if v.id in seen:
                continue
            orbit = [v.id]
            seen.add(v.id)
            u = v.id
            while u in self.tau and self.tau[u] not in seen:
                u = self.tau[u]
                orbit.insert(0, u)
                seen.add(u)
            u = v.id
            while u in inv and inv[u] not in seen:
                u = inv[u]
                orbit.append(u)
                seen.add(u)
            result.append(orbit)
        return result

    def periodic_orbits(self) -> List[List[int]]:
        periodic = []
        for orbit in self.orbits():
            left = orbit[0]
            if self.tau.get(left) == orbit[-1] and left in self.tau:
                periodic.append(orbit)
        return periodic

    def to_dot(self, name: str = "ar") -> str:
        """DOT digraph; arrows solid (labelled with their multiplicity when > 1), tau dashed."""
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for v in self.vertices:
            attrs = [f'label="{v.label}"']
            if v.id in self.boundary:
                attrs.append("style=dotted")
            if not v.perfect:
                attrs.append("shape=box")
            lines.append(f"  v{v.id} [{', '.join(attrs)}];")
        for (s, t), m in sorted(self.arrows.items()):
            extra = f' [label="{m}"]' if m > 1 else ""
            lines.append(f"  v{s} -> v{t}{extra};")
        for v, tv in sorted(self.tau.items()):
            lines.append(f"  v{v} -> v{tv} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"


# --------------------- Meshes ---------------------
@dataclass(frozen=True)
class MeshDefect:
    vertex: int
    expected: Dict[Hashable, int]
    found: Dict[Hashable, int]


def mesh_defects(w: ARWindow) -> List[MeshDefect]:
    """Meshes tau(m) -> E -> m where dim tau(m) + dim m differs from the dimension of the middle."""
    defects = []
    for v, tv in sorted(w.tau.items()):
        end, start = w.vertices[v], w.vertices[tv]
        if end.dims is None or start.dims is None:
            continue
        expected = {k: end.dims.get(k, 0) + start.dims.get(k, 0) for k in set(end.dims) | set(start.dims)}
        found = {k: 0 for k in expected}
        for u, m in w.predecessors(v):
            dims = w.vertices[u].dims or {}
            for k, d in dims.items():
                found[k] = found.get(k, 0) + m * d
        if {k: d for k, d in expected.items() if d} != {k: d for k, d in found.items() if d}:
            defects.append(MeshDefect(v, expected, found))
    return defects


# --------------------- Sections ---------------------
@dataclass
class Section:
    vertices: List[int]
    arrows: List[Tuple[int, int]]
    side: str

    def quiver(self, w: ARWindow) -> Quiver:
        edges = []
        for k, (s, t) in enumerate(self.arrows):
            for j in range(w.arrows[(s, t)]):
                edges.append((f"e{k}.{j}", s, t))
        return Quiver.from_edges(self.vertices, edges)


def _is_section(w: ARWindow, graph: nx.MultiDiGraph, candidate: List[int]) -> bool:
    chosen = set(candidate)
    sub = graph.subgraph(chosen)
    if len(chosen) > 1 and not nx.is_weakly_connected(sub):
        return False
    if not nx.is_directed_acyclic_graph(sub):
        return False
    for v in chosen:
        between = nx.descendants(graph, v) & set().union(*(nx.ancestors(graph, u) for u in chosen))
        if not between <= chosen:
            return False
    return True


def find_section(w: ARWindow) -> Optional[Section]:
    """
    Connected, convex, acyclic set of vertices meeting every tau-orbit once:
    the right-hand ends of the orbits, failing that the left-hand ends.

    Raises:
        RsqError: the window is not connected
    """
    if not w.vertices:
        return None
    if not w.is_connected():
        raise RsqError("AR window is not connected.")
    graph = w.graph()
    orbits = w.orbits()
    for side, pick in (("right", lambda o: o[-1]), ("left", lambda o: o[0])):
        candidate = sorted(pick(o) for o in orbits)
        if _is_section(w, graph, candidate):
            chosen = set(candidate)
            arrows = sorted((s, t) for (s, t) in w.arrows if s in chosen and t in chosen)
            return Section(candidate, arrows, side)
    return None


# --------------------- Shapes ---------------------
@dataclass(frozen=True)
class ShapeReport:
    tag: str
    param: Optional[str]
    evidence: Tuple[str, ...]

    def __str__(self) -> str:
        core = self.tag if self.param is None else f"{self.tag}({self.param})"
        return f"{core} within window"


def _is_chain(w: ARWindow) -> bool:
    g = nx.Graph()
    g.add_nodes_from(v.id for v in w.vertices)
    g.add_edges_from(w.arrows)
    if len(w.vertices) < 2 or not nx.is_connected(g) or any(m > 1 for m in w.arrows.values()):
        return False
    return len(w.arrows) == len(w.vertices) - 1 and max(d for _, d in g.degree()) <= 2


def shape_report(w: ARWindow) -> ShapeReport:
    """Window-relative shape tag; Indeterminate rather than a guess."""
    if not w.vertices:
        return ShapeReport("Indeterminate", None, ("empty window",))
    periodic = w.periodic_orbits()
    if periodic:
        rank = min(len(o) for o in periodic)
        return ShapeReport("StableTubeCandidate", str(rank), (f"tau-periodic orbit of period {rank}",))
    if not w.tau and _is_chain(w):
        return ShapeReport("DoubleInfinitePath", None, ("no translation; arrows form a single chain",))

    section = find_section(w)
    if section is None:
        return ShapeReport("Indeterminate", None, ("no section inside the window",))
    delta = str(classify_shape(section.quiver(w))) if len(section.vertices) > 1 else "DynkinA(1)"
    orbits = w.orbits()
    lefts, rights = [o[0] for o in orbits], [o[-1] for o in orbits]
    open_left = any(v in w.boundary for v in lefts)
    open_right = any(v in w.boundary for v in rights)
    n = len(section.vertices)
    evidence = [f"section of {n} vertices ({section.side} ends)"]

    nonperfect = any(not v.perfect for v in w.vertices)
    if w.is_complete and nonperfect and len(w.vertices) == n * (n + 1) // 2:
        return ShapeReport("Wing", str(n), tuple(evidence + ["triangular and complete"]))
    if all(w.vertices[v].projective for v in lefts) and open_right:
        return ShapeReport("NDelta", delta, tuple(evidence + ["left ends projective, right side open"]))
    if all(w.vertices[v].injective for v in rights) and open_left:
        return ShapeReport("NMinusDelta", delta, tuple(evidence + ["right ends injective, left side open"]))
    if not w.boundary:
        evidence.append("all interior vertices stable in window")
    return ShapeReport("ZDelta", delta, tuple(evidence))
