"""
Finite quivers and their combinatorics.

    - Quiver / Arrow value types (loops and parallel arrows allowed)
    - walks and walk degree
    - gradability and grading period via spanning-tree potentials
    - underlying-graph shape recognition (Dynkin, Euclidean, cycles)
    - opposite quiver and infinite path profile
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Dict, Hashable, Iterable, List, Optional, Set, Tuple

import networkx as nx

from rsq.errors import DisconnectedQuiverError, InputFormatError, MalformedWalkError

logger = logging.getLogger(__name__)

Vertex = Hashable
ArrowId = Hashable


# --------------------- Data Model ---------------------
@dataclass(frozen=True)
class Arrow:
    id: ArrowId
    src: Vertex
    tgt: Vertex

    @property
    def is_loop(self) -> bool:
        return self.src == self.tgt


@dataclass(frozen=True)
class Quiver:
    """
    Finite quiver. Vertices are kept sorted, arrows sorted by id, so every
    traversal below is deterministic.
    """

    vertices: Tuple[Vertex, ...]
    arrows: Tuple[Arrow, ...]
    _by_id: Dict[ArrowId, Arrow] = field(init=False, repr=False, compare=False)
    _out: Dict[Vertex, Tuple[Arrow, ...]] = field(init=False, repr=False, compare=False)
    _in: Dict[Vertex, Tuple[Arrow, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(sorted(set(self.vertices)))
        if len(vertices) != len(tuple(self.vertices)):
            raise InputFormatError("Duplicate vertex ids.")
        arrows = tuple(sorted(self.arrows, key=lambda a: a.id))
        by_id: Dict[ArrowId, Arrow] = {}
        declared = set(vertices)
        for arrow in arrows:
            if arrow.id in by_id:
                raise InputFormatError(f"Duplicate arrow id {arrow.id!r}.")
            if arrow.src not in declared or arrow.tgt not in declared:
                raise InputFormatError(f"Arrow {arrow.id!r} uses an undeclared vertex.")
            by_id[arrow.id] = arrow
        out = {v: tuple(a for a in arrows if a.src == v) for v in vertices}
        inc = {v: tuple(a for a in arrows if a.tgt == v) for v in vertices}
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inc)

    @classmethod
    def from_edges(cls, vertices: Iterable[Vertex], edges: Iterable[Tuple[ArrowId, Vertex, Vertex]]) -> "Quiver":
        return cls(tuple(vertices), tuple(Arrow(i, s, t) for i, s, t in edges))

    def arrow(self, arrow_id: ArrowId) -> Arrow:
        try:
            return self._by_id[arrow_id]
        except KeyError:
            raise InputFormatError(f"Unknown arrow {arrow_id!r}.") from None

    def has_arrow(self, arrow_id: ArrowId) -> bool:
        return arrow_id in self._by_id

    def out_arrows(self, a: Vertex) -> Tuple[Arrow, ...]:
        """a+ : arrows starting at a, by id."""
        return self._out[a]

    def in_arrows(self, a: Vertex) -> Tuple[Arrow, ...]:
        """a- : arrows ending at a, by id."""
        return self._in[a]

    def arrows_between(self, a: Vertex, b: Vertex) -> List[Arrow]:
        """Q_1(a, b)."""
        return [arrow for arrow in self._out[a] if arrow.tgt == b]

    def paths_le1(self, a: Vertex, b: Vertex) -> List[Optional[ArrowId]]:
        """Q_{<=1}(a, b); the trivial path is encoded as None and comes first."""
        paths: List[Optional[ArrowId]] = [None] if a == b else []
        return paths + [arrow.id for arrow in self.arrows_between(a, b)]

    def opposite(self) -> "Quiver":
        """Same vertices, every arrow reversed; arrow ids are kept so op(op(q)) == q."""
        return Quiver(self.vertices, tuple(Arrow(a.id, a.tgt, a.src) for a in self.arrows))

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for arrow in self.arrows:
            graph.add_edge(arrow.src, arrow.tgt, key=arrow.id)
        return graph

    def components(self) -> List[List[Vertex]]:
        comps = [sorted(c) for c in nx.weakly_connected_components(self.to_networkx())]
        return sorted(comps, key=lambda c: c[0])

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and len(self.components()) == 1

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedQuiverError(self.components())

    def subquiver(self, vertices: Iterable[Vertex]) -> "Quiver":
        keep = set(vertices)
        return Quiver(tuple(keep), tuple(a for a in self.arrows if a.src in keep and a.tgt in keep))


@dataclass(frozen=True)
class Walk:
    """Walk alpha_r^{e_r} ... alpha_1^{e_1} from base; e = +1 forward, -1 backward."""

    base: Vertex
    steps: Tuple[Tuple[ArrowId, int], ...] = ()

    def end(self, q: Quiver) -> Vertex:
        current = self.base
        for position, (arrow_id, direction) in enumerate(self.steps):
            try:
                arrow = q.arrow(arrow_id)
            except InputFormatError:
                raise MalformedWalkError(f"Step {position}: unknown arrow {arrow_id!r}.") from None
            if direction == 1 and arrow.src == current:
                current = arrow.tgt
            elif direction == -1 and arrow.tgt == current:
                current = arrow.src
            else:
                raise MalformedWalkError(
                    f"Step {position} ({arrow_id!r}, {direction:+d}) does not start at {current!r}."
                )
        return current

    def is_closed(self, q: Quiver) -> bool:
        return self.end(q) == self.base


def walk_degree(q: Quiver, w: Walk) -> int:
    """Sum of the exponents of a walk; raises MalformedWalkError on non-composable steps."""
    w.end(q)
    return sum(direction for _, direction in w.steps)


# --------------------- Gradability ---------------------
def potentials(q: Quiver, root: Optional[Vertex] = None) -> Dict[Vertex, int]:
    """
    Degree of the breadth-first tree walk from root (default: smallest id)
    to every vertex. Neighbors are visited by arrow id, out-arrows first.
    """
    q.require_connected()
    root = q.vertices[0] if root is None else root
    pot = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for arrow in q.out_arrows(u):
            if arrow.tgt not in pot:
                pot[arrow.tgt] = pot[u] + 1
                queue.append(arrow.tgt)
        for arrow in q.in_arrows(u):
            if arrow.src not in pot:
                pot[arrow.src] = pot[u] - 1
                queue.append(arrow.src)
    return pot


def grading_period(q: Quiver) -> int:
    """
    r_Q: 0 for gradable quivers, otherwise the minimal positive degree of a
    closed walk. Closed-walk degrees form the subgroup of Z generated by the
    defects of the arrows, hence the gcd.
    """
    pot = potentials(q)
    defects = [abs(pot[a.tgt] - pot[a.src] - 1) for a in q.arrows]
    return reduce(gcd, defects, 0)


def is_gradable(q: Quiver) -> bool:
    return grading_period(q) == 0


def closed_walk_degree_gcd(q: Quiver, max_length: Optional[int] = None) -> int:
    """
    Exhaustive oracle: gcd of the degrees of all closed walks of length
    <= max_length (default 2|Q_1|), tracked as reachable (vertex, degree) states.
    """
    q.require_connected()
    max_length = 2 * len(q.arrows) if max_length is None else max_length
    degrees: Set[int] = set()
    for start in q.vertices:
        frontier = {(start, 0)}
        for _ in range(max_length):
            nxt = set()
            for vertex, degree in frontier:
                for arrow in q.out_arrows(vertex):
                    nxt.add((arrow.tgt, degree + 1))
                for arrow in q.in_arrows(vertex):
                    nxt.add((arrow.src, degree - 1))
            frontier = nxt
            degrees.update(abs(d) for v, d in frontier if v == start)
    return reduce(gcd, degrees, 0)


# --------------------- Shapes ---------------------
@dataclass(frozen=True)
class ShapeClass:
    """
    Underlying-graph type. kind is one of "A", "D", "E", "TildeA", "TildeD",
    "TildeE", "Wild"; orientation is (majority, minority) arrow directions
    around the cycle for TildeA.
    """

    kind: str
    n: Optional[int] = None
    orientation: Optional[Tuple[int, int]] = None

    @property
    def is_dynkin(self) -> bool:
        return self.kind in ("A", "D", "E")

    @property
    def is_euclidean(self) -> bool:
        return self.kind.startswith("Tilde")

    @property
    def is_oriented_cycle(self) -> bool:
        return self.kind == "TildeA" and self.orientation[1] == 0

    @property
    def cycle_period(self) -> Optional[int]:
        """|#clockwise - #counterclockwise| for cycles."""
        if self.kind != "TildeA":
            return None
        return self.orientation[0] - self.orientation[1]

    def __str__(self) -> str:
        if self.kind == "Wild":
            return "Wild"
        if self.kind == "TildeA":
            if self.is_oriented_cycle:
                return f"TildeA({self.n}, oriented)"
            return f"TildeA({self.n}, {self.orientation[0]}:{self.orientation[1]})"
        if self.kind.startswith("Tilde"):
            return f"{self.kind}({self.n})"
        return f"Dynkin{self.kind}({self.n})"


def _cycle_orientation(q: Quiver) -> Tuple[int, int]:
    """Walk once around a cycle graph, counting forward and backward steps."""
    current = q.vertices[0]
    used: Set[ArrowId] = set()
    forward = backward = 0
    while len(used) < len(q.arrows):
        candidates = [a for a in q.arrows if a.id not in used and current in (a.src, a.tgt)]
        arrow = candidates[0]
        used.add(arrow.id)
        if arrow.src == current:
            forward += 1
            current = arrow.tgt
        else:
            backward += 1
            current = arrow.src
    return max(forward, backward), min(forward, backward)


def _arm_lengths(graph: nx.MultiGraph, center: Vertex) -> List[int]:
    """Number of vertices on each arm leaving a branch vertex of a tree."""
    lengths = []
    for neighbor in sorted(set(graph.neighbors(center))):
        length, previous, current = 1, center, neighbor
        while graph.degree(current) == 2:
            nxt = [v for v in graph.neighbors(current) if v != previous][0]
            previous, current = current, nxt
            length += 1
        lengths.append(length)
    return sorted(lengths)


def classify_shape(q: Quiver) -> ShapeClass:
    """Dynkin / Euclidean / Wild type of the underlying graph."""
    q.require_connected()
    graph = nx.MultiGraph()
    graph.add_nodes_from(q.vertices)
    for arrow in q.arrows:
        graph.add_edge(arrow.src, arrow.tgt, key=arrow.id)
    n_vertices, n_edges = len(q.vertices), len(q.arrows)
    degrees = dict(graph.degree())

    if n_edges == n_vertices:
        if all(d == 2 for d in degrees.values()):
            return ShapeClass("TildeA", n_edges, _cycle_orientation(q))
        return ShapeClass("Wild")
    if n_edges != n_vertices - 1:
        return ShapeClass("Wild")

    branch = sorted(v for v, d in degrees.items() if d >= 3)
    if not branch:
        return ShapeClass("A", n_vertices)
    if len(branch) == 1 and degrees[branch[0]] == 3:
        arms = tuple(_arm_lengths(graph, branch[0]))
        if arms[:2] == (1, 1):
            return ShapeClass("D", arms[2] + 3)
        named = {(1, 2, 2): ("E", 6), (1, 2, 3): ("E", 7), (1, 2, 4): ("E", 8),
                 (2, 2, 2): ("TildeE", 6), (1, 3, 3): ("TildeE", 7), (1, 2, 5): ("TildeE", 8)}
        if arms in named:
            return ShapeClass(*named[arms])
        return ShapeClass("Wild")
    if len(branch) == 1 and degrees[branch[0]] == 4:
        if _arm_lengths(graph, branch[0]) == [1, 1, 1, 1]:
            return ShapeClass("TildeD", 4)
        return ShapeClass("Wild")
    if len(branch) == 2 and all(degrees[v] == 3 for v in branch):
        leaves = [v for v in graph.neighbors(branch[0]) if degrees[v] == 1]
        leaves += [v for v in graph.neighbors(branch[1]) if degrees[v] == 1]
        if len(leaves) == 4:
            return ShapeClass("TildeD", n_vertices - 1)
    return ShapeClass("Wild")


# --------------------- Paths ---------------------
@dataclass(frozen=True)
class PathProfile:
    has_right_infinite: bool
    has_left_infinite: bool

    @property
    def has_infinite(self) -> bool:
        return self.has_right_infinite or self.has_left_infinite


def infinite_path_profile(q: Quiver) -> PathProfile:
    """For a finite quiver both kinds of infinite path exist iff an oriented cycle does."""
    cyclic = not nx.is_directed_acyclic_graph(q.to_networkx())
    return PathProfile(cyclic, cyclic)


def reachable_cycle(q: Quiver, a: Vertex) -> bool:
    """Whether some oriented cycle can be reached by a path starting at a."""
    graph = q.to_networkx()
    reach = nx.descendants(graph, a) | {a}
    return not nx.is_directed_acyclic_graph(graph.subgraph(reach))


def paths(q: Quiver, a: Vertex, b: Vertex) -> List[Tuple[ArrowId, ...]]:
    """All paths a -> b of an acyclic quiver, as arrow-id tuples in composition order (first arrow first)."""
    found: List[Tuple[ArrowId, ...]] = []

    def extend(vertex: Vertex, prefix: Tuple[ArrowId, ...]):
        if vertex == b:
            found.append(prefix)
        for arrow in q.out_arrows(vertex):
            extend(arrow.tgt, prefix + (arrow.id,))

    extend(a, ())
    return sorted(found, key=lambda p: (len(p), p))
