"""
Finite windows of the minimal gradable covering pi: Q~ -> Q.

Q~ is the connected component of Q^Z through (anchor, 0). A vertex (b, n)
belongs to it iff n = d (mod r_Q), d being the degree of any walk from the
anchor to b (n = d when Q is gradable). A window keeps the vertices with
lo <= n <= hi and every arrow (alpha, n): (s(alpha), n) -> (e(alpha), n + 1)
whose endpoints both survive.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Tuple

from rsq.errors import TrivialTranslationError, WindowError
from rsq.quiver import Arrow, Quiver, grading_period, potentials

logger = logging.getLogger(__name__)

CoverVertex = Tuple[Hashable, int]


def label(v) -> str:
    """'b@n' for covering vertices and arrows, str() otherwise."""
    if isinstance(v, tuple) and len(v) == 2 and isinstance(v[1], int):
        return f"{v[0]}@{v[1]}"
    return str(v)


def parse_label(text: str) -> CoverVertex:
    name, sep, level = text.rpartition("@")
    if not sep or not name:
        raise WindowError(f"Expected 'name@level', got {text!r}.")
    try:
        return name, int(level)
    except ValueError:
        raise WindowError(f"Bad level in {text!r}.") from None


@dataclass(frozen=True)
class CoverWindow:
    base: Quiver
    r: int
    lo: int
    hi: int
    anchor: Hashable
    offsets: Dict[Hashable, int] = field(repr=False, compare=False)
    vertices: Tuple[CoverVertex, ...] = field(init=False)
    arrows: Tuple[Arrow, ...] = field(init=False)

    def __post_init__(self):
        vertices = tuple(
            (b, n) for b in self.base.vertices for n in range(self.lo, self.hi + 1)
            if self.member(b, n)
        )
        present = set(vertices)
        arrows = tuple(
            Arrow((alpha.id, n), (alpha.src, n), (alpha.tgt, n + 1))
            for alpha in self.base.arrows for n in range(self.lo, self.hi)
            if (alpha.src, n) in present and (alpha.tgt, n + 1) in present
        )
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "_quiver", Quiver(vertices, arrows))

    def member(self, b: Hashable, n: int) -> bool:
        d = self.offsets[b]
        if self.r == 0:
            return n == d
        return (n - d) % self.r == 0

    def quiver(self) -> Quiver:
        """The window as a finite quiver with vertices (b, n) and arrows (alpha, n)."""
        return self._quiver

    def __contains__(self, v) -> bool:
        return isinstance(v, tuple) and len(v) == 2 and v[0] in self.offsets \
            and self.lo <= v[1] <= self.hi and self.member(*v)

    @property
    def safe_range(self) -> Tuple[int, int]:
        """Levels whose neighborhoods are complete inside the window."""
        return self.lo + 1, self.hi - 1

    def in_safe_range(self, v: CoverVertex) -> bool:
        lo, hi = self.safe_range
        return lo <= v[1] <= hi

    def cut_below(self, v: CoverVertex) -> bool:
        """v lies on level lo and has an in-arrow from level lo - 1 of the covering."""
        return not self.in_safe_range(v) and v[1] == self.lo \
            and any(self.member(a.src, self.lo - 1) for a in self.base.in_arrows(v[0]))

    def cut_above(self, v: CoverVertex) -> bool:
        """v lies on level hi and has an out-arrow to level hi + 1 of the covering."""
        return not self.in_safe_range(v) and v[1] == self.hi \
            and any(self.member(a.tgt, self.hi + 1) for a in self.base.out_arrows(v[0]))

    def is_cut(self, v: CoverVertex) -> bool:
        """Some covering neighbor of v lies outside the window."""
        return self.cut_below(v) or self.cut_above(v)

    def fiber(self, b: Hashable) -> List[CoverVertex]:
        return [v for v in self.vertices if v[0] == b]

    def level(self, n: int) -> List[CoverVertex]:
        return [v for v in self.vertices if v[1] == n]

    def base_arrow(self, arrow_id: Tuple[Hashable, int]) -> Hashable:
        return arrow_id[0]

    def to_dot(self, name: str = "cover") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for v in self.vertices:
            lines.append(f'  "{label(v)}";')
        for arrow in self.arrows:
            lines.append(f'  "{label(arrow.src)}" -> "{label(arrow.tgt)}" [label="{label(arrow.id)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# --------------------- Operations ---------------------
def build_cover_window(q: Quiver, lo: int, hi: int, anchor: Optional[Hashable] = None) -> CoverWindow:
    """
    Materialize the levels [lo, hi] of the minimal gradable covering.

    Args:
        q: connected base quiver
        lo, hi: level bounds with lo <= 0 <= hi
        anchor: base vertex a0 with (a0, 0) in the covering; smallest id by default

    Raises:
        WindowError: bad bounds or unknown anchor
        DisconnectedQuiverError: q not connected
    """
    if not lo <= 0 <= hi:
        raise WindowError(f"Window bounds must satisfy lo <= 0 <= hi, got [{lo}, {hi}].")
    q.require_connected()
    anchor = q.vertices[0] if anchor is None else anchor
    if anchor not in q.vertices:
        raise WindowError(f"Anchor {anchor!r} is not a vertex of the quiver.")
    pot = potentials(q)
    offsets = {b: pot[b] - pot[anchor] for b in q.vertices}
    window = CoverWindow(q, grading_period(q), lo, hi, anchor, offsets)
    logger.debug("Cover window [%s, %s]: %s vertices, %s arrows", lo, hi,
                 len(window.vertices), len(window.arrows))
    return window


def contains_vertex(cw: CoverWindow, b: Hashable, n: int) -> bool:
    """Membership of (b, n) in the covering, independent of the window range."""
    if b not in cw.offsets:
        raise WindowError(f"{b!r} is not a vertex of the base quiver.")
    return cw.member(b, n)


def rho_shift(cw: CoverWindow, v: CoverVertex, power: int) -> Tuple[CoverVertex, bool]:
    """
    rho^power (a, n) = (a, n + power * r).

    Returns:
        tuple: (shifted vertex, whether it lies inside the window)
    """
    if power != 0 and cw.r == 0:
        raise TrivialTranslationError("trivial translation group: the quiver is gradable (r_Q = 0).")
    shifted = (v[0], v[1] + power * cw.r)
    return shifted, shifted in cw


def project(cw: CoverWindow, v: CoverVertex) -> Hashable:
    if v not in cw:
        raise WindowError(f"{label(v)} is not a vertex of the window [{cw.lo}, {cw.hi}].")
    return v[0]
