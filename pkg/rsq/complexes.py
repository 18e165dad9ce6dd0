"""
Complexes over the projectives of kQ/(kQ+)^2.

    - ProjComplex: cohomological complex with explicit degree range and a
      truncation flag (degree lo is an artificial cut when set)
    - RadicalComplex: all differentials radical
    - support quiver, decomposition by support components
    - radicalization by Gaussian elimination of invertible trivial blocks
    - homology dimension vectors
    - chain maps, mapping cones and Hom in the homotopy category
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from dask import compute, delayed

from rsq import config
from rsq.algebra import ProjMorphism, ProjSum, RSZAlgebra, block_morphism, stack
from rsq.errors import InsufficientWindowError, RsqError, ShapeMismatchError, UnreliableDegreeError
from rsq.linalg import rank, rank_kernel, rref

logger = logging.getLogger(__name__)

Vertex = Hashable
Selection = Dict[Vertex, List[int]]


def _all_copies(s: ProjSum) -> Selection:
    return {v: list(range(m)) for v, m in s.items()}


def _all_but(s: ProjSum, v: Vertex, k: int) -> Selection:
    sel = _all_copies(s)
    sel[v] = [i for i in sel[v] if i != k]
    return {w: idx for w, idx in sel.items() if idx}


# --------------------- Complexes ---------------------
class ProjComplex:
    """
    Complex X^lo -> ... -> X^hi of finitely generated projectives; d^n maps X^n to X^(n+1).
    """

    def __init__(self, algebra: RSZAlgebra, terms: Mapping[int, ProjSum], diffs: Mapping[int, ProjMorphism],
                 lo: Optional[int] = None, hi: Optional[int] = None, truncated_below: bool = False):
        self.algebra = algebra
        nonzero = sorted(n for n, s in terms.items() if not s.is_zero)
        self.lo = lo if lo is not None else (nonzero[0] if nonzero else 0)
        self.hi = hi if hi is not None else (nonzero[-1] if nonzero else self.lo)
        if self.lo > self.hi:
            raise ShapeMismatchError(f"Empty degree range [{self.lo}, {self.hi}].")
        if any(n < self.lo or n > self.hi for n in nonzero):
            raise ShapeMismatchError("Nonzero term outside the degree range.")
        self.terms: Dict[int, ProjSum] = {n: terms[n] for n in nonzero}
        self.diffs: Dict[int, ProjMorphism] = {}
        for n, d in diffs.items():
            if d.source != self.term(n) or d.target != self.term(n + 1):
                raise ShapeMismatchError(f"d^{n} does not map X^{n} to X^{n + 1}.")
            if not d.is_zero():
                self.diffs[n] = d
        self.truncated_below = truncated_below

    @property
    def field(self):
        return self.algebra.field

    def term(self, n: int) -> ProjSum:
        return self.terms.get(n, ProjSum())

    def diff(self, n: int) -> ProjMorphism:
        if n in self.diffs:
            return self.diffs[n]
        return ProjMorphism.zero(self.algebra, self.term(n), self.term(n + 1))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def nonzero_degrees(self) -> List[int]:
        return sorted(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def reliable(self, n: int) -> bool:
        return not (self.truncated_below and n <= self.lo)

    def is_radical(self) -> bool:
        return all(d.is_radical() for d in self.diffs.values())

    def check_d_squared(self) -> bool:
        return all(self.diff(n + 1).compose(self.diff(n)).is_zero() for n in self.degrees())

    def total_dim(self) -> int:
        return sum(self.algebra.sum_dim(s) for s in self.terms.values())

    def multiplicities(self) -> Dict[int, Dict[Vertex, int]]:
        """Degree -> vertex -> multiplicity, nonzero entries only."""
        return {n: dict(s.items()) for n, s in sorted(self.terms.items())}

    def _rebuild(self, terms, diffs, lo, hi, truncated_below) -> "ProjComplex":
        cls = RadicalComplex if isinstance(self, RadicalComplex) else ProjComplex
        return cls(self.algebra, terms, diffs, lo, hi, truncated_below)

    def shift(self, k: int) -> "ProjComplex":
        """X[k]^n = X^(n+k), d_{X[k]} = (-1)^k d_X."""
        sign = -1 if k % 2 else 1
        terms = {n - k: s for n, s in self.terms.items()}
        diffs = {n - k: d.scale(sign) if sign < 0 else d for n, d in self.diffs.items()}
        return self._rebuild(terms, diffs, self.lo - k, self.hi - k, self.truncated_below)

    def restrict(self, selection: Mapping[int, Selection], truncated_below: Optional[bool] = None) -> "ProjComplex":
        terms = {n: ProjSum({v: len(idx) for v, idx in selection.get(n, {}).items()}) for n in self.degrees()}
        diffs = {}
        for n, d in self.diffs.items():
            rows, cols = selection.get(n + 1, {}), selection.get(n, {})
            if rows and cols:
                diffs[n] = d.restrict(rows, cols)
        flag = self.truncated_below if truncated_below is None else truncated_below
        return self._rebuild(terms, diffs, self.lo, self.hi, flag)

    def trimmed(self) -> "ProjComplex":
        """Same complex with the range shrunk to the nonzero terms (kept at lo when truncated)."""
        if self.is_zero:
            return self._rebuild({}, {}, self.lo, self.lo, self.truncated_below)
        lo = self.lo if self.truncated_below else self.nonzero_degrees()[0]
        return self._rebuild(self.terms, self.diffs, lo, self.nonzero_degrees()[-1], self.truncated_below)

    def truncate_below(self, k: int) -> "ProjComplex":
        """Brutal truncation at degree k, flagged as an artificial cut."""
        if k <= self.lo:
            return self
        terms = {n: s for n, s in self.terms.items() if n >= k}
        diffs = {n: d for n, d in self.diffs.items() if n >= k}
        return self._rebuild(terms, diffs, k, max(self.hi, k), True)

    def realize(self, n: int) -> np.ndarray:
        return self.diff(n).realize()

    def homology_dims(self, n: int) -> Dict[Vertex, int]:
        return homology_dims(self, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjComplex):
            return NotImplemented
        if self.algebra != other.algebra or self.terms != other.terms:
            return False
        if set(self.diffs) != set(other.diffs):
            return False
        return all(self.diffs[n] == other.diffs[n] for n in self.diffs)

    def __repr__(self) -> str:
        terms = ", ".join(f"{n}: {s!r}" for n, s in sorted(self.terms.items()))
        flag = ", truncated" if self.truncated_below else ""
        return f"{type(self).__name__}([{self.lo}, {self.hi}]{flag}; {terms})"


class RadicalComplex(ProjComplex):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        if not self.is_radical():
            raise RsqError("Complex has a non-radical differential.")


def direct_sum(parts: Sequence[ProjComplex]) -> ProjComplex:
    """Degreewise stacked sum; copies of part i follow those of parts < i."""
    algebra = parts[0].algebra
    lo = min(p.lo for p in parts)
    hi = max(p.hi for p in parts)
    terms, diffs = {}, {}
    for n in range(lo, hi + 1):
        terms[n] = stack([p.term(n) for p in parts])[0]
    for n in range(lo, hi):
        entries = {(i, i): p.diff(n) for i, p in enumerate(parts)}
        diffs[n] = block_morphism(algebra, [p.term(n + 1) for p in parts], [p.term(n) for p in parts], entries)
    cls = RadicalComplex if all(p.is_radical() for p in parts) else ProjComplex
    return cls(algebra, terms, diffs, lo, hi, any(p.truncated_below for p in parts))


def stalk(algebra: RSZAlgebra, s: ProjSum, degree: int = 0) -> RadicalComplex:
    return RadicalComplex(algebra, {degree: s}, {}, degree, degree)


# --------------------- Support ---------------------
@dataclass
class SupportQuiver:
    vertices: List[Tuple[Vertex, int]]
    arrows: List[Tuple[Hashable, Tuple[Vertex, int], Tuple[Vertex, int]]]

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for arrow_id, src, tgt in self.arrows:
            g.add_edge(src, tgt, key=arrow_id)
        return g

    def components(self) -> List[List[Tuple[Vertex, int]]]:
        comps = [sorted(c, key=lambda v: (v[1], v[0])) for c in nx.weakly_connected_components(self.graph())]
        return sorted(comps, key=lambda c: (c[0][1], c[0][0]))


def support_quiver(c: ProjComplex) -> SupportQuiver:
    """Vertices (x, n) with P[x] in degree n; an arrow (alpha, n): (x, n) -> (y, n+1) per nonzero block M_alpha^n."""
    vertices = [(x, n) for n in c.nonzero_degrees() for x in c.term(n).vertices]
    arrows = []
    for n, d in sorted(c.diffs.items()):
        for (y, x, gamma) in d.blocks:
            if gamma is not None:
                arrows.append(((gamma, n), (x, n), (y, n + 1)))
    return SupportQuiver(vertices, arrows)


def decompose_by_support(c: ProjComplex) -> List[ProjComplex]:
    """One restriction per connected component of the support quiver."""
    components = support_quiver(c).components()

    def restrict_to(component):
        selection: Dict[int, Selection] = {}
        for x, n in component:
            selection.setdefault(n, {})[x] = list(range(c.term(n).mult(x)))
        return c.restrict(selection).trimmed()

    tasks = [delayed(restrict_to)(comp) for comp in components]
    parts = list(compute(*tasks, scheduler=config.SCHEDULER)) if tasks else []
    logger.debug("Support decomposition: %s summands", len(parts))
    return parts


def reassembles(c: ProjComplex, parts: Sequence[ProjComplex]) -> bool:
    """Whether the degreewise sum of the parts is c with its copies reordered component by component."""
    if not parts:
        return c.is_zero
    components = support_quiver(c).components()
    if len(components) != len(parts):
        return False
    selection: Dict[int, Selection] = {}
    for component in components:
        for x, n in component:
            selection.setdefault(n, {}).setdefault(x, []).extend(range(c.term(n).mult(x)))
    return c.restrict(selection) == direct_sum(list(parts))


# --------------------- Test vectors ---------------------
def random_radical_complex(algebra: RSZAlgebra, rng: np.random.Generator, lo: int, hi: int,
                           max_mult: int = 2) -> RadicalComplex:
    """Random multiplicities and random arrow blocks; d o d = 0 holds since rad^2 = 0."""
    F = algebra.field
    vertices = list(algebra.quiver.vertices)
    terms = {n: ProjSum({v: int(rng.integers(0, max_mult + 1)) for v in vertices}) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        src, tgt = terms[n], terms[n + 1]
        blocks = {}
        for y, my in tgt.items():
            for x, mx in src.items():
                for gamma in algebra.hom_basis(x, y):
                    if gamma is not None:
                        blocks[(y, x, gamma)] = F.random_matrix(rng, my, mx)
        diffs[n] = ProjMorphism(algebra, src, tgt, blocks)
    return RadicalComplex(algebra, terms, diffs, lo, hi)


def contractible(algebra: RSZAlgebra, s: ProjSum, degree: int) -> ProjComplex:
    """s --id--> s in degrees degree, degree + 1."""
    return ProjComplex(algebra, {degree: s, degree + 1: s}, {degree: ProjMorphism.identity(algebra, s)},
                       degree, degree + 1)


# --------------------- Radicalization ---------------------
def _first_trivial_entry(c_diffs: Mapping[int, ProjMorphism]) -> Optional[Tuple[int, Vertex, int, int]]:
    for n in sorted(c_diffs):
        for (y, x, gamma), mat in c_diffs[n].blocks.items():
            if gamma is not None:
                continue
            nz = np.argwhere(mat != 0)
            if len(nz):
                i, j = (int(t) for t in nz[0])
                return n, x, i, j
    return None


def radicalize(c: ProjComplex) -> RadicalComplex:
    """
    Homotopy-equivalent radical complex. Each step picks the first invertible
    component phi: P[x] -> P[x] of some d^n, splits X^n = P + X', X^(n+1) = P' + Y'
    and replaces d^n by delta - gamma phi^-1 beta, cancelling P -> P'.
    """
    terms = dict(c.terms)
    diffs = dict(c.diffs)
    alg = c.algebra
    cancelled = 0

    def term(n):
        return terms.get(n, ProjSum())

    def diff(n):
        return diffs.get(n) or ProjMorphism.zero(alg, term(n), term(n + 1))

    while True:
        # Find an invertible trivial block
        hit = _first_trivial_entry(diffs)
        if hit is None:
            break
        n, x, i, j = hit
        d = diffs[n]
        src, tgt = term(n), term(n + 1)
        p_sel, pp_sel = {x: [j]}, {x: [i]}
        xp_sel, yp_sel = _all_but(src, x, j), _all_but(tgt, x, i)

        # Split off P -> P' and correct the remaining block
        phi = d.restrict(pp_sel, p_sel)
        beta = d.restrict(pp_sel, xp_sel)
        gamma = d.restrict(yp_sel, p_sel)
        delta = d.restrict(yp_sel, xp_sel)
        new_d = delta.sub(gamma.compose(phi.inverse()).compose(beta))

        # Neighbors lose the cancelled copies
        prev = diff(n - 1).restrict(xp_sel, _all_copies(term(n - 1)))
        nxt = diff(n + 1).restrict(_all_copies(term(n + 2)), yp_sel)

        terms[n], terms[n + 1] = new_d.source, new_d.target
        diffs[n], diffs[n - 1], diffs[n + 1] = new_d, prev, nxt
        diffs = {k: v for k, v in diffs.items() if not v.is_zero()}
        cancelled += 1

    if cancelled:
        logger.debug("Radicalize: cancelled %s contractible pairs", cancelled)
    return RadicalComplex(alg, terms, diffs, c.lo, c.hi, c.truncated_below)


# --------------------- Homology ---------------------
def homology_dims(c: ProjComplex, n: int) -> Dict[Vertex, int]:
    """
    Dimension vector of H^n(c) as a module.

    Raises:
        UnreliableDegreeError: n <= lo on a truncated complex
    """
    if not c.reliable(n):
        raise UnreliableDegreeError(f"H^{n} is unreliable: the complex is truncated at degree {c.lo}.")
    alg, F = c.algebra, c.field
    here = [alg.basis_vertex(x, e) for x, e, _ in alg.basis(c.term(n))]
    d_out, d_in = c.realize(n), c.realize(n - 1)
    dims = {}
    for v in alg.quiver.vertices:
        idx = [k for k, w in enumerate(here) if w == v]
        if not idx:
            dims[v] = 0
            continue
        kernel = len(idx) - rank(F, d_out[:, idx])
        image = rank(F, d_in[idx, :])
        dims[v] = kernel - image
    return dims


def homology_profile(c: ProjComplex) -> Dict[int, Dict[Vertex, int]]:
    """Nonzero homology over the reliable degrees."""
    profile = {}
    for n in c.degrees():
        if c.reliable(n):
            dims = homology_dims(c, n)
            if any(dims.values()):
                profile[n] = dims
    return profile


def lowest_homology_degree(c: ProjComplex) -> Optional[int]:
    for n in c.degrees():
        if c.reliable(n) and any(homology_dims(c, n).values()):
            return n
    return None


# --------------------- Chain maps ---------------------
@dataclass
class ChainMap:
    source: ProjComplex
    target: ProjComplex
    components: Dict[int, ProjMorphism] = field(default_factory=dict)

    def component(self, n: int) -> ProjMorphism:
        if n in self.components:
            return self.components[n]
        return ProjMorphism.zero(self.source.algebra, self.source.term(n), self.target.term(n))

    def degrees(self) -> range:
        return range(min(self.source.lo, self.target.lo), max(self.source.hi, self.target.hi) + 1)

    def is_chain_map(self) -> bool:
        for n in self.degrees():
            left = self.target.diff(n).compose(self.component(n))
            right = self.component(n + 1).compose(self.source.diff(n))
            if not left == right:
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self o other."""
        comps = {n: self.component(n).compose(other.component(n)) for n in other.degrees()
                 if not other.component(n).is_zero()}
        return ChainMap(other.source, self.target, comps)

    def add(self, other: "ChainMap") -> "ChainMap":
        degrees = sorted(set(self.components) | set(other.components))
        return ChainMap(self.source, self.target, {n: self.component(n).add(other.component(n)) for n in degrees})

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: f.scale(c) for n, f in self.components.items()})

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components.values())

    def between(self, source: ProjComplex, target: ProjComplex) -> "ChainMap":
        """Same components viewed between truncations of the source and target."""
        comps = {n: f for n, f in self.components.items()
                 if f.source == source.term(n) and f.target == target.term(n) and n >= source.lo}
        return ChainMap(source, target, comps)

    @classmethod
    def identity(cls, c: ProjComplex) -> "ChainMap":
        return cls(c, c, {n: ProjMorphism.identity(c.algebra, s) for n, s in c.terms.items()})


def mapping_cone(f: ChainMap) -> ProjComplex:
    """C^n = X^(n+1) + Y^n with d = [[-d_X, 0], [f, d_Y]]."""
    x, y = f.source, f.target
    alg = x.algebra
    lo, hi = min(x.lo - 1, y.lo), max(x.hi - 1, y.hi)
    terms = {n: stack([x.term(n + 1), y.term(n)])[0] for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        entries = {(0, 0): x.diff(n + 1).neg(), (1, 0): f.component(n + 1), (1, 1): y.diff(n)}
        diffs[n] = block_morphism(alg, [x.term(n + 2), y.term(n + 1)], [x.term(n + 1), y.term(n)], entries)
    return ProjComplex(alg, terms, diffs, lo, hi, x.truncated_below or y.truncated_below)


# --------------------- Homotopy Hom ---------------------
class _Coords:
    """Coordinates of Hom(A, B) for projective sums: (y, x, gamma, i, j)."""

    def __init__(self, algebra: RSZAlgebra, source: ProjSum, target: ProjSum):
        self.algebra, self.source, self.target = algebra, source, target
        self.keys = [(y, x, g, i, j)
                     for y, my in target.items() for x, mx in source.items()
                     for g in algebra.hom_basis(x, y) for i in range(my) for j in range(mx)]

    def __len__(self) -> int:
        return len(self.keys)

    def basis_element(self, k: int) -> ProjMorphism:
        y, x, g, i, j = self.keys[k]
        F = self.algebra.field
        mat = F.zeros(self.target.mult(y), self.source.mult(x))
        mat[i, j] = F.scalar(1)
        return ProjMorphism(self.algebra, self.source, self.target, {(y, x, g): mat})

    def vector(self, f: ProjMorphism) -> List:
        F = self.algebra.field
        zero = F.scalar(0)
        out = []
        for y, x, g, i, j in self.keys:
            mat = f.blocks.get((y, x, g))
            out.append(zero if mat is None else mat[i, j])
        return out

    def morphism(self, values: Sequence) -> ProjMorphism:
        F = self.algebra.field
        blocks: Dict = {}
        for (y, x, g, i, j), value in zip(self.keys, values):
            if value == 0:
                continue
            key = (y, x, g)
            if key not in blocks:
                blocks[key] = F.zeros(self.target.mult(y), self.source.mult(x))
            blocks[key][i, j] = value
        return ProjMorphism(self.algebra, self.source, self.target, blocks)


class HomSpace:
    """
    Hom(x, y) in the homotopy category: degree-0 chain maps modulo
    null-homotopic ones, computed on degrees >= L.

    When x is truncated, L = x.lo and y's homology must start above L; when
    y is truncated, y must reach degree L - 1.
    """

    def __init__(self, x: ProjComplex, y: ProjComplex):
        self.x, self.y = x, y
        self.field = x.field
        self.L = self._lower_bound()
        top = x.hi
        self.f_degrees = list(range(self.L, top + 1)) if self.L is not None else []
        self.f_coords = {n: _Coords(x.algebra, x.term(n), y.term(n)) for n in self.f_degrees}
        self.f_offsets, total = {}, 0
        for n in self.f_degrees:
            self.f_offsets[n] = total
            total += len(self.f_coords[n])
        self.size = total
        self._build()

    def _lower_bound(self) -> Optional[int]:
        x, y = self.x, self.y
        if x.is_zero:
            return None
        if x.truncated_below:
            q0 = lowest_homology_degree(y)
            if q0 is None:
                logger.warning("Target complex has no reliable homology; Hom taken as zero.")
                return None
            if x.lo > q0 - 1:
                raise InsufficientWindowError(
                    f"Source truncated at degree {x.lo} but target homology starts at {q0}; "
                    f"a deeper source window is needed."
                )
            lower = x.lo
        else:
            lower = x.nonzero_degrees()[0]
        if y.truncated_below and y.lo > lower - 1:
            raise InsufficientWindowError(
                f"Target truncated at degree {y.lo}; it must reach degree {lower - 1}."
            )
        return lower

    def _place(self, column: List, n: int, f: ProjMorphism, sign: int = 1):
        """Add the coordinates of f (a component of degree n) into column."""
        if n not in self.f_coords:
            return
        start = self.f_offsets[n]
        F = self.field
        for k, value in enumerate(self.f_coords[n].vector(f)):
            if value != 0:
                column[start + k] = F.scalar(column[start + k] + sign * value)

    def _build(self):
        x, y, F = self.x, self.y, self.field
        alg = x.algebra
        if self.size == 0:
            self.kernel = F.zeros(0, 0)
            self.homotopies = F.zeros(0, 0)
            self.h_rank = 0
            self.dim = 0
            self.basis_vectors = F.zeros(0, 0)
            return
        # chain condition rows: Hom(X^n, Y^(n+1)) for n >= L
        c_coords = {n: _Coords(alg, x.term(n), y.term(n + 1)) for n in self.f_degrees}
        c_offsets, rows = {}, 0
        for n in self.f_degrees:
            c_offsets[n] = rows
            rows += len(c_coords[n])
        C = F.zeros(rows, self.size)
        for n in self.f_degrees:
            coords = self.f_coords[n]
            for k in range(len(coords)):
                e = coords.basis_element(k)
                col = self.f_offsets[n] + k
                left = y.diff(n).compose(e)
                for r, value in enumerate(c_coords[n].vector(left)):
                    if value != 0:
                        C[c_offsets[n] + r, col] = F.scalar(C[c_offsets[n] + r, col] + value)
                if n - 1 in c_coords:
                    right = e.compose(x.diff(n - 1))
                    for r, value in enumerate(c_coords[n - 1].vector(right)):
                        if value != 0:
                            C[c_offsets[n - 1] + r, col] = F.scalar(C[c_offsets[n - 1] + r, col] - value)
        _, self.kernel = rank_kernel(F, C)

        # homotopies h^n: X^n -> Y^(n-1), n >= L
        h_columns = []
        for n in self.f_degrees:
            coords = _Coords(alg, x.term(n), y.term(n - 1))
            for k in range(len(coords)):
                e = coords.basis_element(k)
                column = [F.scalar(0)] * self.size
                self._place(column, n, y.diff(n - 1).compose(e))
                if n - 1 >= self.L:
                    self._place(column, n - 1, e.compose(x.diff(n - 1)))
                h_columns.append(column)
        if h_columns:
            self.homotopies = F.matrix(np.array(h_columns, dtype=object).T, (self.size, len(h_columns)))
        else:
            self.homotopies = F.zeros(self.size, 0)
        self.h_rank = rank(F, self.homotopies)
        self.dim = self.kernel.shape[1] - self.h_rank

        stacked = np.hstack([self.homotopies.astype(object), self.kernel.astype(object)])
        _, pivots = rref(F, stacked) if stacked.shape[1] else (None, [])
        h = self.homotopies.shape[1]
        chosen = [p - h for p in pivots if p >= h]
        self.basis_vectors = self.kernel[:, chosen]

    # --------------------- Queries ---------------------
    def to_chain_map(self, vector) -> ChainMap:
        comps = {}
        for n in self.f_degrees:
            coords = self.f_coords[n]
            start = self.f_offsets[n]
            f = coords.morphism([vector[start + k] for k in range(len(coords))])
            if not f.is_zero():
                comps[n] = f
        return ChainMap(self.x, self.y, comps)

    @property
    def basis(self) -> List[ChainMap]:
        return [self.to_chain_map(self.basis_vectors[:, k]) for k in range(self.basis_vectors.shape[1])]

    def vector(self, f: ChainMap) -> List:
        column = [self.field.scalar(0)] * self.size
        for n in self.f_degrees:
            self._place(column, n, f.component(n))
        return column

    def class_rank(self, maps: Sequence[ChainMap]) -> int:
        """Dimension of the span of the classes of maps."""
        if not maps or self.size == 0:
            return 0
        F = self.field
        vecs = np.array([self.vector(f) for f in maps], dtype=object).T
        stacked = np.hstack([self.homotopies.astype(object), F.matrix(vecs, vecs.shape).astype(object)])
        return rank(F, stacked) - self.h_rank

    def is_null_homotopic(self, f: ChainMap) -> bool:
        return self.class_rank([f]) == 0


@dataclass
class HomResult:
    dim: int
    basis: List[ChainMap]
    lower_degree: Optional[int]


def hom_homotopy(x: ProjComplex, y: ProjComplex) -> HomResult:
    space = HomSpace(x, y)
    return HomResult(space.dim, space.basis, space.L)


def is_null_homotopic(f: ChainMap) -> bool:
    return HomSpace(f.source, f.target).is_null_homotopic(f)


def _is_isomorphism(f: ChainMap) -> bool:
    """Every trivial-path block of every component is invertible (source and target of equal shape)."""
    F = f.source.field
    for n in f.source.nonzero_degrees():
        top = f.component(n).trivial_part()
        for v, m in f.source.term(n).items():
            mat = top.blocks.get((v, v, None))
            if mat is None or rank(F, mat) < m:
                return False
    return True


def _combinations(maps: List[ChainMap], rng: np.random.Generator):
    """All combinations when few enough, else seeded samples (many over tiny fields)."""
    F = maps[0].source.field
    d = len(maps)
    if F.prime is not None and F.prime ** d <= config.BRUTE_FORCE_ELEMENTS_MAX:
        coefficients = itertools.product(range(F.prime), repeat=d)
    else:
        tries = config.SMALL_FIELD_SAMPLES if F.prime is not None and F.prime <= 3 else config.GENERIC_TRIES
        coefficients = (F.random_matrix(rng, 1, d)[0] for _ in range(tries))
    for coeffs in coefficients:
        out = None
        for c, f in zip(coeffs, maps):
            if c == 0:
                continue
            term = f.scale(c)
            out = term if out is None else out.add(term)
        if out is not None:
            yield out


def homotopy_equivalent(x: ProjComplex, y: ProjComplex, rng: Optional[np.random.Generator] = None) -> bool:
    """
    Whether x and y are isomorphic in the homotopy category.

    Both sides are radicalized first. Radical complexes are equivalent iff
    they are isomorphic, and a chain map between them is an isomorphism iff
    its trivial-path blocks are invertible; null-homotopic maps are radical,
    so this does not depend on the representative.

    Raises:
        InsufficientWindowError: both sides are truncated, so Hom cannot be bounded
    """
    rx, ry = radicalize(x).trimmed(), radicalize(y).trimmed()
    if rx.multiplicities() != ry.multiplicities():
        return False
    if rx.truncated_below != ry.truncated_below or (rx.truncated_below and rx.lo != ry.lo):
        return False
    if rx.is_zero:
        return True
    forward = HomSpace(rx, ry).basis
    if not forward:
        return False
    rng = rng or np.random.default_rng(config.SEED)
    return any(_is_isomorphism(f) for f in _combinations(forward, rng))
