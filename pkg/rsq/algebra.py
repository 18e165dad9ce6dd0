"""
The algebra kQ/(kQ+)^2 and the morphism calculus of its projectives.

P[x] has the ordered basis (eps_x, then the arrows leaving x by id). A
morphism P[x] (x) U -> P[y] (x) V is uniquely a sum of P[gamma] (x) f_gamma
over gamma in Q_{<=1}(y, x); P[alpha] for alpha: y -> x sends eps_x to alpha
and kills every arrow. Morphisms between finite direct sums are stored as
those blocks, keyed by (target vertex, source vertex, gamma) with gamma None
for the trivial path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from rsq.errors import RsqError, ShapeMismatchError
from rsq.linalg import FieldSpec, inverse, is_zero
from rsq.quiver import Quiver

Vertex = Hashable
BlockKey = Tuple[Vertex, Vertex, Optional[Hashable]]


def _block_order(key: BlockKey):
    y, x, gamma = key
    return (y, x, gamma is not None, gamma if gamma is not None else "")


# --------------------- Direct sums ---------------------
class ProjSum:
    """Formal direct sum of indecomposable projectives: vertex -> multiplicity."""

    __slots__ = ("_items",)

    def __init__(self, mults: Union[Mapping[Vertex, int], Iterable[Tuple[Vertex, int]]] = ()):
        pairs = mults.items() if isinstance(mults, Mapping) else mults
        merged: Dict[Vertex, int] = {}
        for v, m in pairs:
            if m < 0:
                raise ShapeMismatchError(f"Negative multiplicity for {v!r}.")
            merged[v] = merged.get(v, 0) + int(m)
        self._items = tuple(sorted((v, m) for v, m in merged.items() if m > 0))

    def items(self) -> Tuple[Tuple[Vertex, int], ...]:
        return self._items

    def mult(self, v: Vertex) -> int:
        for w, m in self._items:
            if w == v:
                return m
        return 0

    @property
    def vertices(self) -> List[Vertex]:
        return [v for v, _ in self._items]

    @property
    def is_zero(self) -> bool:
        return not self._items

    @property
    def rank(self) -> int:
        """Number of indecomposable summands."""
        return sum(m for _, m in self._items)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjSum) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return "ProjSum(" + ", ".join(f"{v!r}:{m}" for v, m in self._items) + ")"


def stack(sums: Sequence[ProjSum]) -> Tuple[ProjSum, List[Dict[Vertex, int]]]:
    """
    Aggregate a list of sums; copies of P[x] from part i follow those of parts < i.

    Returns:
        tuple: (aggregated sum, per-part offsets vertex -> first copy index)
    """
    running: Dict[Vertex, int] = {}
    offsets: List[Dict[Vertex, int]] = []
    for s in sums:
        part = {}
        for v, m in s.items():
            part[v] = running.get(v, 0)
            running[v] = part[v] + m
        offsets.append(part)
    return ProjSum(running), offsets


# --------------------- Algebra ---------------------
@dataclass(frozen=True)
class RSZAlgebra:
    quiver: Quiver
    field: FieldSpec = field(default_factory=FieldSpec)

    @property
    def dim(self) -> int:
        return len(self.quiver.vertices) + len(self.quiver.arrows)

    def hom_basis(self, x: Vertex, y: Vertex) -> List[Optional[Hashable]]:
        """Basis of Hom(P[x], P[y]): Q_{<=1}(y, x), trivial path first."""
        return self.quiver.paths_le1(y, x)

    def projective_basis(self, x: Vertex) -> List[Optional[Hashable]]:
        return [None] + [a.id for a in self.quiver.out_arrows(x)]

    def basis_vertex(self, x: Vertex, element: Optional[Hashable]) -> Vertex:
        """Vertex at which a basis element of P[x] lives."""
        return x if element is None else self.quiver.arrow(element).tgt

    def projective_dims(self, x: Vertex) -> Dict[Vertex, int]:
        dims = {v: 0 for v in self.quiver.vertices}
        for e in self.projective_basis(x):
            dims[self.basis_vertex(x, e)] += 1
        return dims

    def simple_dims(self, x: Vertex) -> Dict[Vertex, int]:
        return {v: int(v == x) for v in self.quiver.vertices}

    def basis(self, s: ProjSum) -> List[Tuple[Vertex, Optional[Hashable], int]]:
        """Ordered basis of a direct sum: (summand vertex, basis element of P[x], copy)."""
        return [(x, e, j) for x, m in s.items() for e in self.projective_basis(x) for j in range(m)]

    def sum_dim(self, s: ProjSum) -> int:
        return sum(m * len(self.projective_basis(x)) for x, m in s.items())

    def sum_dims_by_vertex(self, s: ProjSum) -> Dict[Vertex, int]:
        dims = {v: 0 for v in self.quiver.vertices}
        for x, e, _ in self.basis(s):
            dims[self.basis_vertex(x, e)] += 1
        return dims


# --------------------- Morphisms ---------------------
@dataclass
class ProjMorphism:
    algebra: RSZAlgebra
    source: ProjSum
    target: ProjSum
    blocks: Dict[BlockKey, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        clean: Dict[BlockKey, np.ndarray] = {}
        for key in sorted(self.blocks, key=_block_order):
            y, x, gamma = key
            mat = self.blocks[key]
            if gamma not in self.algebra.hom_basis(x, y):
                raise ShapeMismatchError(f"{gamma!r} is not a path of length <= 1 from {y!r} to {x!r}.")
            if mat.shape != (self.target.mult(y), self.source.mult(x)):
                raise ShapeMismatchError(
                    f"Block {key!r} has shape {mat.shape}, expected "
                    f"{(self.target.mult(y), self.source.mult(x))}."
                )
            if not is_zero(mat):
                clean[key] = mat
        self.blocks = clean

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    # --------------------- Constructors ---------------------
    @classmethod
    def zero(cls, algebra: RSZAlgebra, source: ProjSum, target: ProjSum) -> "ProjMorphism":
        return cls(algebra, source, target, {})

    @classmethod
    def identity(cls, algebra: RSZAlgebra, s: ProjSum) -> "ProjMorphism":
        return cls(algebra, s, s, {(x, x, None): algebra.field.eye(m) for x, m in s.items()})

    # --------------------- Arithmetic ---------------------
    def _check_same_shape(self, other: "ProjMorphism"):
        if self.source != other.source or self.target != other.target:
            raise ShapeMismatchError("Morphisms have different sources or targets.")

    def add(self, other: "ProjMorphism") -> "ProjMorphism":
        self._check_same_shape(other)
        F = self.field
        blocks = dict(self.blocks)
        for key, mat in other.blocks.items():
            blocks[key] = F.add(blocks[key], mat) if key in blocks else mat
        return ProjMorphism(self.algebra, self.source, self.target, blocks)

    def scale(self, c) -> "ProjMorphism":
        F = self.field
        return ProjMorphism(self.algebra, self.source, self.target,
                            {k: F.scale(c, m) for k, m in self.blocks.items()})

    def neg(self) -> "ProjMorphism":
        return self.scale(-1)

    def sub(self, other: "ProjMorphism") -> "ProjMorphism":
        return self.add(other.neg())

    def compose(self, f: "ProjMorphism") -> "ProjMorphism":
        """self o f, using eps o eps = eps, eps o alpha = alpha o eps = alpha, alpha o beta = 0."""
        if f.target != self.source:
            raise ShapeMismatchError("Cannot compose: target of f differs from source of g.")
        F = self.field
        by_middle: Dict[Vertex, List[Tuple[BlockKey, np.ndarray]]] = {}
        for key, mat in f.blocks.items():
            by_middle.setdefault(key[0], []).append((key, mat))
        blocks: Dict[BlockKey, np.ndarray] = {}
        for (z, y, delta), g_mat in self.blocks.items():
            for (_, x, gamma), f_mat in by_middle.get(y, []):
                if delta is not None and gamma is not None:
                    continue
                path = gamma if delta is None else delta
                prod = F.matmul(g_mat, f_mat)
                key = (z, x, path)
                blocks[key] = F.add(blocks[key], prod) if key in blocks else prod
        return ProjMorphism(self.algebra, f.source, self.target, blocks)

    def is_radical(self) -> bool:
        return all(gamma is not None for _, _, gamma in self.blocks)

    def is_zero(self) -> bool:
        return not self.blocks

    def trivial_part(self) -> "ProjMorphism":
        return ProjMorphism(self.algebra, self.source, self.target,
                            {k: m for k, m in self.blocks.items() if k[2] is None})

    def radical_part(self) -> "ProjMorphism":
        return ProjMorphism(self.algebra, self.source, self.target,
                            {k: m for k, m in self.blocks.items() if k[2] is not None})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjMorphism):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        if set(self.blocks) != set(other.blocks):
            return False
        return all(np.array_equal(self.blocks[k], other.blocks[k]) for k in self.blocks)

    def inverse(self) -> "ProjMorphism":
        """Inverse of an automorphism a + r (a trivial, r radical): a^-1 - a^-1 r a^-1."""
        if self.source != self.target:
            raise RsqError("Only endomorphisms can be inverted.")
        F = self.field
        a_inv = {}
        for x, m in self.source.items():
            block = self.blocks.get((x, x, None), F.zeros(m, m))
            inv = inverse(F, block)
            if inv is None:
                raise RsqError(f"Morphism is not invertible at {x!r}.")
            a_inv[(x, x, None)] = inv
        a_inv = ProjMorphism(self.algebra, self.source, self.source, a_inv)
        correction = a_inv.compose(self.radical_part()).compose(a_inv)
        return a_inv.sub(correction)

    def restrict(self, rows: Mapping[Vertex, Sequence[int]], cols: Mapping[Vertex, Sequence[int]]) -> "ProjMorphism":
        """Sub-morphism between the selected copies (rows: target copies, cols: source copies)."""
        target = ProjSum({y: len(idx) for y, idx in rows.items()})
        source = ProjSum({x: len(idx) for x, idx in cols.items()})
        blocks = {}
        for (y, x, gamma), mat in self.blocks.items():
            if rows.get(y) and cols.get(x):
                blocks[(y, x, gamma)] = mat[np.ix_(list(rows[y]), list(cols[x]))]
        return ProjMorphism(self.algebra, source, target, blocks)

    def relabel(self, algebra: RSZAlgebra, vertex_map, arrow_map) -> "ProjMorphism":
        """Image under a vertex/arrow relabeling that is injective on each sum."""
        source = ProjSum({vertex_map(x): m for x, m in self.source.items()})
        target = ProjSum({vertex_map(y): m for y, m in self.target.items()})
        blocks = {(vertex_map(y), vertex_map(x), None if g is None else arrow_map(g)): mat
                  for (y, x, g), mat in self.blocks.items()}
        return ProjMorphism(algebra, source, target, blocks)

    # --------------------- Matrices ---------------------
    def realize(self) -> np.ndarray:
        """Concrete matrix on the ordered bases of source and target."""
        alg, F = self.algebra, self.field
        rows = {(x, e, j): i for i, (x, e, j) in enumerate(alg.basis(self.target))}
        cols = {(x, e, j): i for i, (x, e, j) in enumerate(alg.basis(self.source))}
        out = F.zeros(len(rows), len(cols))
        for (y, x, gamma), mat in self.blocks.items():
            for a in range(mat.shape[0]):
                for b in range(mat.shape[1]):
                    if mat[a, b] == 0:
                        continue
                    if gamma is None:
                        for e in alg.projective_basis(x):
                            out[rows[(y, e, a)], cols[(x, e, b)]] = mat[a, b]
                    else:
                        out[rows[(y, gamma, a)], cols[(x, None, b)]] = mat[a, b]
        return out

    @classmethod
    def decompose(cls, algebra: RSZAlgebra, source: ProjSum, target: ProjSum, matrix: np.ndarray) -> "ProjMorphism":
        """Inverse of realize; raises ShapeMismatchError when matrix is not a module map."""
        F = algebra.field
        rows = {(x, e, j): i for i, (x, e, j) in enumerate(algebra.basis(target))}
        cols = {(x, e, j): i for i, (x, e, j) in enumerate(algebra.basis(source))}
        if matrix.shape != (len(rows), len(cols)):
            raise ShapeMismatchError(f"Matrix shape {matrix.shape} does not match the bases.")
        blocks = {}
        for y, my in target.items():
            for x, mx in source.items():
                for gamma in algebra.hom_basis(x, y):
                    mat = F.zeros(my, mx)
                    for a in range(my):
                        for b in range(mx):
                            mat[a, b] = matrix[rows[(y, gamma, a)], cols[(x, None, b)]]
                    blocks[(y, x, gamma)] = mat
        result = cls(algebra, source, target, blocks)
        if not np.array_equal(result.realize(), F.matrix(matrix, matrix.shape)):
            raise ShapeMismatchError("Matrix is not a morphism of projective modules.")
        return result


def block_morphism(algebra: RSZAlgebra, row_sums: Sequence[ProjSum], col_sums: Sequence[ProjSum],
                   entries: Mapping[Tuple[int, int], ProjMorphism]) -> ProjMorphism:
    """Morphism between stacked sums assembled from blocks entries[(i, j)]: col_sums[j] -> row_sums[i]."""
    F = algebra.field
    target, row_off = stack(row_sums)
    source, col_off = stack(col_sums)
    blocks: Dict[BlockKey, np.ndarray] = {}
    for (i, j), f in entries.items():
        if f.target != row_sums[i] or f.source != col_sums[j]:
            raise ShapeMismatchError(f"Entry ({i}, {j}) does not match the stacked sums.")
        for (y, x, gamma), mat in f.blocks.items():
            key = (y, x, gamma)
            if key not in blocks:
                blocks[key] = F.zeros(target.mult(y), source.mult(x))
            r0, c0 = row_off[i][y], col_off[j][x]
            blocks[key][r0:r0 + mat.shape[0], c0:c0 + mat.shape[1]] = mat
    return ProjMorphism(algebra, source, target, blocks)
