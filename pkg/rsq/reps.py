"""
Finite-dimensional representations of finite acyclic quivers.

    - QuiverRep / RepMorphism, and bounded complexes of representations
    - indecomposable injectives I_a (paths x -> a) and projectives P_a (paths a -> x)
    - sub- and quotient representations, socle, radical, kernels, cokernels
    - Hom spaces, isomorphism and indecomposability tests
    - almost split sequences through a minimal projective presentation and
      the Nakayama functor, and knitting of the preinjective component
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import sympy

from rsq import config
from rsq.ar_window import ARWindow, mesh_defects
from rsq.errors import NotApplicableError, RsqError, ShapeMismatchError
from rsq.linalg import (FieldSpec, column_space, complement_columns, inverse, is_nilpotent, is_zero,
                        rank, rank_kernel, solve_all)
from rsq.quiver import Quiver, paths

logger = logging.getLogger(__name__)

Vertex = Hashable
Path = Tuple[Hashable, ...]


# --------------------- Representations ---------------------
def _as_matrix(F: FieldSpec, data, shape: Tuple[int, int], what: str) -> np.ndarray:
    arr = np.array(data, dtype=object)
    if arr.size == 0:
        arr = arr.reshape(shape)
    elif arr.shape != shape:
        raise ShapeMismatchError(f"{what} has shape {arr.shape}, expected {shape}.")
    return F.matrix(arr, shape)


@dataclass(eq=False)
class QuiverRep:
    """Vector spaces dims[v] and, for every arrow a: s -> t, a matrix maps[a] of shape (dims[t], dims[s])."""

    quiver: Quiver
    field: FieldSpec
    dims: Dict[Vertex, int] = field(default_factory=dict)
    maps: Dict[Hashable, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        unknown = set(self.dims) - set(self.quiver.vertices)
        if unknown:
            raise ShapeMismatchError(f"Dimensions given for unknown vertices {sorted(map(str, unknown))}.")
        dims = {v: int(self.dims.get(v, 0)) for v in self.quiver.vertices}
        if any(d < 0 for d in dims.values()):
            raise ShapeMismatchError("Negative dimension.")
        maps = {}
        for arrow in self.quiver.arrows:
            shape = (dims[arrow.tgt], dims[arrow.src])
            data = self.maps.get(arrow.id)
            maps[arrow.id] = self.field.zeros(*shape) if data is None else \
                _as_matrix(self.field, data, shape, f"Map of arrow {arrow.id!r}")
        self.dims, self.maps = dims, maps

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def support(self) -> List[Vertex]:
        return [v for v in self.quiver.vertices if self.dims[v]]

    def offsets(self) -> Dict[Vertex, int]:
        out, total = {}, 0
        for v in self.quiver.vertices:
            out[v] = total
            total += self.dims[v]
        return out

    def path_map(self, path: Path, start: Vertex) -> np.ndarray:
        """M(path) for a path given first arrow first, starting at start."""
        F = self.field
        out = F.eye(self.dims[start])
        for arrow_id in path:
            out = F.matmul(self.maps[arrow_id], out)
        return out

    def equals(self, other: "QuiverRep") -> bool:
        return self.quiver == other.quiver and self.dims == other.dims and \
            all(np.array_equal(self.maps[a], other.maps[a]) for a in self.maps)

    def __repr__(self) -> str:
        dims = ", ".join(f"{v}:{d}" for v, d in self.dims.items() if d)
        return f"QuiverRep({dims})"


@dataclass(eq=False)
class RepMorphism:
    source: QuiverRep
    target: QuiverRep
    comps: Dict[Vertex, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        F = self.source.field
        comps = {}
        for v in self.source.quiver.vertices:
            shape = (self.target.dims[v], self.source.dims[v])
            data = self.comps.get(v)
            comps[v] = F.zeros(*shape) if data is None else _as_matrix(F, data, shape, f"Component at {v!r}")
        self.comps = comps

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    def is_morphism(self) -> bool:
        F = self.field
        for arrow in self.source.quiver.arrows:
            left = F.matmul(self.target.maps[arrow.id], self.comps[arrow.src])
            right = F.matmul(self.comps[arrow.tgt], self.source.maps[arrow.id])
            if not np.array_equal(left, right):
                return False
        return True

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """self o other."""
        F = self.field
        return RepMorphism(other.source, self.target,
                           {v: F.matmul(self.comps[v], other.comps[v]) for v in self.comps})

    def add(self, other: "RepMorphism") -> "RepMorphism":
        F = self.field
        return RepMorphism(self.source, self.target, {v: F.add(self.comps[v], other.comps[v]) for v in self.comps})

    def scale(self, c) -> "RepMorphism":
        F = self.field
        return RepMorphism(self.source, self.target, {v: F.scale(c, m) for v, m in self.comps.items()})

    def is_zero(self) -> bool:
        return all(is_zero(m) for m in self.comps.values())

    def is_injective(self) -> bool:
        return all(rank(self.field, m) == m.shape[1] for m in self.comps.values())

    def is_surjective(self) -> bool:
        return all(rank(self.field, m) == m.shape[0] for m in self.comps.values())

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def total_matrix(self) -> np.ndarray:
        F = self.field
        out = F.zeros(self.target.total_dim, self.source.total_dim)
        rows, cols = self.target.offsets(), self.source.offsets()
        for v, m in self.comps.items():
            out[rows[v]:rows[v] + m.shape[0], cols[v]:cols[v] + m.shape[1]] = m
        return out

    @classmethod
    def identity(cls, m: QuiverRep) -> "RepMorphism":
        return cls(m, m, {v: m.field.eye(d) for v, d in m.dims.items()})

    @classmethod
    def zero(cls, source: QuiverRep, target: QuiverRep) -> "RepMorphism":
        return cls(source, target, {})


@dataclass
class RepComplex:
    """Bounded complex of representations: terms[i] with d[i]: terms[i] -> terms[i + 1]."""

    terms: Dict[int, QuiverRep]
    diffs: Dict[int, RepMorphism] = field(default_factory=dict)

    def __post_init__(self):
        if not self.terms:
            raise RsqError("A complex of representations needs at least one term.")
        for i, d in self.diffs.items():
            if i not in self.terms or i + 1 not in self.terms:
                raise ShapeMismatchError(f"Differential {i} has no source or target term.")
            if d.source is not self.terms[i] and not d.source.equals(self.terms[i]):
                raise ShapeMismatchError(f"Differential {i} does not start at term {i}.")

    @property
    def degrees(self) -> List[int]:
        return sorted(self.terms)

    def diff(self, i: int) -> Optional[RepMorphism]:
        return self.diffs.get(i)

    def shift(self, k: int) -> "RepComplex":
        """M[k]^i = M^(i+k), differentials multiplied by (-1)^k."""
        sign = -1 if k % 2 else 1
        terms = {i - k: m for i, m in self.terms.items()}
        diffs = {i - k: d.scale(sign) for i, d in self.diffs.items()}
        return RepComplex(terms, diffs)

    @classmethod
    def stalk(cls, m: QuiverRep, degree: int = 0) -> "RepComplex":
        return cls({degree: m}, {})


# --------------------- Standard representations ---------------------
def _require_acyclic(q: Quiver) -> None:
    if not nx.is_directed_acyclic_graph(q.to_networkx()):
        raise RsqError("Quiver has an oriented cycle; only acyclic quivers have finite path bases.")


def zero_rep(q: Quiver, F: FieldSpec) -> QuiverRep:
    return QuiverRep(q, F, {}, {})


def simple_at(q: Quiver, a: Vertex, F: FieldSpec) -> QuiverRep:
    return QuiverRep(q, F, {a: 1}, {})


def _path_action(F: FieldSpec, rows: List[Path], cols: List[Path], image) -> np.ndarray:
    out = F.zeros(len(rows), len(cols))
    index = {p: i for i, p in enumerate(rows)}
    for j, p in enumerate(cols):
        img = image(p)
        if img is not None and img in index:
            out[index[img], j] = F.scalar(1)
    return out


def injective_at(q: Quiver, a: Vertex, F: FieldSpec) -> QuiverRep:
    """I_a: I_a(x) spanned by the paths x -> a; an arrow b: x -> y removes a leading b."""
    _require_acyclic(q)
    basis = {x: paths(q, x, a) for x in q.vertices}
    maps = {}
    for arrow in q.arrows:
        def drop_first(p, b=arrow.id):
            return p[1:] if p and p[0] == b else None
        maps[arrow.id] = _path_action(F, basis[arrow.tgt], basis[arrow.src], drop_first)
    return QuiverRep(q, F, {x: len(b) for x, b in basis.items()}, maps)


def projective_at(q: Quiver, a: Vertex, F: FieldSpec) -> QuiverRep:
    """P_a: P_a(x) spanned by the paths a -> x; an arrow appends itself."""
    _require_acyclic(q)
    basis = {x: paths(q, a, x) for x in q.vertices}
    maps = {}
    for arrow in q.arrows:
        def append(p, b=arrow.id):
            return p + (b,)
        maps[arrow.id] = _path_action(F, basis[arrow.tgt], basis[arrow.src], append)
    return QuiverRep(q, F, {x: len(b) for x, b in basis.items()}, maps)


def injective_path_map(q: Quiver, path: Path, x: Vertex, y: Vertex, F: FieldSpec) -> RepMorphism:
    """For a path x -> y, the map I_y -> I_x cutting the path off the end of each basis path."""
    source, target = injective_at(q, y, F), injective_at(q, x, F)
    k = len(path)

    def cut(p):
        if len(p) >= k and tuple(p[len(p) - k:]) == tuple(path):
            return p[:len(p) - k]
        return None

    comps = {z: _path_action(F, paths(q, z, x), paths(q, z, y), cut) for z in q.vertices}
    return RepMorphism(source, target, comps)


def projective_path_map(q: Quiver, path: Path, x: Vertex, y: Vertex, F: FieldSpec) -> RepMorphism:
    """For a path x -> y, the map P_y -> P_x prefixing each basis path with it."""
    source, target = projective_at(q, y, F), projective_at(q, x, F)
    comps = {z: _path_action(F, paths(q, x, z), paths(q, y, z), lambda p: tuple(path) + p) for z in q.vertices}
    return RepMorphism(source, target, comps)


# --------------------- Direct sums ---------------------
def direct_sum(reps: Sequence[QuiverRep]) -> QuiverRep:
    q, F = reps[0].quiver, reps[0].field
    dims = {v: sum(m.dims[v] for m in reps) for v in q.vertices}
    maps = {}
    for arrow in q.arrows:
        out = F.zeros(dims[arrow.tgt], dims[arrow.src])
        r = c = 0
        for m in reps:
            block = m.maps[arrow.id]
            out[r:r + block.shape[0], c:c + block.shape[1]] = block
            r, c = r + block.shape[0], c + block.shape[1]
        maps[arrow.id] = out
    return QuiverRep(q, F, dims, maps)


def block_rep_morphism(sources: Sequence[QuiverRep], targets: Sequence[QuiverRep],
                       entries: Mapping[Tuple[int, int], RepMorphism]) -> RepMorphism:
    """Morphism between direct sums assembled from entries[(i, j)]: sources[j] -> targets[i]."""
    source, target = direct_sum(sources), direct_sum(targets)
    F = source.field
    comps = {}
    for v in source.quiver.vertices:
        out = F.zeros(target.dims[v], source.dims[v])
        row_off = np.cumsum([0] + [t.dims[v] for t in targets])
        col_off = np.cumsum([0] + [s.dims[v] for s in sources])
        for (i, j), f in entries.items():
            m = f.comps[v]
            out[row_off[i]:row_off[i] + m.shape[0], col_off[j]:col_off[j] + m.shape[1]] = m
        comps[v] = out
    return RepMorphism(source, target, comps)


# --------------------- Sub and quotient ---------------------
def subrep(m: QuiverRep, bases: Mapping[Vertex, np.ndarray]) -> Tuple[QuiverRep, RepMorphism]:
    """
    Subrepresentation spanned by independent columns bases[v].

    Returns:
        tuple: (sub, inclusion)

    Raises:
        RsqError: the spans are not stable under the arrows
    """
    F = m.field
    bases = {v: bases.get(v, F.zeros(m.dims[v], 0)) for v in m.quiver.vertices}
    maps = {}
    for arrow in m.quiver.arrows:
        image = F.matmul(m.maps[arrow.id], bases[arrow.src])
        sol = solve_all(F, bases[arrow.tgt], image)
        if sol is None:
            raise RsqError(f"Subspaces are not stable under arrow {arrow.id!r}.")
        maps[arrow.id] = sol.particular
    sub = QuiverRep(m.quiver, F, {v: b.shape[1] for v, b in bases.items()}, maps)
    return sub, RepMorphism(sub, m, dict(bases))


@dataclass
class Quotient:
    rep: QuiverRep
    projection: RepMorphism
    section: Dict[Vertex, np.ndarray]


def quotient(m: QuiverRep, bases: Mapping[Vertex, np.ndarray]) -> Quotient:
    """M / span(bases); section[v] lifts quotient coordinates back to M(v)."""
    F = m.field
    proj, section = {}, {}
    for v in m.quiver.vertices:
        b = bases.get(v, F.zeros(m.dims[v], 0))
        c = complement_columns(F, b)
        t_inv = inverse(F, np.hstack([b.astype(object), c.astype(object)]) if m.dims[v] else F.zeros(0, 0))
        proj[v] = t_inv[b.shape[1]:, :] if m.dims[v] else F.zeros(0, 0)
        section[v] = c
    maps = {a.id: F.matmul(F.matmul(proj[a.tgt], m.maps[a.id]), section[a.src]) for a in m.quiver.arrows}
    rep = QuiverRep(m.quiver, F, {v: section[v].shape[1] for v in m.quiver.vertices}, maps)
    return Quotient(rep, RepMorphism(m, rep, proj), section)


def kernel(f: RepMorphism) -> Tuple[QuiverRep, RepMorphism]:
    F = f.field
    return subrep(f.source, {v: rank_kernel(F, c)[1] for v, c in f.comps.items()})


def image_bases(f: RepMorphism) -> Dict[Vertex, np.ndarray]:
    return {v: column_space(f.field, c) for v, c in f.comps.items()}


def cokernel(f: RepMorphism) -> Quotient:
    return quotient(f.target, image_bases(f))


@dataclass
class SocleSplit:
    soc: QuiverRep
    quotient: QuiverRep
    inclusion: RepMorphism
    projection: RepMorphism


def socle_bases(m: QuiverRep) -> Dict[Vertex, np.ndarray]:
    """At v: the common kernel of the maps leaving v."""
    F = m.field
    out = {}
    for v in m.quiver.vertices:
        outgoing = [m.maps[a.id] for a in m.quiver.out_arrows(v)]
        stacked = np.vstack([o.astype(object) for o in outgoing]) if outgoing else F.zeros(0, m.dims[v])
        out[v] = rank_kernel(F, F.matrix(stacked, stacked.shape))[1]
    return out


def radical_bases(m: QuiverRep) -> Dict[Vertex, np.ndarray]:
    """At v: the sum of the images of the maps entering v."""
    F = m.field
    out = {}
    for v in m.quiver.vertices:
        incoming = [m.maps[a.id] for a in m.quiver.in_arrows(v)]
        stacked = np.hstack([i.astype(object) for i in incoming]) if incoming else F.zeros(m.dims[v], 0)
        out[v] = column_space(F, F.matrix(stacked, stacked.shape))
    return out


def soc_and_quotient(m: QuiverRep) -> SocleSplit:
    soc, inclusion = subrep(m, socle_bases(m))
    q = quotient(m, {v: inclusion.comps[v] for v in m.quiver.vertices})
    return SocleSplit(soc, q.rep, inclusion, q.projection)


def rad_sub(m: QuiverRep) -> QuiverRep:
    return subrep(m, radical_bases(m))[0]


def top_generators(m: QuiverRep) -> List[Tuple[Vertex, np.ndarray]]:
    """Vectors whose classes form a basis of M / rad M, vertex by vertex."""
    F = m.field
    gens = []
    for v, rad in radical_bases(m).items():
        comp = complement_columns(F, rad)
        gens.extend((v, comp[:, k]) for k in range(comp.shape[1]))
    return gens


# --------------------- Hom ---------------------
def hom_space(m: QuiverRep, n: QuiverRep) -> List[RepMorphism]:
    """Basis of Hom(M, N) from the intertwining equations N(a) f_s = f_t M(a)."""
    F = m.field
    q = m.quiver
    offsets, total = {}, 0
    for v in q.vertices:
        offsets[v] = total
        total += n.dims[v] * m.dims[v]
    if total == 0:
        return []
    blocks = []
    for arrow in q.arrows:
        s, t = arrow.src, arrow.tgt
        eq = F.zeros(n.dims[t] * m.dims[s], total)
        left = F.kron(n.maps[arrow.id], F.eye(m.dims[s]))
        right = F.kron(F.eye(n.dims[t]), m.maps[arrow.id].T.copy())
        eq[:, offsets[s]:offsets[s] + n.dims[s] * m.dims[s]] = left
        if right.size:
            eq[:, offsets[t]:offsets[t] + n.dims[t] * m.dims[t]] = F.sub(
                eq[:, offsets[t]:offsets[t] + n.dims[t] * m.dims[t]], right)
        blocks.append(eq)
    system = np.vstack([b.astype(object) for b in blocks]) if blocks else F.zeros(0, total)
    _, basis = rank_kernel(F, F.matrix(system, system.shape))
    result = []
    for k in range(basis.shape[1]):
        col = basis[:, k]
        comps = {v: col[offsets[v]:offsets[v] + n.dims[v] * m.dims[v]].reshape(n.dims[v], m.dims[v])
                 for v in q.vertices}
        result.append(RepMorphism(m, n, comps))
    return result


def _invertible(F: FieldSpec, a: np.ndarray) -> bool:
    return inverse(F, a) is not None


def is_isomorphic(m: QuiverRep, n: QuiverRep, rng: Optional[np.random.Generator] = None) -> bool:
    """Exact when M is indecomposable; otherwise a seeded search over Hom(M, N)."""
    if m.dims != n.dims:
        return False
    if m.is_zero:
        return True
    F = m.field
    forward = hom_space(m, n)
    if not forward:
        return False
    for f in forward:
        if f.is_isomorphism():
            return True
    backward = hom_space(n, m)
    for f in forward:
        for g in backward:
            if _invertible(F, g.compose(f).total_matrix()):
                return True
    rng = rng or np.random.default_rng(config.SEED)
    for _ in range(config.GENERIC_TRIES):
        coeffs = F.random_matrix(rng, 1, len(forward))[0]
        f = forward[0].scale(coeffs[0])
        for c, g in zip(coeffs[1:], forward[1:]):
            f = f.add(g.scale(c))
        if f.is_isomorphism():
            return True
    return False


# --------------------- Indecomposability ---------------------
def end_matrices(m: QuiverRep) -> List[np.ndarray]:
    return [f.total_matrix() for f in hom_space(m, m)]


def _combination(F: FieldSpec, mats: Sequence[np.ndarray], coeffs) -> np.ndarray:
    out = F.zeros(*mats[0].shape)
    for c, a in zip(coeffs, mats):
        if c != 0:
            out = F.add(out, F.scale(c, a))
    return out


def _local_by_search(F: FieldSpec, mats: List[np.ndarray], rng: np.random.Generator) -> bool:
    """A finite-dimensional algebra is local iff each element is nilpotent or invertible."""
    p, d = F.prime, len(mats)
    if p ** d <= config.BRUTE_FORCE_ELEMENTS_MAX:
        candidates = itertools.product(range(p), repeat=d)
    else:
        candidates = (rng.integers(0, p, size=d).tolist() for _ in range(config.SMALL_FIELD_SAMPLES))
    for coeffs in candidates:
        e = _combination(F, mats, coeffs)
        if not is_nilpotent(F, e) and not _invertible(F, e):
            return False
    return True


def _char_poly_factors(F: FieldSpec, e: np.ndarray) -> List[int]:
    """Degrees of the distinct irreducible factors of the characteristic polynomial."""
    x = sympy.Symbol("x")
    if F.is_rational:
        rows = [[sympy.Rational(v.numerator, v.denominator) for v in row] for row in e]
        poly = sympy.Poly(sympy.Matrix(rows).charpoly(x).as_expr(), x, domain="QQ")
    else:
        rows = [[int(v) for v in row] for row in e]
        poly = sympy.Poly(sympy.Matrix(rows).charpoly(x).as_expr(), x, modulus=F.prime)
    _, factors = poly.factor_list()
    return [f.degree() for f, _ in factors]


def is_indecomposable(m: QuiverRep, rng: Optional[np.random.Generator] = None) -> bool:
    """
    Whether End(M) is local.

    Small prime fields are searched directly (exhaustively when End(M) has at
    most BRUTE_FORCE_ELEMENTS_MAX elements). Otherwise the trace form gives
    dim End/rad; generic elements then either split (two distinct irreducible
    factors: an idempotent exists) or generate End/rad as a field.

    Raises:
        RsqError: M is zero
    """
    if m.is_zero:
        raise RsqError("The zero representation is not indecomposable.")
    F = m.field
    mats = end_matrices(m)
    if len(mats) == 1:
        return True
    rng = rng or np.random.default_rng(config.SEED)
    n = m.total_dim
    if F.prime is not None and (F.prime <= n or F.prime <= 3):
        return _local_by_search(F, mats, rng)

    gram = F.zeros(len(mats), len(mats))
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            gram[i, j] = F.scalar(sum(F.matmul(a, b)[k, k] for k in range(n)))
    semisimple_dim = rank(F, gram)
    if semisimple_dim == 1:
        return True
    for _ in range(config.GENERIC_TRIES):
        e = _combination(F, mats, F.random_matrix(rng, 1, len(mats))[0])
        degrees = _char_poly_factors(F, e)
        if len(degrees) >= 2:
            return False
        if degrees and degrees[0] == semisimple_dim:
            return True
    logger.debug("No generic element generates End/rad (dim %s); treating as decomposable.", semisimple_dim)
    return False


# --------------------- Almost split sequences ---------------------
def _generated_map(q: Quiver, F: FieldSpec, gens: Sequence[Tuple[Vertex, np.ndarray]],
                   target: QuiverRep) -> Tuple[QuiverRep, RepMorphism]:
    """The map sum_k P_{a_k} -> target sending the k-th trivial path to the k-th vector."""
    parts = [projective_at(q, a, F) for a, _ in gens]
    source = direct_sum(parts) if parts else zero_rep(q, F)
    comps = {}
    for x in q.vertices:
        cols = [F.matmul(target.path_map(p, a), v.reshape(-1, 1)) for a, v in gens for p in paths(q, a, x)]
        comps[x] = F.matrix(np.hstack([c.astype(object) for c in cols]), (target.dims[x], len(cols))) \
            if cols else F.zeros(target.dims[x], 0)
    return source, RepMorphism(source, target, comps)


def _path_coefficients(q: Quiver, heads: Sequence[Vertex], a: Vertex, w: np.ndarray) -> Dict[Tuple[int, Path], object]:
    """Coordinates of w in (sum_l P_{heads[l]})(a), keyed by (summand, path heads[l] -> a)."""
    out, offset = {}, 0
    for l, b in enumerate(heads):
        for p in paths(q, b, a):
            if w[offset] != 0:
                out[(l, p)] = w[offset]
            offset += 1
    return out


def _local_scalar(F: FieldSpec, e: np.ndarray) -> object:
    """The scalar lam with e - lam*id nilpotent, for e in a local algebra."""
    n = e.shape[0]
    if F.prime is None or n % F.prime:
        return F.scalar(F.scalar(sum(e[k, k] for k in range(n))) * F.inv(F.scalar(n)))
    for lam in range(F.prime):
        if is_nilpotent(F, F.sub(e, F.scale(lam, F.eye(n)))):
            return F.scalar(lam)
    raise RsqError("Endomorphism algebra is not local.")


@dataclass
class ARSequence:
    left: QuiverRep
    middle: QuiverRep
    right: QuiverRep
    inclusion: RepMorphism
    projection: RepMorphism


def ar_sequence_ending_at(m: QuiverRep, strict: bool = False) -> Optional[ARSequence]:
    """
    Almost split sequence 0 -> tau M -> E -> M -> 0 for an indecomposable M.

    Build a minimal presentation P1 -> P0 -> M from top generators, set
    tau M = ker(nu P1 -> nu P0), pick a nonzero element of the socle of
    Ext^1(M, tau M) over End(tau M), and push P0 out along it.

    Returns:
        ARSequence, or None when M is projective (NotApplicableError if strict)
    """
    q, F = m.quiver, m.field
    _require_acyclic(q)
    # Projective cover P0 -> M
    gens0 = top_generators(m)
    p0, pi = _generated_map(q, F, gens0, m)
    omega, omega_in = kernel(pi)
    if omega.is_zero:
        if strict:
            raise NotApplicableError("Representation is projective; no almost split sequence ends in it.")
        return None

    # Projective cover of the syzygy: P1 -> P0
    gens1 = [(a, F.matmul(omega_in.comps[a], v.reshape(-1, 1)).reshape(-1)) for a, v in top_generators(omega)]
    p1, f1 = _generated_map(q, F, gens1, p0)
    heads = [b for b, _ in gens0]
    coeffs = [_path_coefficients(q, heads, a, w) for a, w in gens1]

    # nu f1: sum_k I_{a_k} -> sum_l I_{b_l}
    inj_src = [injective_at(q, a, F) for a, _ in gens1]
    inj_tgt = [injective_at(q, b, F) for b in heads]
    entries = {}
    for k, (a, _) in enumerate(gens1):
        for (l, p), c in coeffs[k].items():
            phi = injective_path_map(q, p, heads[l], a, F).scale(c)
            entries[(l, k)] = entries[(l, k)].add(phi) if (l, k) in entries else phi
    nu_f1 = block_rep_morphism(inj_src, inj_tgt, entries)
    tau_m, _ = kernel(nu_f1)

    # Extension class in the socle of Ext^1(M, tau M)
    xi = _socle_extension(q, F, tau_m, gens0, gens1, coeffs)
    _, xi_map = _generated_map(q, F, [(a, xi[k]) for k, (a, _) in enumerate(gens1)], tau_m)

    # Pushout of P1 -> P0 along the class
    target = direct_sum([p0, tau_m])
    g = RepMorphism(p1, target, {x: np.vstack([f1.comps[x].astype(object), F.neg(xi_map.comps[x]).astype(object)])
                                 for x in q.vertices})
    coker = cokernel(g)
    middle = coker.rep
    inclusion = RepMorphism(tau_m, middle, {
        x: F.matmul(coker.projection.comps[x],
                    np.vstack([F.zeros(p0.dims[x], tau_m.dims[x]).astype(object), F.eye(tau_m.dims[x]).astype(object)]))
        for x in q.vertices})
    projection = RepMorphism(middle, m, {
        x: F.matmul(np.hstack([pi.comps[x].astype(object), F.zeros(m.dims[x], tau_m.dims[x]).astype(object)]),
                    coker.section[x])
        for x in q.vertices})

    # Check exactness
    if not (inclusion.is_injective() and projection.is_surjective() and projection.compose(inclusion).is_zero()):
        raise RsqError("Constructed sequence is not exact.")
    logger.debug("AR sequence: tau %s -> %s -> %s", tau_m.dim_vector(), middle.dim_vector(), m.dim_vector())
    return ARSequence(tau_m, middle, m, inclusion, projection)


def _socle_extension(q, F, n: QuiverRep, gens0, gens1, coeffs) -> List[np.ndarray]:
    """
    Generator images (one vector of N(a_k) per generator of P1) of an extension
    class killed by rad End(N).
    """
    heads = [b for b, _ in gens0]
    row_sizes = [n.dims[a] for a, _ in gens1]
    col_sizes = [n.dims[b] for b in heads]
    row_off = np.cumsum([0] + row_sizes)
    col_off = np.cumsum([0] + col_sizes)
    total = int(row_off[-1])

    restriction = F.zeros(total, int(col_off[-1]))
    for k, (a, _) in enumerate(gens1):
        for (l, p), c in coeffs[k].items():
            block = F.scale(c, n.path_map(p, heads[l]))
            r0, c0 = row_off[k], col_off[l]
            restriction[r0:r0 + row_sizes[k], c0:c0 + col_sizes[l]] = F.add(
                restriction[r0:r0 + row_sizes[k], c0:c0 + col_sizes[l]], block)
    image = column_space(F, restriction)
    comp = complement_columns(F, image)
    if comp.shape[1] == 0:
        raise RsqError("Ext^1(M, tau M) vanishes; M is not indecomposable.")
    t_inv = inverse(F, np.hstack([image.astype(object), comp.astype(object)]))
    to_ext = t_inv[image.shape[1]:, :]

    equations = []
    for f in hom_space(n, n):
        lam = _local_scalar(F, f.total_matrix())
        r = f.add(RepMorphism.identity(n).scale(-lam))
        if r.is_zero():
            continue
        act = F.zeros(total, total)
        for k, (a, _) in enumerate(gens1):
            act[row_off[k]:row_off[k + 1], row_off[k]:row_off[k + 1]] = r.comps[a]
        equations.append(F.matmul(to_ext, act))
    if equations:
        system = np.vstack([e.astype(object) for e in equations])
        _, candidates = rank_kernel(F, F.matrix(system, system.shape))
    else:
        candidates = F.eye(total)
    base_rank = image.shape[1]
    for j in range(candidates.shape[1]):
        v = candidates[:, j:j + 1]
        if rank(F, np.hstack([image.astype(object), v.astype(object)])) > base_rank:
            return [v[row_off[k]:row_off[k + 1], 0] for k in range(len(gens1))]
    raise RsqError("No nonzero socle element in Ext^1(M, tau M).")


def tau(m: QuiverRep) -> Optional[QuiverRep]:
    seq = ar_sequence_ending_at(m)
    return None if seq is None else seq.left


# --------------------- Knitting ---------------------
def _dims_label(m: QuiverRep) -> str:
    return "(" + ",".join(str(d) for d in m.dim_vector()) + ")"


def _injective_vertex(q: Quiver, m: QuiverRep) -> Optional[Vertex]:
    for a in q.vertices:
        inj = injective_at(q, a, m.field)
        if inj.dims == m.dims and is_isomorphic(inj, m):
            return a
    return None


def knit_component(q: Quiver, seeds: Sequence[QuiverRep], steps: Optional[int] = None) -> ARWindow:
    """
    Knit the translation quiver to the left of a set of indecomposable injectives.

    A vertex is processed once all of its successors are; its mesh is then
    complete, tau X comes from the almost split sequence ending at X, and
    tau X receives one arrow per arrow entering X. Vertices left unprocessed
    when the step budget runs out form the boundary.

    Raises:
        RsqError: a seed is not an indecomposable injective
    """
    _require_acyclic(q)
    steps = config.KNIT_STEP_LIMIT if steps is None else steps
    w = ARWindow()
    seed_vertex = {}
    for m in seeds:
        a = _injective_vertex(q, m)
        if a is None:
            raise RsqError(f"Knitting seed {_dims_label(m)} is not an indecomposable injective.")
        if a not in seed_vertex:
            seed_vertex[a] = w.add_vertex(_dims_label(m), m.dims, payload=m, injective=True)
    for arrow in q.arrows:
        if arrow.src in seed_vertex and arrow.tgt in seed_vertex:
            w.add_arrow(seed_vertex[arrow.tgt], seed_vertex[arrow.src])

    processed = set()
    for _ in range(steps):
        ready = [v.id for v in w.vertices
                 if v.id not in processed and all(t in processed for t, _ in w.successors(v.id))]
        if not ready:
            break
        x = ready[0]
        processed.add(x)
        rep = w.payload[x]
        seq = ar_sequence_ending_at(rep)
        if seq is None:
            w.vertices[x].projective = True
            continue
        left = seq.left
        match = next((v.id for v in w.vertices if v.dims == left.dims and is_isomorphic(w.payload[v.id], left)), None)
        if match is None:
            match = w.add_vertex(_dims_label(left), left.dims, payload=left)
        w.set_tau(x, match)
        for y, mult in w.predecessors(x):
            w.add_arrow(match, y, mult)

    w.boundary = {v.id for v in w.vertices if v.id not in processed}
    if w.boundary:
        logger.info("Knitting stopped with %s unprocessed vertices", len(w.boundary))
    defects = mesh_defects(w)
    if defects:
        logger.warning("Knitted window has %s non-additive meshes", len(defects))
    return w
