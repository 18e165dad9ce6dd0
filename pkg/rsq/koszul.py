"""
Koszul functor from representations of a covering window (opposite quiver)
into radical complexes of projectives, and its push-down to the base algebra.

    - koszul_rep: F(M)^n = sum over level -n vertices x of P[x] (x) M(x)
    - koszul_morphism / koszul_total: morphisms and bounded complexes of reps
    - pushdown: relabel (b, n) -> b and (alpha, n) -> alpha
    - twist, kappa and the translation rho acting on reps and complexes
    - extract_rep: the representation behind a support-connected complex
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Tuple

from rsq.algebra import ProjMorphism, ProjSum, RSZAlgebra, block_morphism, stack
from rsq.complexes import ChainMap, ProjComplex, RadicalComplex, homology_dims, support_quiver
from rsq.cover import CoverWindow, label
from rsq.errors import RsqError, ShapeMismatchError, TrivialTranslationError, WindowError
from rsq.linalg import FieldSpec
from rsq.reps import QuiverRep, RepComplex, RepMorphism, injective_at

logger = logging.getLogger(__name__)


def window_algebra(cw: CoverWindow, field: FieldSpec) -> RSZAlgebra:
    return RSZAlgebra(cw.quiver(), field)


def base_algebra(cw: CoverWindow, field: FieldSpec) -> RSZAlgebra:
    return RSZAlgebra(cw.base, field)


def _check_rep(cw: CoverWindow, m: QuiverRep) -> None:
    if m.quiver != cw.quiver().opposite():
        raise ShapeMismatchError("Representation is not over the opposite of the window quiver.")


def _truncation(cw: CoverWindow, m: QuiverRep) -> bool:
    """Whether the support of M reaches a window vertex with covering neighbors outside."""
    support = m.support()
    truncated = False
    if any(cw.cut_above(v) for v in support):
        logger.warning("Koszul image touches level %s; truncated below degree %s", cw.hi, -cw.hi)
        truncated = True
    if any(cw.cut_below(v) for v in support):
        logger.warning("Koszul image touches level %s, which has predecessors outside the window", cw.lo)
        truncated = True
    return truncated


# --------------------- Koszul functor ---------------------
def koszul_rep(cw: CoverWindow, m: QuiverRep) -> RadicalComplex:
    """
    F(M): degree n holds P[x] (x) M(x) for x at level -n; the block of d^n
    from P[x] to P[y] along alpha: y -> x is M(alpha^o).
    """
    _check_rep(cw, m)
    alg = window_algebra(cw, m.field)
    terms: Dict[int, ProjSum] = {}
    diffs: Dict[int, ProjMorphism] = {}
    for level in range(cw.lo, cw.hi + 1):
        terms[-level] = ProjSum({x: m.dims[x] for x in cw.level(level)})
    for level in range(cw.lo + 1, cw.hi + 1):
        n = -level
        blocks = {}
        for arrow in cw.arrows:
            y, x = arrow.src, arrow.tgt
            if x[1] == level and m.dims[x] and m.dims[y]:
                blocks[(y, x, arrow.id)] = m.maps[arrow.id]
        diffs[n] = ProjMorphism(alg, terms[n], terms[n + 1], blocks)
    return RadicalComplex(alg, terms, diffs, -cw.hi, -cw.lo, _truncation(cw, m))


def koszul_morphism(cw: CoverWindow, f: RepMorphism) -> ChainMap:
    """F(f)^n = sum of id_{P[x]} (x) f(x) over level -n."""
    source, target = koszul_rep(cw, f.source), koszul_rep(cw, f.target)
    alg = source.algebra
    comps = {}
    for level in range(cw.lo, cw.hi + 1):
        n = -level
        blocks = {(x, x, None): f.comps[x] for x in cw.level(level) if f.comps[x].size}
        comps[n] = ProjMorphism(alg, source.term(n), target.term(n), blocks)
    return ChainMap(source, target, comps)


def koszul_total(cw: CoverWindow, mseq: RepComplex) -> ProjComplex:
    """
    Sum-total complex of the double complex F(M^i)^j with vertical
    differentials (-1)^i d_{F(M^i)} and horizontal maps F(d_M^i).
    """
    images = {i: koszul_rep(cw, m) for i, m in mseq.terms.items()}
    maps = {i: koszul_morphism(cw, d) for i, d in mseq.diffs.items()}
    degrees = mseq.degrees
    alg = next(iter(images.values())).algebra
    lo = min(images[i].lo + i for i in degrees)
    hi = max(images[i].hi + i for i in degrees)

    def part(i, n):
        return images[i].term(n - i)

    terms, diffs = {}, {}
    for n in range(lo, hi + 1):
        terms[n] = stack([part(i, n) for i in degrees])[0]
    for n in range(lo, hi):
        entries = {}
        for k, i in enumerate(degrees):
            d = images[i].diff(n - i)
            entries[(k, k)] = d.neg() if i % 2 else d
            if i in maps and k + 1 < len(degrees) and degrees[k + 1] == i + 1:
                entries[(k + 1, k)] = maps[i].component(n - i)
        diffs[n] = block_morphism(alg, [part(i, n + 1) for i in degrees], [part(i, n) for i in degrees], entries)
    truncated = any(c.truncated_below for c in images.values())
    return ProjComplex(alg, terms, diffs, lo, hi, truncated)


# --------------------- Push-down ---------------------
def _fiber_offsets(s: ProjSum) -> Tuple[ProjSum, Dict[Hashable, int]]:
    """Aggregate a window sum over the base; offsets of each covering vertex inside its fiber."""
    running: Dict[Hashable, int] = {}
    offsets = {}
    for (b, level), mult in s.items():
        offsets[(b, level)] = running.get(b, 0)
        running[b] = offsets[(b, level)] + mult
    return ProjSum(running), offsets


def _push_morphism(alg: RSZAlgebra, f: ProjMorphism) -> ProjMorphism:
    F = alg.field
    source, src_off = _fiber_offsets(f.source)
    target, tgt_off = _fiber_offsets(f.target)
    blocks = {}
    for (y, x, gamma), mat in f.blocks.items():
        key = (y[0], x[0], None if gamma is None else gamma[0])
        if key not in blocks:
            blocks[key] = F.zeros(target.mult(key[0]), source.mult(key[1]))
        r0, c0 = tgt_off[y], src_off[x]
        blocks[key][r0:r0 + mat.shape[0], c0:c0 + mat.shape[1]] = F.add(
            blocks[key][r0:r0 + mat.shape[0], c0:c0 + mat.shape[1]], mat)
    return ProjMorphism(alg, source, target, blocks)


def pushdown(cw: CoverWindow, c: ProjComplex) -> ProjComplex:
    """Relabel every P[(x, n)] as P[x] and every arrow block by its base arrow; fibers meeting in a degree aggregate."""
    alg = base_algebra(cw, c.field)
    terms = {n: _fiber_offsets(c.term(n))[0] for n in c.degrees()}
    diffs = {n: _push_morphism(alg, d) for n, d in c.diffs.items()}
    cls = RadicalComplex if c.is_radical() else ProjComplex
    return cls(alg, terms, diffs, c.lo, c.hi, c.truncated_below)


def pushdown_map(cw: CoverWindow, f: ChainMap, source: Optional[ProjComplex] = None,
                 target: Optional[ProjComplex] = None) -> ChainMap:
    alg = base_algebra(cw, f.source.field)
    source = source or pushdown(cw, f.source)
    target = target or pushdown(cw, f.target)
    return ChainMap(source, target, {n: _push_morphism(alg, g) for n, g in f.components.items()})


# --------------------- Twist and translation ---------------------
def twist(c: ProjComplex, p: int) -> ProjComplex:
    """t^p: same terms, differential multiplied by (-1)^p."""
    diffs = {n: d.neg() for n, d in c.diffs.items()} if p % 2 else dict(c.diffs)
    return type(c)(c.algebra, c.terms, diffs, c.lo, c.hi, c.truncated_below)


def kappa(c: ProjComplex, p: int) -> ChainMap:
    """The isomorphism c -> t^p(c) with components (-1)^(pn) id."""
    target = twist(c, p)
    comps = {n: ProjMorphism.identity(c.algebra, s).scale(-1 if (p * n) % 2 else 1) for n, s in c.terms.items()}
    return ChainMap(c, target, comps)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    """f[k] between the shifted complexes."""
    comps = {n - k: g for n, g in f.components.items()}
    return ChainMap(f.source.shift(k), f.target.shift(k), comps)


def rho_act_rep(cw: CoverWindow, m: QuiverRep, s: int) -> QuiverRep:
    """(rho^s M)(x) = M(rho^-s x); the support must stay inside the window."""
    _check_rep(cw, m)
    if s and cw.r == 0:
        raise TrivialTranslationError("trivial translation group: the quiver is gradable (r_Q = 0).")
    step = s * cw.r
    dims, maps = {}, {}
    for (b, n), d in m.dims.items():
        if d:
            if (b, n + step) not in cw:
                raise WindowError(f"rho^{s} moves {label((b, n))} outside the window.")
            dims[(b, n + step)] = d
    opp = cw.quiver().opposite()
    for arrow in opp.arrows:
        alpha, n = arrow.id
        shifted = (alpha, n - step)
        if opp.has_arrow(shifted):
            maps[arrow.id] = m.maps[shifted]
    return QuiverRep(opp, m.field, dims, maps)


def rho_act_complex(cw: CoverWindow, c: ProjComplex, s: int) -> ProjComplex:
    """Relabel (b, n) -> (b, n + s r) and (alpha, n) -> (alpha, n + s r), keeping degrees."""
    step = s * cw.r
    if s and cw.r == 0:
        raise TrivialTranslationError("trivial translation group: the quiver is gradable (r_Q = 0).")
    for n in c.nonzero_degrees():
        for v in c.term(n).vertices:
            if (v[0], v[1] + step) not in cw:
                raise WindowError(f"rho^{s} moves {label(v)} outside the window.")

    def move(v):
        return v[0], v[1] + step

    terms = {n: ProjSum({move(v): m for v, m in sm.items()}) for n, sm in c.terms.items()}
    diffs = {n: d.relabel(c.algebra, move, move) for n, d in c.diffs.items()}
    return type(c)(c.algebra, terms, diffs, c.lo, c.hi, c.truncated_below)


# --------------------- Inverse direction ---------------------
def extract_rep(cw: CoverWindow, c: ProjComplex, field: Optional[FieldSpec] = None) -> Tuple[QuiverRep, int]:
    """
    The representation N and shift s with c = F(N)[s] for a support-connected
    radical complex over the window algebra: N(x) = M_x, N(alpha^o) = (-1)^s M_alpha.

    Raises:
        RsqError: c is not radical, or its summands sit at inconsistent levels
    """
    if not c.is_radical():
        raise RsqError("Only radical complexes are Koszul images.")
    field = field or c.field
    shifts = {-n - x[1] for n in c.nonzero_degrees() for x in c.term(n).vertices}
    if len(shifts) > 1:
        raise RsqError("Summands at inconsistent levels; decompose by support first.")
    s = shifts.pop() if shifts else 0
    dims = {}
    for n in c.nonzero_degrees():
        for x, mult in c.term(n).items():
            dims[x] = mult
    sign = -1 if s % 2 else 1
    maps = {}
    for n, d in c.diffs.items():
        for (y, x, gamma), mat in d.blocks.items():
            maps[gamma] = field.scale(sign, mat) if sign < 0 else mat
    return QuiverRep(cw.quiver().opposite(), field, dims, maps), s


# --------------------- Injective images ---------------------
@dataclass
class InjectiveImageReport:
    vertex: Tuple[Hashable, int]
    top_degree: Optional[int]
    expected_top: int
    homology: Dict[int, Dict[Hashable, int]] = field(default_factory=dict)
    unreliable: List[int] = field(default_factory=list)
    passed: bool = False
    partial: bool = False

    def summary(self) -> str:
        verdict = "partial pass" if self.passed and self.partial else ("pass" if self.passed else "fail")
        return f"{label(self.vertex)}: {verdict}, top degree {self.top_degree}"


def verify_injective_image(cw: CoverWindow, x: Tuple[Hashable, int], field: FieldSpec) -> InjectiveImageReport:
    """Check F(I_{x^o}) against the shifted projective resolution of the simple at x."""
    if x not in cw:
        raise WindowError(f"{label(x)} is not a vertex of the window.")
    opp = cw.quiver().opposite()
    c = koszul_rep(cw, injective_at(opp, x, field))
    t = x[1]
    top = c.nonzero_degrees()[-1] if not c.is_zero else None
    report = InjectiveImageReport(x, top, -t)
    ok = top == -t and c.term(top) == ProjSum({x: 1})
    for n in c.degrees():
        if not c.reliable(n):
            report.unreliable.append(n)
            continue
        dims = homology_dims(c, n)
        nonzero = {v: d for v, d in dims.items() if d}
        report.homology[n] = nonzero
        expected = {x: 1} if n == -t else {}
        ok = ok and nonzero == expected
    report.partial = bool(report.unreliable)
    report.passed = ok
    return report


def is_support_connected(c: ProjComplex) -> bool:
    return len(support_quiver(c).components()) <= 1
