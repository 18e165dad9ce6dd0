import itertools

import numpy as np
import pytest

from rsq.ar_window import mesh_defects, shape_report
from rsq.cover import build_cover_window
from rsq.errors import NotApplicableError, RsqError, ShapeMismatchError
from rsq.linalg import is_zero, rank
from rsq.reps import (QuiverRep, ar_sequence_ending_at, cokernel, direct_sum, end_matrices,
                      hom_space, injective_at, is_indecomposable, is_isomorphic, kernel, knit_component,
                      projective_at, projective_path_map, rad_sub, simple_at, soc_and_quotient, tau,
                      top_generators)


def test_standard_representations(a3, F):
    assert injective_at(a3, "c", F).dims == {"a": 1, "b": 1, "c": 1}
    assert injective_at(a3, "a", F).dims == {"a": 1, "b": 0, "c": 0}
    assert projective_at(a3, "a", F).dims == {"a": 1, "b": 1, "c": 1}
    assert projective_at(a3, "c", F).dims == {"a": 0, "b": 0, "c": 1}


def test_cyclic_quivers_have_no_path_bases(loop, F):
    with pytest.raises(RsqError):
        injective_at(loop, "a", F)


def test_map_shapes_are_checked(a2, F):
    with pytest.raises(ShapeMismatchError):
        QuiverRep(a2, F, {"a": 1, "b": 1}, {"alpha": [[1, 0]]})


def test_hom_from_projective_counts_dimension(a3, F):
    m = injective_at(a3, "c", F)
    for v in a3.vertices:
        assert len(hom_space(projective_at(a3, v, F), m)) == m.dims[v]


def test_path_maps_and_cokernel(a2, F):
    f = projective_path_map(a2, ("alpha",), "a", "b", F)
    assert f.is_morphism() and f.is_injective()
    assert cokernel(f).rep.dims == {"a": 1, "b": 0}
    k, inclusion = kernel(f)
    assert k.is_zero


def test_socle_radical_top(a3, F):
    p = projective_at(a3, "a", F)
    assert soc_and_quotient(p).soc.dims == {"a": 0, "b": 0, "c": 1}
    assert soc_and_quotient(p).quotient.dims == {"a": 1, "b": 1, "c": 0}
    assert rad_sub(p).dims == {"a": 0, "b": 1, "c": 1}
    assert [v for v, _ in top_generators(p)] == ["a"]


def test_isomorphism_and_indecomposability(a2, F):
    p_a, i_b = projective_at(a2, "a", F), injective_at(a2, "b", F)
    assert is_isomorphic(p_a, i_b)
    assert is_indecomposable(p_a)
    split = direct_sum([simple_at(a2, "a", F), simple_at(a2, "b", F)])
    assert not is_indecomposable(split)
    assert not is_isomorphic(split, p_a)
    with pytest.raises(RsqError):
        is_indecomposable(QuiverRep(a2, F))


def test_kronecker_regular_modules(kronecker, F):
    m = QuiverRep(kronecker, F, {"a": 1, "b": 1}, {"alpha": [[1]], "beta": [[1]]})
    n = QuiverRep(kronecker, F, {"a": 1, "b": 1}, {"alpha": [[1]], "beta": [[2]]})
    assert is_indecomposable(m)
    assert not is_isomorphic(m, n)
    assert not is_indecomposable(direct_sum([m, n]))


def test_almost_split_sequence(a2, F):
    seq = ar_sequence_ending_at(simple_at(a2, "a", F))
    assert seq.left.dims == {"a": 0, "b": 1}
    assert seq.middle.dims == {"a": 1, "b": 1}
    assert seq.projection.compose(seq.inclusion).is_zero()
    assert tau(projective_at(a2, "a", F)) is None
    with pytest.raises(NotApplicableError):
        ar_sequence_ending_at(simple_at(a2, "b", F), strict=True)


def test_almost_split_sequence_on_d4(d4, F):
    m = injective_at(d4, "b", F)
    seq = ar_sequence_ending_at(m)
    for v in d4.vertices:
        assert seq.middle.dims[v] == seq.left.dims[v] + m.dims[v]


def test_knit_a3_window(a3, F):
    cw = build_cover_window(a3, 0, 2)
    opp = cw.quiver().opposite()
    w = knit_component(opp, [injective_at(opp, x, F) for x in opp.vertices])
    assert len(w.vertices) == 6
    assert w.is_complete
    assert mesh_defects(w) == []
    assert sum(v.projective for v in w.vertices) == 3
    report = shape_report(w)
    assert (report.tag, report.param) == ("ZDelta", "DynkinA(3)")


def test_knitting_needs_injective_seeds(a3, F):
    with pytest.raises(RsqError):
        knit_component(a3, [projective_at(a3, "b", F)])


def _has_nontrivial_idempotent(m):
    F = m.field
    mats = end_matrices(m)
    n = m.total_dim
    identity = F.eye(n)
    for coeffs in itertools.product(range(F.prime), repeat=len(mats)):
        e = F.zeros(n, n)
        for c, a in zip(coeffs, mats):
            if c:
                e = F.add(e, F.scale(c, a))
        if np.array_equal(F.matmul(e, e), e) and not is_zero(e) and not np.array_equal(e, identity):
            return True
    return False


def _end_dim(m):
    """Nullity of (X_v) -> (X_t M_a - M_a X_s), solved from scratch."""
    F, q = m.field, m.quiver
    columns = []
    for v in q.vertices:
        d = m.dims[v]
        for i, j in itertools.product(range(d), repeat=2):
            x = {w: F.zeros(m.dims[w], m.dims[w]) for w in q.vertices}
            x[v][i, j] = 1
            parts = [F.sub(F.matmul(x[a.tgt], m.maps[a.id]), F.matmul(m.maps[a.id], x[a.src])).reshape(-1)
                     for a in q.arrows]
            columns.append(np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64))
    if not columns:
        return 0
    if not len(columns[0]):
        return len(columns)
    return len(columns) - rank(F, np.array(columns, dtype=np.int64).T)


def _thin_interval(m):
    """Type A oracle: thin, connected support, nonzero maps inside it."""
    if any(d > 1 for d in m.dims.values()):
        return False
    support = {v for v, d in m.dims.items() if d}
    inside = [a for a in m.quiver.arrows if a.src in support and a.tgt in support]
    return len(inside) == len(support) - 1 and all(m.maps[a.id][0, 0] != 0 for a in inside)


def _kronecker_oracle(m):
    """Roots are |m - n| <= 1; real roots are bricks; (n, n) with n <= 2 has End of dimension <= 8."""
    small, large = sorted(m.dims.values())
    if large - small > 1:
        return False
    if large - small == 1:
        return _end_dim(m) == 1
    return not _has_nontrivial_idempotent(m)


def _all_reps(opp, F2, dims):
    dim_map = dict(zip(opp.vertices, dims))
    shapes = [(a.id, (dim_map[a.tgt], dim_map[a.src])) for a in opp.arrows]
    entries = sum(r * c for _, (r, c) in shapes)
    for bits in itertools.product((0, 1), repeat=entries):
        maps, at = {}, 0
        for arrow_id, (r, c) in shapes:
            maps[arrow_id] = F2.matrix(list(bits[at:at + r * c]), (r, c))
            at += r * c
        yield QuiverRep(opp, F2, dim_map, maps)


@pytest.mark.parametrize("name", ["a2", "a3"])
def test_indecomposability_on_type_a_windows(name, request, F2):
    q = request.getfixturevalue(name)
    opp = build_cover_window(q, 0, len(q.vertices) - 1).quiver().opposite()
    found, checked = 0, 0
    for dims in itertools.product(range(7), repeat=len(opp.vertices)):
        if not 0 < sum(dims) <= 6:
            continue
        for m in _all_reps(opp, F2, dims):
            expected = _thin_interval(m)
            assert is_indecomposable(m) == expected, (dims, m.maps)
            found += expected
            checked += 1
    n = len(q.vertices)
    assert found == n * (n + 1) // 2
    assert checked > 1000


def test_indecomposability_on_kronecker_window(kronecker, F2):
    opp = build_cover_window(kronecker, 0, 1).quiver().opposite()
    checked = 0
    # every map pair with 2 * dim_a * dim_b <= 12
    for dims in itertools.product(range(7), repeat=2):
        if not 0 < sum(dims) <= 6 or dims[0] * dims[1] > 6:
            continue
        for m in _all_reps(opp, F2, dims):
            assert is_indecomposable(m) == _kronecker_oracle(m), (dims, m.maps)
            checked += 1
    assert checked > 10000
