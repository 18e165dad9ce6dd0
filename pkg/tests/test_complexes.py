import numpy as np
import pytest

from rsq.algebra import ProjMorphism, ProjSum, RSZAlgebra
from rsq.complexes import (ChainMap, HomSpace, ProjComplex, RadicalComplex, contractible, decompose_by_support,
                           direct_sum, hom_homotopy, homology_dims, homotopy_equivalent, is_null_homotopic,
                           lowest_homology_degree, mapping_cone, radicalize, random_radical_complex, reassembles,
                           stalk, support_quiver)
from rsq.errors import InsufficientWindowError, RsqError, ShapeMismatchError, UnreliableDegreeError


@pytest.fixture
def alg_a2(a2, F):
    return RSZAlgebra(a2, F)


def resolution_of_top(alg, F):
    """P_b -> P_a along alpha: resolves the simple at a over A2."""
    pa, pb = ProjSum({"a": 1}), ProjSum({"b": 1})
    d = ProjMorphism(alg, pb, pa, {("a", "b", "alpha"): F.eye(1)})
    return RadicalComplex(alg, {-1: pb, 0: pa}, {-1: d})


def test_shift_signs(alg_a2, F):
    c = resolution_of_top(alg_a2, F)
    s = c.shift(1)
    assert (s.lo, s.hi) == (-2, -1)
    assert s.diff(-2).blocks[("a", "b", "alpha")][0, 0] == F.scalar(-1)
    assert c.shift(2).diff(-3) == c.diff(-1)


def test_terms_outside_range_are_rejected(alg_a2):
    with pytest.raises(ShapeMismatchError):
        ProjComplex(alg_a2, {3: ProjSum({"a": 1})}, {}, 0, 1)


def test_radical_complex_rejects_trivial_blocks(alg_a2):
    with pytest.raises(RsqError):
        RadicalComplex(alg_a2, contractible(alg_a2, ProjSum({"a": 1}), 0).terms,
                       contractible(alg_a2, ProjSum({"a": 1}), 0).diffs)


def test_homology_of_resolution(alg_a2, F):
    c = resolution_of_top(alg_a2, F)
    assert homology_dims(c, 0) == {"a": 1, "b": 0}
    assert homology_dims(c, -1) == {"a": 0, "b": 0}
    assert lowest_homology_degree(c) == 0


def test_truncated_degrees_are_unreliable(alg_a2, F):
    c = resolution_of_top(alg_a2, F).truncate_below(0)
    assert c.truncated_below and c.lo == 0
    with pytest.raises(UnreliableDegreeError):
        homology_dims(c, 0)


def test_support_decomposition_randomized(a3, cycle3, F):
    rng = np.random.default_rng(3)
    for q, hi in ((a3, 3), (cycle3, 2)):
        alg = RSZAlgebra(q, F)
        for _ in range(100):
            c = random_radical_complex(alg, rng, 0, hi)
            assert c.total_dim() <= 40
            parts = decompose_by_support(c)
            assert len(parts) == len(support_quiver(c).components())
            assert reassembles(c, parts)


def test_support_decomposition_splits_stalks(alg_a2):
    c = direct_sum([stalk(alg_a2, ProjSum({"a": 1})), stalk(alg_a2, ProjSum({"b": 1}))])
    parts = decompose_by_support(c)
    assert [p.multiplicities() for p in parts] == [{0: {"a": 1}}, {0: {"b": 1}}]


def test_radicalize_randomized(a2, loop, F):
    rng = np.random.default_rng(5)
    for q in (a2, loop):
        alg = RSZAlgebra(q, F)
        for _ in range(50):
            c = random_radical_complex(alg, rng, 0, 3)
            noise = ProjSum({v: int(rng.integers(0, 3)) for v in q.vertices})
            noisy = direct_sum([c, contractible(alg, noise, int(rng.integers(0, 3)))])
            r = radicalize(noisy)
            assert r.is_radical()
            assert radicalize(r) == r
            for n in range(noisy.lo + 1, noisy.hi):
                assert homology_dims(r, n) == homology_dims(noisy, n)


def test_radicalize_cancels_cones(alg_a2, F):
    c = resolution_of_top(alg_a2, F)
    cone = mapping_cone(ChainMap.identity(c))
    assert radicalize(cone).is_zero


def test_hom_between_projectives(alg_a2):
    pa, pb = stalk(alg_a2, ProjSum({"a": 1})), stalk(alg_a2, ProjSum({"b": 1}))
    assert hom_homotopy(pb, pa).dim == 1
    assert hom_homotopy(pa, pb).dim == 0
    assert hom_homotopy(pa, pa).dim == 1


def test_ext_through_resolution(alg_a2, F):
    s_a = resolution_of_top(alg_a2, F)
    s_b = stalk(alg_a2, ProjSum({"b": 1}))
    assert hom_homotopy(s_a, s_b.shift(1)).dim == 1
    assert hom_homotopy(s_a, s_b).dim == 0
    assert hom_homotopy(s_a, s_b.shift(2)).dim == 0


def test_contractible_complexes_have_no_maps(alg_a2):
    k = contractible(alg_a2, ProjSum({"a": 1}), 0)
    assert hom_homotopy(k, k).dim == 0
    assert is_null_homotopic(ChainMap.identity(k))


def test_homotopy_equivalence_ignores_contractible_summands(alg_a2, F):
    c = resolution_of_top(alg_a2, F)
    noisy = direct_sum([c, contractible(alg_a2, ProjSum({"b": 1}), -1)])
    assert homotopy_equivalent(c, noisy)
    assert not homotopy_equivalent(c, stalk(alg_a2, ProjSum({"a": 1})))


@pytest.mark.parametrize("field_name", ["F", "F2"])
def test_homotopy_equivalence_on_decomposable_complexes(request, a2, field_name):
    F = request.getfixturevalue(field_name)
    alg = RSZAlgebra(a2, F)
    pa, pb = ProjSum({"a": 1}), ProjSum({"b": 1})
    x = direct_sum([stalk(alg, pa), stalk(alg, pb)])
    assert homotopy_equivalent(x, x)
    assert homotopy_equivalent(x, direct_sum([stalk(alg, pb), stalk(alg, pa)]))
    y = direct_sum([x, stalk(alg, ProjSum({"a": 2})), resolution_of_top(alg, F)])
    assert homotopy_equivalent(y, y)


def test_equal_terms_do_not_force_equivalence(alg_a2, F):
    c = resolution_of_top(alg_a2, F)
    split = direct_sum([stalk(alg_a2, ProjSum({"b": 1}), -1), stalk(alg_a2, ProjSum({"a": 1}))])
    assert c.multiplicities() == split.multiplicities()
    assert not homotopy_equivalent(c, split)


def test_hom_basis_maps_are_chain_maps(alg_a2, F):
    c = resolution_of_top(alg_a2, F)
    space = HomSpace(c, c)
    assert space.dim == 1
    assert all(f.is_chain_map() for f in space.basis)


def test_truncated_source_needs_depth(loop, F):
    alg = RSZAlgebra(loop, F)
    p = ProjSum({"a": 1})
    alpha = ProjMorphism(alg, p, p, {("a", "a", "alpha"): F.eye(1)})
    terms = {n: p for n in range(-2, 1)}
    chain = RadicalComplex(alg, terms, {-2: alpha, -1: alpha}, -2, 0, truncated_below=True)
    with pytest.raises(InsufficientWindowError):
        HomSpace(chain, chain)
