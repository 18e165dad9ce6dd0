import pytest

from rsq.algebra import ProjSum
from rsq.complexes import direct_sum, hom_homotopy, homology_dims, radicalize
from rsq.cover import build_cover_window
from rsq.errors import RsqError, ShapeMismatchError, TrivialTranslationError, WindowError
from rsq.koszul import (extract_rep, is_support_connected, kappa, koszul_morphism, koszul_rep, koszul_total,
                        pushdown, rho_act_complex, rho_act_rep, twist, verify_injective_image)
from rsq.reps import QuiverRep, RepComplex, RepMorphism, injective_at, injective_path_map, knit_component, simple_at


@pytest.mark.parametrize("name, lo, hi, partial", [
    ("a2", 0, 1, False),
    ("a3", 0, 2, False),
    ("d4", -1, 0, False),
    ("loop", 0, 4, True),
    ("two_cycle", 0, 4, True),
])
def test_injective_images_resolve_simples(request, F, name, lo, hi, partial):
    cw = build_cover_window(request.getfixturevalue(name), lo, hi)
    for x in cw.vertices:
        report = verify_injective_image(cw, x, F)
        assert report.passed, report.summary()
        assert report.top_degree == -x[1]
        if not partial:
            assert not report.unreliable


def test_injective_image_outside_window(a2, F):
    cw = build_cover_window(a2, 0, 1)
    with pytest.raises(WindowError):
        verify_injective_image(cw, ("a", 1), F)


def test_koszul_image_of_injective(a3, F):
    cw = build_cover_window(a3, 0, 2)
    opp = cw.quiver().opposite()
    c = koszul_rep(cw, injective_at(opp, ("a", 0), F))
    assert c.multiplicities() == {-2: {("c", 2): 1}, -1: {("b", 1): 1}, 0: {("a", 0): 1}}
    assert c.is_radical() and not c.truncated_below
    assert homology_dims(c, 0) == {("a", 0): 1, ("b", 1): 0, ("c", 2): 0}
    assert not any(homology_dims(c, -1).values())


def test_koszul_needs_opposite_window_rep(a2, F):
    cw = build_cover_window(a2, 0, 1)
    with pytest.raises(ShapeMismatchError):
        koszul_rep(cw, simple_at(cw.quiver(), ("a", 0), F))


def test_loop_image_is_truncated(loop, F):
    cw = build_cover_window(loop, 0, 4)
    opp = cw.quiver().opposite()
    c = koszul_rep(cw, injective_at(opp, ("a", 1), F))
    assert c.truncated_below
    assert not c.reliable(-4) and c.reliable(-3)


def test_morphism_shift_dichotomy(a3, F):
    cw = build_cover_window(a3, 0, 2)
    opp = cw.quiver().opposite()
    knitted = knit_component(opp, [injective_at(opp, x, F) for x in opp.vertices])
    images = [koszul_rep(cw, knitted.payload[v.id]) for v in knitted.vertices]
    for fm in images:
        for fn in images:
            for s in (-2, -1, 2, 3):
                assert hom_homotopy(fm, fn.shift(s)).dim == 0
    assert hom_homotopy(images[0], images[0]).dim == 1


def test_koszul_morphism_is_chain_map(a3, F):
    cw = build_cover_window(a3, 0, 2)
    opp = cw.quiver().opposite()
    f = injective_path_map(opp, (("alpha", 0),), ("b", 1), ("a", 0), F)
    g = koszul_morphism(cw, f)
    assert g.is_chain_map()
    assert not g.is_zero()


def test_total_complex_of_identity_is_contractible(a3, F):
    cw = build_cover_window(a3, 0, 2)
    opp = cw.quiver().opposite()
    m = injective_at(opp, ("a", 0), F)
    total = koszul_total(cw, RepComplex({-1: m, 0: m}, {-1: RepMorphism.identity(m)}))
    assert total.check_d_squared()
    assert not total.is_radical()
    assert radicalize(total).is_zero


def test_total_complex_of_stalk(a3, F):
    cw = build_cover_window(a3, 0, 2)
    opp = cw.quiver().opposite()
    m = injective_at(opp, ("b", 1), F)
    assert koszul_total(cw, RepComplex.stalk(m)) == koszul_rep(cw, m)
    assert koszul_total(cw, RepComplex.stalk(m, 1)) == koszul_rep(cw, m).shift(-1)


def test_pushdown_relabels_to_base(a3, F):
    cw = build_cover_window(a3, 0, 2)
    opp = cw.quiver().opposite()
    c = pushdown(cw, koszul_rep(cw, injective_at(opp, ("a", 0), F)))
    assert c.algebra.quiver == a3
    assert c.multiplicities() == {-2: {"c": 1}, -1: {"b": 1}, 0: {"a": 1}}
    assert homology_dims(c, 0) == {"a": 1, "b": 0, "c": 0}
    assert c.is_radical()


def test_pushdown_aggregates_fibers(loop, F):
    cw = build_cover_window(loop, 0, 4)
    opp = cw.quiver().opposite()
    x = koszul_rep(cw, simple_at(opp, ("a", 0), F))
    y = koszul_rep(cw, simple_at(opp, ("a", 1), F)).shift(-1)
    c = pushdown(cw, direct_sum([x, y]))
    assert c.term(0) == ProjSum({"a": 2})


def test_extract_rep_recovers_shifted_image(a3, F):
    cw = build_cover_window(a3, 0, 2)
    opp = cw.quiver().opposite()
    m = injective_at(opp, ("a", 0), F)
    for s in (0, 3):
        n, shift = extract_rep(cw, koszul_rep(cw, m).shift(s), F)
        assert shift == s
        assert n.equals(m)


def test_extract_rep_rejects_mixed_levels(a2, F):
    cw = build_cover_window(a2, 0, 1)
    opp = cw.quiver().opposite()
    x = koszul_rep(cw, simple_at(opp, ("a", 0), F))
    y = koszul_rep(cw, simple_at(opp, ("b", 1), F))
    with pytest.raises(RsqError):
        extract_rep(cw, direct_sum([x, y.shift(1)]))
    assert not is_support_connected(direct_sum([x, y.shift(1)]))


def test_twist_and_kappa(a3, F):
    cw = build_cover_window(a3, 0, 2)
    opp = cw.quiver().opposite()
    c = koszul_rep(cw, injective_at(opp, ("a", 0), F))
    assert twist(twist(c, 1), 1) == c
    assert twist(c, 2) == c
    k = kappa(c, 1)
    assert k.is_chain_map()
    assert k.target == twist(c, 1)


def test_translation_commutes_with_koszul(loop, F):
    cw = build_cover_window(loop, 0, 4)
    opp = cw.quiver().opposite()
    m = QuiverRep(opp, F, {("a", 1): 1, ("a", 2): 1}, {("alpha", 1): [[1]]})
    moved = rho_act_rep(cw, m, 1)
    assert moved.dims[("a", 3)] == 1 and moved.dims[("a", 1)] == 0
    expected = twist(rho_act_complex(cw, koszul_rep(cw, m), 1).shift(1), 1)
    assert koszul_rep(cw, moved) == expected


def test_translation_leaving_window(loop, F):
    cw = build_cover_window(loop, 0, 4)
    opp = cw.quiver().opposite()
    with pytest.raises(WindowError):
        rho_act_rep(cw, simple_at(opp, ("a", 4), F), 1)


def test_translation_needs_nongradable_quiver(a2, F):
    cw = build_cover_window(a2, 0, 1)
    opp = cw.quiver().opposite()
    with pytest.raises(TrivialTranslationError):
        rho_act_rep(cw, simple_at(opp, ("a", 0), F), 1)
    assert rho_act_rep(cw, simple_at(opp, ("a", 0), F), 0).dims[("a", 0)] == 1


def test_support_on_a_cut_lower_level_is_flagged(loop_with_tail, F):
    cw = build_cover_window(loop_with_tail, 0, 3)
    opp = cw.quiver().opposite()
    m = QuiverRep(opp, F, {("a", 0): 1, ("b", 1): 1}, {("gamma", 0): [[1]]})
    assert koszul_rep(cw, m).truncated_below
    assert not koszul_rep(cw, simple_at(opp, ("b", 1), F)).truncated_below
