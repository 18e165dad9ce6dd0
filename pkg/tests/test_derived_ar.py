import pytest

from rsq.ar_window import mesh_defects
from rsq.complexes import homology_dims, homotopy_equivalent
from rsq.cover import build_cover_window
from rsq.derived_ar import (DerivedObject, ar_triangle, classify_components, component_evidence,
                            connecting_profile, hom_degree_pattern, irreducible_to_simples, locate_simple,
                            normalize_shift, simple_complex, theta_act)
from rsq.errors import NotComputableError, RsqError
from rsq.koszul import koszul_rep, pushdown
from rsq.quiver import Quiver
from rsq.reps import direct_sum, injective_at, projective_at, rad_sub, simple_at, soc_and_quotient


# --------------------- Shift arithmetic ---------------------
def test_normalize_shift():
    assert normalize_shift(3, 7) == (2, 1)
    assert normalize_shift(3, -1) == (-1, 2)
    assert normalize_shift(0, -5) == (0, -5)


def test_theta_act():
    assert theta_act(3, (0, 2)) == (1, -1)
    assert theta_act(3, (0, 2), -1) == (-1, 5)


@pytest.mark.parametrize("name, vertex, expected", [
    ("a3", "b", (("b", 1), -1)),
    ("cycle3", "b", (("b", -2), 2)),
    ("two_cycle", "b", (("b", -1), 1)),
    ("loop", "a", (("a", 0), 0)),
])
def test_locate_simple(request, name, vertex, expected):
    assert locate_simple(request.getfixturevalue(name), vertex, 0) == expected


@pytest.mark.parametrize("n, x, s", [(-1, ("b", -1), 0), (0, ("b", -1), 1), (1, ("b", 1), 0), (2, ("b", 1), 1),
                                     (3, ("b", 3), 0)])
def test_two_cycle_simples_across_degrees(two_cycle, F, n, x, s):
    assert locate_simple(two_cycle, "b", n) == (x, s)
    c = simple_complex(two_cycle, "b", n, F)
    assert c.truncated_below
    assert homology_dims(c, -n) == {"a": 0, "b": 1}
    assert homology_dims(c, -n - 1) == {"a": 0, "b": 0}


# --------------------- Simple complexes ---------------------
def test_simple_complex_is_projective_resolution(a2, F):
    c = simple_complex(a2, "a", 0, F)
    assert c.multiplicities() == {-1: {"b": 1}, 0: {"a": 1}}
    assert not c.truncated_below
    assert simple_complex(a2, "b", 2, F).multiplicities() == {-2: {"b": 1}}


def test_non_perfect_simple_is_cut(loop, F):
    c = simple_complex(loop, "a", 0, F, depth=2)
    assert c.truncated_below
    assert c.lo == -2
    assert not DerivedObject.simple(loop, "a", 0, F).perfect


def test_derived_object_bookkeeping(cycle3, a3, F):
    s = DerivedObject.simple(cycle3, "b", 0, F)
    assert s.degree == 0
    assert s.provenance() == (("b", -2), 2, 0)
    moved = s.shifted(3)
    assert moved.degree == 3
    assert moved.provenance() == (("b", 1), 2, 0)
    assert DerivedObject.simple(a3, "b", 0, F).perfect


def test_hom_between_simples_of_a2(a2, F):
    s_a, s_b = DerivedObject.simple(a2, "a", 0, F), DerivedObject.simple(a2, "b", 0, F)
    assert hom_degree_pattern(s_a, s_b, range(-1, 3)) == {-1: 0, 0: 0, 1: 1, 2: 0}
    assert hom_degree_pattern(s_b, s_a, range(0, 3)) == {0: 0, 1: 0, 2: 0}


def test_cyclic_degree_law(cycle3, F):
    successor = {arrow.src: arrow.tgt for arrow in cycle3.arrows}
    shifts = range(0, 7)
    for a in ("a", "b"):
        reached = [a]
        for _ in shifts[1:]:
            reached.append(successor[reached[-1]])
        source = DerivedObject.simple(cycle3, a, 0, F)
        for b in ("a", "b"):
            pattern = hom_degree_pattern(source, DerivedObject.simple(cycle3, b, 0, F), shifts)
            assert pattern == {m: 1 if reached[m] == b else 0 for m in shifts}


def test_loop_self_extensions(loop, F):
    s = DerivedObject.simple(loop, "a", 0, F)
    assert hom_degree_pattern(s, s, range(0, 5)) == {m: 1 for m in range(0, 5)}


# --------------------- Irreducible maps ---------------------
def test_loop_irreducible_map(loop, F):
    irr = irreducible_to_simples(loop, "a", F)
    assert irr.nonzero
    assert irr.component_nonzero == [True]
    assert irr.irr_dims == [1]
    assert irr.irreducible == [True]
    assert "S[a][1] via alpha" in irr.summary()


def test_path_irreducible_map(a2, F):
    irr = irreducible_to_simples(a2, "a", F)
    assert irr.nonzero and irr.irreducible == [True]
    assert [t.name for t in irr.targets] == ["S[b][1]"]


def test_fork_irreducible_map(F):
    fork = Quiver.from_edges("abc", [("alpha", "a", "b"), ("beta", "a", "c")])
    irr = irreducible_to_simples(fork, "a", F)
    assert irr.nonzero
    assert irr.component_nonzero == [True, True]
    assert irr.irr_dims == [1, 1]
    assert irr.irreducible == [True, True]
    assert [t.name for t in irr.targets] == ["S[b][1]", "S[c][1]"]
    assert irr.checked["window F(P_x)/F(I_x)"] > 0
    assert "checked against" in irr.summary()


def test_loop_irreducible_map_sees_knitted_objects(loop, F):
    irr = irreducible_to_simples(loop, "a", F)
    assert irr.checked["simple complexes"] == 2
    assert irr.checked["knitted window objects"] > 0


def test_sink_has_no_irreducible_map(a2, F):
    with pytest.raises(RsqError):
        irreducible_to_simples(a2, "b", F)


# --------------------- Almost split triangles ---------------------
def _merge(*profiles):
    out = {}
    for profile in profiles:
        for n, row in profile.items():
            for v, m in row.items():
                out.setdefault(n, {})
                out[n][v] = out[n].get(v, 0) + m
    return out


@pytest.mark.parametrize("name, hi", [("a2", 1), ("a3", 2)])
def test_triangle_middle_at_projectives(request, F, name, hi):
    cw = build_cover_window(request.getfixturevalue(name), 0, hi)
    opp = cw.quiver().opposite()
    for x in opp.vertices:
        p = projective_at(opp, x, F)
        triangle = ar_triangle(cw, p)
        assert triangle.case == "projective"
        quotient = soc_and_quotient(injective_at(opp, x, F)).quotient
        expected = _merge(
            pushdown(cw, koszul_rep(cw, quotient)).shift(-1).multiplicities(),
            pushdown(cw, koszul_rep(cw, rad_sub(p))).multiplicities(),
        )
        assert triangle.dimension_data() == expected


def test_triangle_from_almost_split_sequence(a2, F):
    cw = build_cover_window(a2, 0, 1)
    opp = cw.quiver().opposite()
    triangle = ar_triangle(cw, simple_at(opp, ("b", 1), F))
    assert triangle.case == "sequence"
    assert triangle.left.rep.dims == {("a", 0): 1, ("b", 1): 0}
    assert [m.rep.total_dim for m in triangle.middle] == [2]
    assert all(f.is_chain_map() for f in triangle.maps)


def test_triangle_at_projective_injective_simple(F):
    point = Quiver.from_edges("a", [])
    cw = build_cover_window(point, 0, 0)
    s = simple_at(cw.quiver().opposite(), ("a", 0), F)
    triangle = ar_triangle(cw, s)
    assert triangle.case == "projective"
    assert triangle.middle == [] and triangle.maps == []
    assert homotopy_equivalent(triangle.left.presentation(), triangle.right.presentation().shift(-1))
    assert triangle.right.presentation().multiplicities() == {0: {"a": 1}}


def test_triangle_needs_the_covering_neighborhood(loop_with_tail, F):
    cw = build_cover_window(loop_with_tail, 0, 3)
    opp = cw.quiver().opposite()
    p = projective_at(opp, ("b", 1), F)
    assert p.dims[("a", 0)] == 1
    with pytest.raises(NotComputableError):
        ar_triangle(cw, p)


def test_triangle_needs_indecomposable(a2, F):
    cw = build_cover_window(a2, 0, 1)
    opp = cw.quiver().opposite()
    split = direct_sum([simple_at(opp, ("a", 0), F), simple_at(opp, ("b", 1), F)])
    with pytest.raises(RsqError):
        ar_triangle(cw, split)


# --------------------- Components ---------------------
def test_connecting_profile(a3, cycle3):
    gradable = connecting_profile(a3)
    assert gradable.gradable and gradable.r == 0
    assert gradable.section == ("a@0", "b@1", "c@2")
    assert gradable.membership == "n = d_b"
    assert "no infinite path" in gradable.clause
    cyclic = connecting_profile(cycle3)
    assert cyclic.membership == "n = d_b (mod 3)"
    assert "non-perfect" in cyclic.clause


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_classify_paths(n):
    names = "abcd"[:n]
    q = Quiver.from_edges(names, [(f"alpha{k}", names[k], names[k + 1]) for k in range(n - 1)])
    report = classify_components(q)
    assert [(row.shape, row.count) for row in report.rows] == [(f"ZA{n}", 1)]


@pytest.mark.parametrize("name, rows", [
    ("loop", [("ZA_inf", 1), ("DoubleInfinitePath", 1)]),
    ("cycle3", [("ZA_inf", 3), ("DoubleInfinitePath", 3)]),
    ("mixed3", [("ZA_inf", 2), ("ZQ~", 1)]),
    ("kronecker", [("various", "infinite")]),
])
def test_classify_components(request, name, rows):
    report = classify_components(request.getfixturevalue(name))
    assert [(row.shape, row.count) for row in report.rows] == rows
    assert report.is_infinite == (name == "kronecker")
    assert "component" in report.table()


def test_loop_evidence_meshes_are_additive(loop, F):
    evidence = component_evidence(loop, F, depth=5)
    assert len(evidence) == 2
    for _, w in evidence:
        assert mesh_defects(w) == []
    knitted = evidence[0][1]
    assert knitted.is_complete
