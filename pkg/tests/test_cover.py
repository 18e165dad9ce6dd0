import pytest

from rsq.cover import build_cover_window, contains_vertex, label, parse_label, project, rho_shift
from rsq.errors import TrivialTranslationError, WindowError


def test_gradable_window_is_the_quiver(a3):
    cw = build_cover_window(a3, 0, 2)
    assert cw.r == 0
    assert cw.vertices == (("a", 0), ("b", 1), ("c", 2))
    assert [a.id for a in cw.arrows] == [("alpha", 0), ("beta", 1)]


def test_loop_window_is_a_chain(loop):
    cw = build_cover_window(loop, -1, 2)
    assert cw.vertices == (("a", -1), ("a", 0), ("a", 1), ("a", 2))
    assert len(cw.arrows) == 3
    assert cw.fiber("a") == list(cw.vertices)


def test_two_cycle_window_alternates(two_cycle):
    cw = build_cover_window(two_cycle, 0, 3)
    assert set(cw.vertices) == {("a", 0), ("a", 2), ("b", 1), ("b", 3)}
    edges = {(a.src, a.tgt) for a in cw.arrows}
    assert edges == {(("a", 0), ("b", 1)), (("b", 1), ("a", 2)), (("a", 2), ("b", 3))}


def test_membership_modulo_period(cycle3):
    cw = build_cover_window(cycle3, 0, 2)
    assert contains_vertex(cw, "b", 4)
    assert not contains_vertex(cw, "b", 2)
    assert ("b", 4) not in cw
    assert cw.level(1) == [("b", 1)]


def test_anchor_moves_level_zero(a3):
    cw = build_cover_window(a3, -2, 0, anchor="c")
    assert cw.vertices == (("a", -2), ("b", -1), ("c", 0))


def test_window_errors(a3):
    with pytest.raises(WindowError):
        build_cover_window(a3, 1, 2)
    with pytest.raises(WindowError):
        build_cover_window(a3, 0, 2, anchor="z")
    with pytest.raises(WindowError):
        project(build_cover_window(a3, 0, 1), ("c", 2))


def test_rho_shift(loop, a3):
    cw = build_cover_window(loop, -1, 2)
    assert rho_shift(cw, ("a", 0), 1) == (("a", 1), True)
    assert rho_shift(cw, ("a", 0), 3) == (("a", 3), False)
    with pytest.raises(TrivialTranslationError):
        rho_shift(build_cover_window(a3, 0, 2), ("a", 0), 1)


def test_labels():
    assert label(("a", 3)) == "a@3"
    assert label("a") == "a"
    assert parse_label("x@-2") == ("x", -2)
    assert parse_label("a@b@1") == ("a@b", 1)
    with pytest.raises(WindowError):
        parse_label("nope")
    with pytest.raises(WindowError):
        parse_label("a@x")


def test_to_dot(a2):
    dot = build_cover_window(a2, 0, 1).to_dot()
    assert dot.startswith("digraph cover {")
    assert '"a@0" -> "b@1" [label="alpha@0"];' in dot


def test_cut_vertices(loop_with_tail, a3):
    cw = build_cover_window(loop_with_tail, 0, 3)
    assert cw.cut_below(("a", 0)) and not cw.cut_below(("b", 0))
    assert cw.cut_above(("a", 3)) and not cw.cut_above(("b", 3))
    assert not cw.is_cut(("a", 1)) and not cw.is_cut(("b", 1))
    full = build_cover_window(a3, 0, 2)
    assert not any(full.is_cut(v) for v in full.vertices)
