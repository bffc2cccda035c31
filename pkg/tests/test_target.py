import pytest
from hypothesis import given

from conftest import typed
from ljmse import cps as C
from ljmse import reduction as R
from ljmse import target as T
from ljmse.surface import parse_type
from ljmse.unify import TypingError

x, y, g = T.Var("x"), T.Var("y"), T.Var("g")
ID = T.Lam("x", x)


def test_beta_example():
    assert T.beta_steps(T.App(ID, y)) == [y]


def test_pair_projects_first_component():
    p = T.pair(g, T.Lam("z", T.Var("z")))
    assert T.alpha_eq(T.from_nameless(T.normal_form(p)), g)


def test_garbage_successor_takes_two_steps():
    r = T.reach(T.App(T.S_COMB, g), g, "plus", method="bfs")
    assert r.found and r.steps == 2
    graph, exhausted = T.reduction_graph(T.App(T.S_COMB, g))
    assert exhausted
    normals = [n for n in graph if not T.steps_nl(n)]
    assert normals == [T.to_nameless(g)]


def test_typing_examples():
    assert T.typecheck_lam({}, ID, parse_type("X->X"))
    assert T.typecheck_lam({}, T.S_COMB, T.Arrow(T.TOP, T.TOP))
    with pytest.raises(TypingError):
        T.typecheck_lam({}, ID, parse_type("X->Y"))


def test_reach_examples():
    r = T.reach(T.App(ID, y), y, "plus")
    assert r.found and r.steps == 1
    r = T.reach(y, y, "star")
    assert r.found and r.steps == 0
    assert not T.reach(y, y, "plus").found
    r = T.reach(T.App(T.S_COMB, T.App(T.S_COMB, g)), T.App(T.S_COMB, g), "plus")
    assert r.found and r.steps == 2


def test_reach_reports_cap():
    omega = T.Lam("x", T.App(x, x))
    r = T.reach(T.App(omega, omega), y, "plus", caps={"nodes": 50, "depth": 10})
    assert not r.found and not r.conclusive


@given(typed(max_size=9))
def test_standard_search_agrees_with_breadth_first(sample):
    _, t, _ = sample
    for s in R.all_steps(t):
        src, dst = C.cgps(t), C.cgps(s.after)
        std = T.reach(src, dst, "plus")
        bfs = T.reach(src, dst, "plus", method="bfs")
        assert std.found == bfs.found
        if std.found:
            assert bfs.steps <= std.steps
            assert T.alpha_eq(std.path[-1], dst)


@given(typed(level="second", max_size=9))
def test_print_parse_round_trip(sample):
    _, t, _ = sample
    img = C.cgps(t)
    assert T.alpha_eq(T.parse_lam(T.print_lam(img)), img)
    assert T.alpha_eq(T.lam_from_json(T.lam_to_json(img)), img)


@given(typed())
def test_nameless_round_trip(sample):
    _, t, _ = sample
    img = C.cps(t)
    assert T.to_nameless(T.from_nameless(T.to_nameless(img))) == T.to_nameless(img)
