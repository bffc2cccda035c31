import pytest
from hypothesis import given

from conftest import P, typed
from ljmse import cps as C
from ljmse import reduction as R
from ljmse import target as T
from ljmse.cps import Kind
from ljmse.spectrum import lj, ljms
from ljmse.surface import parse_type, print_type
from ljmse.syntax import TVar, free_vars

G, K = T.Var("G"), T.Var("K")


def show(t):
    return T.print_lam(t, abbrev=True)


# ---------------------------------------------------------------- types

def test_cps_bar_of_variable():
    assert print_type(C.bar_type(TVar("X"), Kind.CPS)) == "(X->Bot)->Bot"


def test_cgps_arrow():
    def neg_bar(v):
        return f"((Bot->Bot)->({v}->Bot)->Bot)->Bot"
    expected = parse_type(f"({neg_bar('Y')})->{neg_bar('X')}")
    assert C.star_type(parse_type("X->Y")) == expected


def test_cgps_forall():
    assert C.star_type(parse_type("forall X.X")) == parse_type("forall X.(Bot->Bot)->(X->Bot)->Bot")


def test_bar_ctx():
    assert C.bar_ctx({}, Kind.CPS) == {}
    assert C.bar_ctx({"y": TVar("X")}, Kind.CPS) == {"y": parse_type("(X->Bot)->Bot")}
    assert C.bar_ctx({"y": TVar("X")}) == {"y": parse_type("(Bot->Bot)->(X->Bot)->Bot")}


# ---------------------------------------------------------------- CPS clauses

def test_cps_variable_clause():
    assert show(C.colon_cps(P("x"), K)) == "x K"


def test_cps_cons_clause():
    got = C.colon_cps(P("u::[]", "coterm"), K)
    assert T.alpha_eq(got, T.parse_lam("\\w. w (\\m. m (\\w1. w1 K) (\\k. u k))"))


def test_cps_identifies_eps():
    assert T.alpha_eq(C.cps(P("{y []}")), C.cps(P("y")))
    assert show(C.cps(P("y"))) == "\\k. y k"


def test_cps_rejects_second_order():
    with pytest.raises(ValueError):
        C.cps(P("/\\X.x"))


# ---------------------------------------------------------------- CGPS clauses

def test_cgps_variable_clause():
    assert show(C.colon_cgps(P("x"), G, K)) == "x (s G) K"
    assert show(C.cgps(P("y"))) == "\\g.\\k. y (s g) k"


def test_cgps_variable_expanded():
    assert T.print_lam(C.cgps(P("y"))) == "\\g.\\k. y ((\\x. (\\y. x) (\\z. z)) g) k"


def test_cgps_eps_costs_two_steps():
    img = C.cgps(P("{y []}"))
    assert show(img) == "\\g.\\k. y (s (s g)) k"
    r = T.reach(img, C.cgps(P("y")), "plus", method="bfs")
    assert r.found and r.steps == 2


def test_cgps_beta_case():
    e = P("{(\\x.x) y::[]}")
    (s,) = R.all_steps(e)
    r = T.reach(C.cgps(e), C.cgps(s.after), "plus")
    assert r.found and r.steps >= 1


def test_subsystem_clauses():
    got = C.colon_cgps_sub(ljms.parse("t (z) z"), G, K, Kind.CGPS_LJMS)
    assert show(got) == "(\\z. z (s (s G)) K) (\\g.\\k. t (s g) k)"
    got = C.colon_cgps_sub(lj.parse("t(u, x.y)"), G, K, Kind.CGPS_LJ)
    assert show(got) == "t (s (s G)) (\\m. m (\\x. y (s (s G)) K) (\\g.\\k. u (s g) k))"
    assert show(C.colon_cgps_sub(lj.parse("x"), G, K, Kind.CGPS_LJ_OPT)) == "x G K"
    got = C.colon_cgps_sub(lj.parse("t(u, x.v)"), G, K, Kind.CGPS_LJ_SIMPLE)
    assert show(got) == "t (s G) (\\m. (\\x. v G K) (m (\\g.\\k. u g k)))"


def test_simple_cps_clauses():
    assert show(C.colon_cps_simple(P("\\x.t"), K)) == "K (\\x.\\k. t k)"
    img = C.cps_simple(P("{(\\x.t) u::[]}"))
    body = T.Lam("k", T.app(T.parse_lam("\\x.\\k2. t k2"), T.parse_lam("\\k1. u k1"), T.Var("k")))
    r = T.reach(img, body, "plus", method="bfs")
    assert r.found and r.steps == 2


def test_translation_avoids_capture_of_continuation_names():
    e = P("{k g::[]}")
    img = C.cgps(e)
    assert {"k", "g"} <= T_free(img)


def T_free(t):
    match t:
        case T.Var(n):
            return {n}
        case T.Lam(x, b):
            return T_free(b) - {x}
        case T.App(f, a):
            return T_free(f) | T_free(a)
    return set()


# ---------------------------------------------------------------- properties

@given(typed())
def test_translations_are_typed(sample):
    ctx, t, a = sample
    for kind in (Kind.CPS, Kind.CGPS):
        assert T.typecheck_lam(C.bar_ctx(ctx, kind), C.translate(t, kind), C.bar_type(a, kind))


@given(typed(level="second", max_size=10))
def test_second_order_translation_is_typed(sample):
    ctx, t, a = sample
    assert T.typecheck_lam(C.bar_ctx(ctx), C.cgps(t), C.bar_type(a))


@given(typed(max_size=10))
def test_cgps_strictly_simulates(sample):
    _, t, _ = sample
    for s in R.all_steps(t):
        r = T.reach(C.cgps(t), C.cgps(s.after), "plus")
        assert r.found and r.steps >= 1


@given(typed(max_size=10))
def test_cps_weakly_simulates(sample):
    _, t, _ = sample
    for s in R.all_steps(t):
        assert T.reach(C.cps(t), C.cps(s.after), "star").found


@given(typed())
def test_free_variables_are_preserved(sample):
    _, t, _ = sample
    for kind in (Kind.CPS, Kind.CGPS):
        assert T_free(C.translate(t, kind)) == set(free_vars(t))
