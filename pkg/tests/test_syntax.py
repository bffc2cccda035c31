from hypothesis import given
from hypothesis import strategies as st

from conftest import P, typed
from ljmse.surface import (
    ParseError, from_json, parse_any, parse_expr, parse_type, print_expr, print_type,
    to_json, type_from_json, type_to_json,
)
from ljmse.syntax import (
    NIL, Arrow, Coerce, Cons, Cut, Forall, Lam, Sel, TVar, Var, alpha_eq, append,
    free_vars, fresh_name, rename, subst, ty_subst_type,
)
import pytest


# ---------------------------------------------------------------- substitution

def test_subst_hits_variable():
    assert subst(Var("t"), "x", Var("x")) == Var("t")


def test_subst_skips_other_variable():
    assert subst(Var("t"), "x", Var("y")) == Var("y")


def test_subst_homomorphic():
    c = Cut(Var("x"), Cons(Var("x"), NIL))
    assert subst(Var("y"), "x", c) == Cut(Var("y"), Cons(Var("y"), NIL))


def test_subst_avoids_capture():
    out = subst(Var("y"), "x", Lam("y", Var("x")))
    assert isinstance(out, Lam) and out.var != "y" and out.body == Var("y")


def test_subst_stops_at_shadowing_binder():
    e = Sel("x", Cut(Var("x"), NIL))
    assert subst(Var("y"), "x", e) == e


# ---------------------------------------------------------------- append

def test_append_nil_left():
    l2 = Cons(Var("u"), NIL)
    assert append(NIL, l2) == l2


def test_append_sel_pushes_into_body():
    got = append(Sel("x", Cut(Var("x"), NIL)), Cons(Var("y"), NIL))
    assert got == Sel("x", Cut(Var("x"), Cons(Var("y"), NIL)))


def test_append_renames_selection_binder():
    got = append(Sel("y", Cut(Var("y"), NIL)), Cons(Var("y"), NIL))
    assert alpha_eq(got, Sel("z", Cut(Var("z"), Cons(Var("y"), NIL))))


@given(typed())
def test_append_nil_right_is_identity_on_coterms(sample):
    _, t, _ = sample
    l = Cons(t, Sel("x", Cut(Var("x"), NIL)))
    assert alpha_eq(append(l, NIL), l)


@given(typed(), typed(), typed())
def test_append_is_associative(a, b, c):
    l1 = Cons(a[1], NIL)
    l2 = Sel("q", Cut(Var("q"), Cons(b[1], NIL)))
    l3 = Cons(c[1], NIL)
    assert alpha_eq(append(append(l1, l2), l3), append(l1, append(l2, l3)))


# ---------------------------------------------------------------- free variables and alpha

def test_free_vars_examples():
    assert free_vars(Lam("x", Var("x"))) == frozenset()
    assert free_vars(Cut(Var("x"), Sel("y", Cut(Var("y"), NIL)))) == {"x"}
    assert free_vars(Cons(Var("x"), Sel("x", Cut(Var("x"), NIL)))) == {"x"}


def test_alpha_examples():
    assert alpha_eq(Lam("x", Var("x")), Lam("y", Var("y")))
    assert not alpha_eq(Var("x"), Var("y"))
    assert alpha_eq(Sel("x", Cut(Var("x"), NIL)), Sel("z", Cut(Var("z"), NIL)))


@given(typed())
def test_rename_free_variable_updates_free_set(sample):
    _, t, _ = sample
    fresh = fresh_name("r", free_vars(t))
    for x in sorted(free_vars(t)):
        assert free_vars(rename(t, x, fresh)) == (free_vars(t) - {x}) | {fresh}


def test_fresh_name_sequence():
    assert fresh_name("x", set()) == "x"
    assert fresh_name("x", {"x", "x1"}) == "x2"


def test_type_substitution_respects_shadowing():
    assert ty_subst_type(TVar("Y"), "X", TVar("X")) == TVar("Y")
    body = Forall("X", TVar("X"))
    assert ty_subst_type(TVar("Y"), "X", body) == body


# ---------------------------------------------------------------- concrete syntax

def test_parse_examples():
    assert P("\\x.x") == Lam("x", Var("x"))
    assert P("{(\\x.x) y::[]}") == Coerce(Cut(Lam("x", Var("x")), Cons(Var("y"), NIL)))
    assert P("(x) x []", "coterm") == Sel("x", Cut(Var("x"), NIL))


def test_print_examples():
    assert print_expr(Lam("x", Var("x"))) == "\\x.x"
    assert print_expr(NIL) == "[]"
    assert print_expr(Coerce(Cut(Var("y"), NIL))) == "{y []}"


def test_parse_any_detects_class():
    assert isinstance(parse_any("x []"), Cut)
    assert isinstance(parse_any("u::[]"), Cons)


@pytest.mark.parametrize("src", ["\\x.", "{x []", "x y", "(x x []", ""])
def test_parse_errors_carry_offsets(src):
    with pytest.raises(ParseError) as info:
        parse_expr(src)
    assert 0 <= info.value.offset <= len(src)


def test_second_order_syntax_rejected_at_prop_level():
    with pytest.raises(ParseError):
        parse_expr("/\\X.x", level="prop")


@given(typed())
def test_print_parse_round_trip(sample):
    _, t, _ = sample
    assert parse_expr(print_expr(t)) == t


@given(typed(level="second"))
def test_print_parse_round_trip_second_order(sample):
    _, t, _ = sample
    assert parse_expr(print_expr(t)) == t


@given(typed(level="second"))
def test_json_round_trip(sample):
    _, t, a = sample
    assert from_json(to_json(t)) == t
    assert type_from_json(type_to_json(a)) == a


@given(st.sampled_from(["X", "X->Y", "(X->Y)->X", "forall X.X->Y", "Bot", "forall X.forall Y.X"]))
def test_type_round_trip(src):
    a = parse_type(src)
    assert parse_type(print_type(a)) == a


def test_arrow_is_right_associative():
    assert parse_type("X->Y->Z") == Arrow(TVar("X"), Arrow(TVar("Y"), TVar("Z")))
