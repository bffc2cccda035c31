import random

from hypothesis import given
from hypothesis import strategies as st

from conftest import P
from ljmse import cps as C
from ljmse.secondorder import (
    bar_naturality, beta2_root, random_triples, random_type, star_naturality,
    ty_subst_type,
)
from ljmse.syntax import BOT, Arrow, Bottom, Forall, TVar, type_alpha_eq

TOP = Arrow(BOT, BOT)


def neg(a):
    return Arrow(a, BOT)


def oracle_star(a):
    """Structural recursion written out independently of the library."""
    match a:
        case TVar() | Bottom():
            return a
        case Arrow(d, c):
            return Arrow(neg(oracle_bar(c)), neg(oracle_bar(d)))
        case Forall(x, b):
            return Forall(x, oracle_bar(b))
    raise TypeError(a)


def oracle_bar(a):
    return Arrow(TOP, neg(neg(oracle_star(a))))


def oracle_subst(b, x, a):
    """Capture-avoiding type substitution for the oracle side."""
    match a:
        case TVar(n):
            return b if n == x else a
        case Arrow(d, c):
            return Arrow(oracle_subst(b, x, d), oracle_subst(b, x, c))
        case Forall(y, body) if y == x:
            return a
        case Forall(y, body):
            if y in _ftv(b):
                z = y + "'"
                while z in _ftv(b) or z in _ftv(body):
                    z += "'"
                body = oracle_subst(TVar(z), y, body)
                y = z
            return Forall(y, oracle_subst(b, x, body))
    return a


def _ftv(a):
    match a:
        case TVar(n):
            return {n}
        case Arrow(d, c):
            return _ftv(d) | _ftv(c)
        case Forall(y, b):
            return _ftv(b) - {y}
    return set()


types = st.integers(0, 2**32 - 1).map(lambda s: random_type(random.Random(s), 3))


def test_substitution_examples():
    assert ty_subst_type(TVar("Y"), "X", TVar("X")) == TVar("Y")
    assert ty_subst_type(TVar("Y"), "X", Forall("X", TVar("X"))) == Forall("X", TVar("X"))


def test_beta2_root():
    got = beta2_root(P("(/\\X.\\x.x) <Y>::[]", "command"))
    assert got == P("(\\x.x) []", "command")
    assert beta2_root(P("x []", "command")) is None


@given(types)
def test_star_matches_oracle(a):
    assert C.star_type(a) == oracle_star(a)


@given(types, types, st.sampled_from("XYZ"))
def test_substitution_matches_oracle(a, b, x):
    assert type_alpha_eq(ty_subst_type(b, x, a), oracle_subst(b, x, a))


@given(types, types, st.sampled_from("XYZ"))
def test_naturality(a, b, x):
    assert star_naturality(b, x, a) and bar_naturality(b, x, a)
    left = oracle_star(oracle_subst(b, x, a))
    right = oracle_subst(oracle_star(b), x, oracle_star(a))
    assert type_alpha_eq(left, right)


def test_triples_are_deterministic():
    assert random_triples(20, 4) == random_triples(20, 4)
    assert len(random_triples(500)) == 500
