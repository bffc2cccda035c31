"""Multiary sequent terms with explicit substitution: the cut t l plays both roles."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..surface import ParseError, TokenStream
from ..syntax import Arrow, fresh_name
from ..unify import Solver, TypingError
from .base import SpecStep, ctx_tvars, expect_arrow, lookup

NAME = "ljms"


class _Node:
    __slots__ = ()

    @cached_property
    def fv(self) -> frozenset:
        match self:
            case Var(x):
                return frozenset((x,))
            case Lam(x, b) | Sel(x, b):
                return b.fv - {x}
            case Cut(t, l):
                return t.fv | l.fv
            case Cons(u, l):
                return u.fv | l.fv


@dataclass(frozen=True)
class Var(_Node):
    name: str


@dataclass(frozen=True)
class Lam(_Node):
    var: str
    body: "Term"

    def __post_init__(self):
        _terms(self.body)


@dataclass(frozen=True)
class Cut(_Node):
    term: "Term"
    coterm: "CoTerm"

    def __post_init__(self):
        _terms(self.term)
        _coterms(self.coterm)


@dataclass(frozen=True)
class Cons(_Node):
    head: "Term"
    tail: "CoTerm"

    def __post_init__(self):
        _terms(self.head)
        _coterms(self.tail)


@dataclass(frozen=True)
class Sel(_Node):
    var: str
    body: "Term"

    def __post_init__(self):
        _terms(self.body)


Term = Var | Lam | Cut
CoTerm = Cons | Sel


def _terms(*ts):
    for t in ts:
        if not isinstance(t, (Var, Lam, Cut)):
            raise TypeError(f"not a {NAME} term: {t!r}")


def _coterms(*ls):
    for l in ls:
        if not isinstance(l, (Cons, Sel)):
            raise TypeError(f"not a {NAME} co-term: {l!r}")


def is_term(t) -> bool:
    return isinstance(t, (Var, Lam, Cut))


def is_value(t) -> bool:
    return isinstance(t, (Var, Lam))


def all_names(e) -> set:
    match e:
        case Var(x):
            return {x}
        case Lam(x, b) | Sel(x, b):
            return {x} | all_names(b)
        case Cut(t, l) | Cons(t, l):
            return all_names(t) | all_names(l)
    raise TypeError(e)


def subst(s, x: str, e):
    """Capture-avoiding [s/x]e."""
    if x not in e.fv:
        return e
    match e:
        case Var(n):
            return s if n == x else e
        case Lam(y, b):
            y, b = _avoid(y, b, s, x)
            return Lam(y, subst(s, x, b))
        case Sel(y, b):
            y, b = _avoid(y, b, s, x)
            return Sel(y, subst(s, x, b))
        case Cut(t, l):
            return Cut(subst(s, x, t), subst(s, x, l))
        case Cons(u, l):
            return Cons(subst(s, x, u), subst(s, x, l))
    raise TypeError(e)


def _avoid(y, body, s, x):
    if y in s.fv:
        y2 = fresh_name(y, s.fv | body.fv | {x})
        return y2, subst(Var(y2), y, body)
    return y, body


def append(l, l2):
    """Eager l@l': (u::l)@l' = u::(l@l'), ((x)V)@l' = (x)Vl', ((x)tl)@l' = (x)t(l@l')."""
    match l:
        case Cons(u, rest):
            return Cons(u, append(rest, l2))
        case Sel(x, v):
            if x in l2.fv:
                y = fresh_name(x, l2.fv | v.fv)
                x, v = y, subst(Var(y), x, v)
            if isinstance(v, Cut):
                return Sel(x, Cut(v.term, append(v.coterm, l2)))
            return Sel(x, Cut(v, l2))
    raise TypeError(l)


def root_steps(e) -> list:
    out = []
    match e:
        case Cut(Lam(x, b), Cons(u, l)):
            out.append(("beta", Cut(u, Sel(x, Cut(b, l)))))
        case Cut(t, Sel(x, v)):
            out.append(("sigma", subst(t, x, v)))
    match e:
        case Cut(Cut(t, l), Cons() as l2):
            out.append(("pi", Cut(t, append(l, l2))))
        case Sel(x, Cut(Var(y), l)) if x == y and x not in l.fv:
            out.append(("mu", l))
    return out


def _children(e):
    match e:
        case Lam(_, b) | Sel(_, b):
            return [b]
        case Cut(t, l) | Cons(t, l):
            return [t, l]
    return []


def _rebuild(e, i, new):
    match e:
        case Lam(x, _):
            return Lam(x, new)
        case Sel(x, _):
            return Sel(x, new)
        case Cut(t, l):
            return Cut(new, l) if i == 0 else Cut(t, new)
        case Cons(u, l):
            return Cons(new, l) if i == 0 else Cons(u, new)
    raise TypeError(e)


def steps(e) -> list:
    out = [SpecStep(r, (), new) for r, new in root_steps(e)]
    for i, c in enumerate(_children(e)):
        out += [SpecStep(s.rule, (i,) + s.pos, _rebuild(e, i, s.after)) for s in steps(c)]
    return out


def key(e, env: tuple = ()):
    match e:
        case Var(x):
            return ("v", env.index(x)) if x in env else ("f", x)
        case Lam(x, b):
            return ("l", key(b, (x,) + env))
        case Sel(x, b):
            return ("s", key(b, (x,) + env))
        case Cut(t, l):
            return ("k", key(t, env), key(l, env))
        case Cons(u, l):
            return ("c", key(u, env), key(l, env))
    raise TypeError(e)


def alpha_eq(a, b) -> bool:
    return key(a) == key(b)


def size(e) -> int:
    return 1 + sum(size(c) for c in _children(e))


# ---------------------------------------------------------------- typing

def _synth(s: Solver, ctx, t, pos):
    match t:
        case Var(x):
            return lookup(ctx, x, pos)
        case Lam(x, b):
            a = s.fresh()
            return Arrow(a, _synth(s, ctx | {x: a}, b, pos + (0,)))
        case Cut(u, l):
            return _co(s, ctx, l, _synth(s, ctx, u, pos + (0,)), pos + (1,))
    raise TypeError(t)


def _co(s: Solver, ctx, l, a, pos):
    match l:
        case Cons(u, rest):
            at = expect_arrow(s, a, pos, "argument list")
            s.unify(_synth(s, ctx, u, pos + (0,)), at.dom, pos + (0,))
            return _co(s, ctx, rest, at.cod, pos + (1,))
        case Sel(x, v):
            return _synth(s, ctx | {x: a}, v, pos + (0,))
    raise TypeError(l)


def infer(ctx: dict, e):
    """Type of a term, or the pair (A, B) of a co-term judgement ctx | l : A |- B."""
    s = Solver()
    if is_term(e):
        (a,) = s.pretty([_synth(s, ctx, e, ())], ctx_tvars(ctx))
        return a
    a = s.fresh()
    b = _co(s, ctx, e, a, ())
    return tuple(s.pretty([a, b], ctx_tvars(ctx)))


def check(ctx: dict, e, a) -> bool:
    s = Solver()
    try:
        if is_term(e):
            s.unify(_synth(s, ctx, e, ()), a)
        else:
            s.unify(_co(s, ctx, e, a[0], ()), a[1])
    except TypingError:
        return False
    return True


# ---------------------------------------------------------------- concrete syntax

def show(e) -> str:
    match e:
        case Var(x):
            return x
        case Lam(x, b):
            return f"\\{x}.{show(b)}"
        case Cut(t, l):
            head = f"({show(t)})" if isinstance(t, (Lam, Cut)) else show(t)
            return f"{head} {show(l)}"
        case Cons(u, l):
            head = show(u) if isinstance(u, Var) else f"({show(u)})"
            return f"{head}::{show(l)}"
        case Sel(x, b):
            return f"({x}) {show(b)}"
    raise TypeError(e)


def parse(src: str, cls: str = "term"):
    ts = TokenStream(src)
    e = _term(ts) if cls == "term" else _coterm(ts)
    ts.finish()
    return e


def _term(ts):
    if ts.at("\\"):
        ts.next()
        x = ts.ident()
        ts.expect(".")
        return Lam(x, _term(ts))
    t = _atom(ts)
    if ts.at_ident() or ts.at("("):
        return Cut(t, _coterm(ts))
    return t


def _coterm(ts):
    if ts.at("(") and ts.at_ident(1) and ts.at(")", 2) and not ts.at("::", 3):
        ts.next()
        x = ts.ident()
        ts.next()
        return Sel(x, _term(ts))
    u = _atom(ts)
    ts.expect("::")
    return Cons(u, _coterm(ts))


def _atom(ts):
    if ts.at("("):
        ts.next()
        t = _term(ts)
        ts.expect(")")
        return t
    tok = ts.peek()
    if not tok.ident:
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.offset)
    return Var(ts.ident())
