"""Multiary generalised application: terms t(u,l) with co-terms u::l and (x)v."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..surface import ParseError, TokenStream
from ..syntax import Arrow, fresh_name
from ..unify import Solver, TypingError
from .base import SpecStep, ctx_tvars, expect_arrow, lookup

NAME = "ljm"


class _Node:
    __slots__ = ()

    @cached_property
    def fv(self) -> frozenset:
        match self:
            case Var(x):
                return frozenset((x,))
            case Lam(x, b) | Sel(x, b):
                return b.fv - {x}
            case App(f, u, l):
                return f.fv | u.fv | l.fv
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
class App(_Node):
    """t(u,l)"""
    fun: "Term"
    arg: "Term"
    co: "CoTerm"

    def __post_init__(self):
        _terms(self.fun, self.arg)
        _coterms(self.co)

    @property
    def genarg(self) -> "GenArg":
        return GenArg(self.arg, self.co)


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


@dataclass(frozen=True)
class GenArg:
    arg: "Term"
    co: "CoTerm"

    @property
    def fv(self) -> frozenset:
        return self.arg.fv | self.co.fv


Term = Var | Lam | App
CoTerm = Cons | Sel


def _terms(*ts):
    for t in ts:
        if not isinstance(t, (Var, Lam, App)):
            raise TypeError(f"not a {NAME} term: {t!r}")


def _coterms(*ls):
    for l in ls:
        if not isinstance(l, (Cons, Sel)):
            raise TypeError(f"not a {NAME} co-term: {l!r}")


def is_term(t) -> bool:
    return isinstance(t, (Var, Lam, App))


def is_value(t) -> bool:
    return isinstance(t, (Var, Lam))


def apply(t, s: GenArg) -> App:
    return App(t, s.arg, s.co)


def all_names(e) -> set:
    match e:
        case Var(x):
            return {x}
        case Lam(x, b) | Sel(x, b):
            return {x} | all_names(b)
        case App(f, u, l):
            return all_names(f) | all_names(u) | all_names(l)
        case Cons(u, l):
            return all_names(u) | all_names(l)
    raise TypeError(e)


def subst(s, x: str, e):
    """Capture-avoiding [s/x]e for terms and co-terms."""
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
        case App(f, u, l):
            return App(subst(s, x, f), subst(s, x, u), subst(s, x, l))
        case Cons(u, l):
            return Cons(subst(s, x, u), subst(s, x, l))
    raise TypeError(e)


def _avoid(y, body, s, x):
    if y in s.fv:
        y2 = fresh_name(y, s.fv | body.fv | {x})
        return y2, subst(Var(y2), y, body)
    return y, body


def append(l, s: GenArg):
    """Eager l@S: (u::l)@S = u::(l@S), ((x)V)@S = (x)VS, ((x)t(u,l))@S = (x)t(u,l@S)."""
    match l:
        case Cons(u, rest):
            return Cons(u, append(rest, s))
        case Sel(x, v):
            if x in s.fv:
                y = fresh_name(x, s.fv | v.fv)
                x, v = y, subst(Var(y), x, v)
            if isinstance(v, App):
                return Sel(x, App(v.fun, v.arg, append(v.co, s)))
            return Sel(x, apply(v, s))
    raise TypeError(l)


def append_lazy(l, s: GenArg):
    """Lazy l@S: (u::l)@S = u::(l@S), ((x)t)@S = (x)tS."""
    match l:
        case Cons(u, rest):
            return Cons(u, append_lazy(rest, s))
        case Sel(x, v):
            if x in s.fv:
                y = fresh_name(x, s.fv | v.fv)
                x, v = y, subst(Var(y), x, v)
            return Sel(x, apply(v, s))
    raise TypeError(l)


def root_steps(e, pi: str = "eager") -> list:
    out = []
    match e:
        case App(Lam(x, b), u, Sel(y, v)):
            out.append(("beta1", subst(subst(u, x, b), y, v)))
        case App(Lam(x, b), u, Cons(v, l)):
            out.append(("beta2", App(subst(u, x, b), v, l)))
        case App(App(f, u, l), u2, l2):
            if pi in ("eager", "both"):
                out.append(("pi", App(f, u, append(l, GenArg(u2, l2)))))
            if pi in ("lazy", "both"):
                out.append(("pi-lazy", App(f, u, append_lazy(l, GenArg(u2, l2)))))
        case Sel(x, App(Var(y), u, l)) if x == y and x not in u.fv and x not in l.fv:
            out.append(("mu", Cons(u, l)))
    return out


def _children(e):
    match e:
        case Lam(_, b) | Sel(_, b):
            return [b]
        case App(f, u, l):
            return [f, u, l]
        case Cons(u, l):
            return [u, l]
    return []


def _rebuild(e, i, new):
    match e:
        case Lam(x, _):
            return Lam(x, new)
        case Sel(x, _):
            return Sel(x, new)
        case App(f, u, l):
            return App(*[new if j == i else c for j, c in enumerate((f, u, l))])
        case Cons(u, l):
            return Cons(new, l) if i == 0 else Cons(u, new)
    raise TypeError(e)


def steps(e, pi: str = "eager") -> list:
    out = [SpecStep(r, (), new) for r, new in root_steps(e, pi)]
    for i, c in enumerate(_children(e)):
        out += [SpecStep(s.rule, (i,) + s.pos, _rebuild(e, i, s.after)) for s in steps(c, pi)]
    return out


def step_lazy_pi(e) -> list:
    return [s for s in steps(e, "lazy") if s.rule == "pi-lazy"]


def pi_nf(e):
    """Pi-normal form, computed structurally."""
    match e:
        case Var():
            return e
        case Lam(x, b):
            return Lam(x, pi_nf(b))
        case Sel(x, b):
            return Sel(x, pi_nf(b))
        case Cons(u, l):
            return Cons(pi_nf(u), pi_nf(l))
        case App(f, u, l):
            f = pi_nf(f)
            s = GenArg(pi_nf(u), pi_nf(l))
            if isinstance(f, App):
                return App(f.fun, f.arg, append(f.co, s))
            return apply(f, s)
    raise TypeError(e)


def key(e, env: tuple = ()):
    match e:
        case Var(x):
            return ("v", env.index(x)) if x in env else ("f", x)
        case Lam(x, b):
            return ("l", key(b, (x,) + env))
        case Sel(x, b):
            return ("s", key(b, (x,) + env))
        case App(f, u, l):
            return ("a", key(f, env), key(u, env), key(l, env))
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
        case App(f, u, l):
            ft = expect_arrow(s, _synth(s, ctx, f, pos + (0,)), pos, "application")
            s.unify(_synth(s, ctx, u, pos + (1,)), ft.dom, pos + (1,))
            return _co(s, ctx, l, ft.cod, pos + (2,))
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
        case App(f, u, l):
            head = f"({show(f)})" if isinstance(f, Lam) else show(f)
            return f"{head}({show(u)}, {show(l)})"
        case Cons(u, l):
            head = f"({show(u)})" if isinstance(u, Lam) else show(u)
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
    while ts.at("("):
        ts.next()
        u = _term(ts)
        ts.expect(",")
        l = _coterm(ts)
        ts.expect(")")
        t = App(t, u, l)
    return t


def _coterm(ts):
    if ts.at("(") and ts.at_ident(1) and ts.at(")", 2) and not ts.at("::", 3):
        ts.next()
        x = ts.ident()
        ts.next()
        return Sel(x, _term(ts))
    u = _term(ts)
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
