"""The calculus of generalised application, t(u,x.v).

A generalised argument (u,x.v) is kept as the last three fields of GApp;
GenArg names the triple when it travels on its own (append, pi).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..surface import ParseError, TokenStream
from ..syntax import Arrow, fresh_name
from ..unify import Solver, TypingError
from .base import SpecStep, ctx_tvars, expect_arrow, lookup

NAME = "lj"


class _Term:
    __slots__ = ()

    @cached_property
    def fv(self) -> frozenset:
        match self:
            case Var(x):
                return frozenset((x,))
            case Lam(x, b):
                return b.fv - {x}
            case GApp(f, u, x, v):
                return f.fv | u.fv | (v.fv - {x})


@dataclass(frozen=True)
class Var(_Term):
    name: str


@dataclass(frozen=True)
class Lam(_Term):
    var: str
    body: "Term"

    def __post_init__(self):
        _require(self.body)


@dataclass(frozen=True)
class GApp(_Term):
    fun: "Term"
    arg: "Term"
    var: str
    body: "Term"

    def __post_init__(self):
        _require(self.fun, self.arg, self.body)

    @property
    def genarg(self) -> "GenArg":
        return GenArg(self.arg, self.var, self.body)


@dataclass(frozen=True)
class GenArg:
    arg: "Term"
    var: str
    body: "Term"

    @property
    def fv(self) -> frozenset:
        return self.arg.fv | (self.body.fv - {self.var})


Term = Var | Lam | GApp


def _require(*ts):
    for t in ts:
        if not isinstance(t, (Var, Lam, GApp)):
            raise TypeError(f"not a {NAME} term: {t!r}")


def is_term(t) -> bool:
    return isinstance(t, (Var, Lam, GApp))


def is_value(t) -> bool:
    return isinstance(t, (Var, Lam))


def apply(t, r: GenArg) -> GApp:
    return GApp(t, r.arg, r.var, r.body)


def all_names(t) -> set:
    match t:
        case Var(x):
            return {x}
        case Lam(x, b):
            return {x} | all_names(b)
        case GApp(f, u, x, v):
            return {x} | all_names(f) | all_names(u) | all_names(v)
    raise TypeError(t)


def subst(s, x: str, t):
    """Capture-avoiding [s/x]t."""
    if x not in t.fv:
        return t
    match t:
        case Var(n):
            return s if n == x else t
        case Lam(y, b):
            y, b = _avoid(y, b, s, x)
            return Lam(y, subst(s, x, b))
        case GApp(f, u, y, v):
            y, v = _avoid(y, v, s, x)
            return GApp(subst(s, x, f), subst(s, x, u), y, subst(s, x, v))
    raise TypeError(t)


def _avoid(y, body, s, x):
    if y in s.fv:
        y2 = fresh_name(y, s.fv | body.fv | {x})
        return y2, subst(Var(y2), y, body)
    return y, body


def _bind_apart(r: GenArg, avoid) -> GenArg:
    if r.var in avoid:
        y = fresh_name(r.var, avoid | r.body.fv)
        return GenArg(r.arg, y, subst(Var(y), r.var, r.body))
    return r


def append(r: GenArg, s: GenArg) -> GenArg:
    """Eager append: (u,x.V)@S = (u,x.VS) and (u,x.tR')@S = (u,x.t(R'@S))."""
    r = _bind_apart(r, s.fv)
    match r.body:
        case GApp(fun=t):
            return GenArg(r.arg, r.var, apply(t, append(r.body.genarg, s)))
    return GenArg(r.arg, r.var, apply(r.body, s))


def append_lazy(r: GenArg, s: GenArg) -> GenArg:
    """Lazy append: (u,x.v)@S = (u,x.vS)."""
    r = _bind_apart(r, s.fv)
    return GenArg(r.arg, r.var, apply(r.body, s))


def root_steps(t, pi: str = "eager") -> list:
    out = []
    match t:
        case GApp(Lam(x, b), u, y, v):
            out.append(("beta", subst(subst(u, x, b), y, v)))
        case GApp(fun=GApp(fun=f) as inner):
            if pi in ("eager", "both"):
                out.append(("pi", apply(f, append(inner.genarg, t.genarg))))
            if pi in ("lazy", "both"):
                out.append(("pi-lazy", apply(f, append_lazy(inner.genarg, t.genarg))))
    return out


def steps(t, pi: str = "eager") -> list:
    """Every one-step reduct; pi selects eager append, lazy append or both."""
    out = [SpecStep(r, (), new) for r, new in root_steps(t, pi)]
    match t:
        case Lam(x, b):
            out += [SpecStep(s.rule, (0,) + s.pos, Lam(x, s.after)) for s in steps(b, pi)]
        case GApp(f, u, x, v):
            out += [SpecStep(s.rule, (0,) + s.pos, GApp(s.after, u, x, v)) for s in steps(f, pi)]
            out += [SpecStep(s.rule, (1,) + s.pos, GApp(f, s.after, x, v)) for s in steps(u, pi)]
            out += [SpecStep(s.rule, (2,) + s.pos, GApp(f, u, x, s.after)) for s in steps(v, pi)]
    return out


def step_lazy_pi(t) -> list:
    return [s for s in steps(t, "lazy") if s.rule == "pi-lazy"]


def pi_nf(t):
    """Pi-normal form, computed structurally."""
    match t:
        case Var():
            return t
        case Lam(x, b):
            return Lam(x, pi_nf(b))
        case GApp(f, u, x, v):
            return _app_nf(pi_nf(f), GenArg(pi_nf(u), x, pi_nf(v)))
    raise TypeError(t)


def _app_nf(f, r: GenArg):
    # f and r are pi-normal; so is the body of r, hence a single append suffices
    if isinstance(f, GApp):
        return apply(f.fun, append(f.genarg, r))
    return apply(f, r)


def key(t, env: tuple = ()):
    match t:
        case Var(x):
            return ("v", env.index(x)) if x in env else ("f", x)
        case Lam(x, b):
            return ("l", key(b, (x,) + env))
        case GApp(f, u, x, v):
            return ("g", key(f, env), key(u, env), key(v, (x,) + env))
    raise TypeError(t)


def alpha_eq(a, b) -> bool:
    return key(a) == key(b)


def size(t) -> int:
    match t:
        case Var():
            return 1
        case Lam(_, b):
            return 1 + size(b)
        case GApp(f, u, _, v):
            return 1 + size(f) + size(u) + size(v)
    raise TypeError(t)


# ---------------------------------------------------------------- typing

def _synth(s: Solver, ctx, t, pos):
    match t:
        case Var(x):
            return lookup(ctx, x, pos)
        case Lam(x, b):
            a = s.fresh()
            return Arrow(a, _synth(s, ctx | {x: a}, b, pos + (0,)))
        case GApp(f, u, x, v):
            ft = expect_arrow(s, _synth(s, ctx, f, pos + (0,)), pos, "generalised application")
            s.unify(_synth(s, ctx, u, pos + (1,)), ft.dom, pos + (1,))
            return _synth(s, ctx | {x: ft.cod}, v, pos + (2,))
    raise TypeError(t)


def infer(ctx: dict, t):
    s = Solver()
    (a,) = s.pretty([_synth(s, ctx, t, ())], ctx_tvars(ctx))
    return a


def check(ctx: dict, t, a) -> bool:
    s = Solver()
    try:
        s.unify(_synth(s, ctx, t, ()), a)
    except TypingError:
        return False
    return True


# ---------------------------------------------------------------- concrete syntax

def show(t) -> str:
    match t:
        case Var(x):
            return x
        case Lam(x, b):
            return f"\\{x}.{show(b)}"
        case GApp(f, u, x, v):
            head = f"({show(f)})" if isinstance(f, Lam) else show(f)
            return f"{head}({show(u)}, {x}.{show(v)})"
    raise TypeError(t)


def parse(src: str):
    ts = TokenStream(src)
    t = _term(ts)
    ts.finish()
    return t


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
        x = ts.ident()
        ts.expect(".")
        v = _term(ts)
        ts.expect(")")
        t = GApp(t, u, x, v)
    return t


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
