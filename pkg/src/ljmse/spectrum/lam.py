"""The pure lambda-calculus, the bottom of the spectrum.

Terms are the target module's Var, Lam and App; type abstraction and type
application are rejected here.
"""
from __future__ import annotations

from .. import target as T
from ..target import App, Lam, Var
from ..unify import TypingError
from .base import SpecStep

NAME = "lambda"


def validate(t):
    match t:
        case Var():
            return t
        case Lam(_, b):
            validate(b)
            return t
        case App(f, a):
            validate(f)
            validate(a)
            return t
    raise TypeError(f"not a lambda-term: {t!r}")


def is_term(t) -> bool:
    return isinstance(t, (Var, Lam, App))


def all_names(t) -> set:
    match t:
        case Var(x):
            return {x}
        case Lam(x, b):
            return {x} | all_names(b)
        case App(f, a):
            return all_names(f) | all_names(a)
    raise TypeError(t)


subst = T.subst
size = T.size
key = T.to_nameless


def alpha_eq(a, b) -> bool:
    return key(a) == key(b)


def steps(t) -> list:
    out = []
    if isinstance(t, App) and isinstance(t.fun, Lam):
        out.append(SpecStep("beta", (), subst(t.arg, t.fun.var, t.fun.body)))
    match t:
        case Lam(x, b):
            out += [SpecStep(s.rule, (0,) + s.pos, Lam(x, s.after)) for s in steps(b)]
        case App(f, a):
            out += [SpecStep(s.rule, (0,) + s.pos, App(s.after, a)) for s in steps(f)]
            out += [SpecStep(s.rule, (1,) + s.pos, App(f, s.after)) for s in steps(a)]
    return out


def infer(ctx: dict, t):
    validate(t)
    return T.infer_lam(ctx, t)


def check(ctx: dict, t, a) -> bool:
    validate(t)
    try:
        return T.typecheck_lam(ctx, t, a)
    except TypingError:
        return False


def parse(src: str):
    return validate(T.parse_lam(src))


def show(t) -> str:
    return T.print_lam(t)
