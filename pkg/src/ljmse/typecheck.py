"""Typing of terms, co-terms and commands.

Synthesis and checking are interleaved with unification, so unannotated
binders get their types from the surrounding derivation.  At the second-order
level a type abstraction introduces a skolem, which also discharges the
eigenvariable proviso: the skolem is fresh for every type in the context.
"""
from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Arrow, Coerce, Cons, Cut, Forall, Lam, Nil, Sel, TVar, TyCons, TyLam,
    Var, is_second_order, syntactic_class, type_alpha_eq,
)
from .unify import Meta, Solver, TypingError, rename_tvars

__all__ = [
    "TypingError", "Judgement", "infer", "infer_term", "check_term", "check_coterm",
    "check_coterm_against", "check_command", "check_level2", "subject_reduction_check",
]


@dataclass(frozen=True)
class Judgement:
    kind: str
    ctx: dict
    subject: object
    in_type: object
    out_type: object


class _Checker:
    def __init__(self, level: str):
        self.s = Solver()
        self.level = level
        self.tyenv = {}

    def _second(self, pos):
        if self.level != "second":
            raise TypingError("level", pos, "second-order construct at propositional level")

    def _lookup(self, ctx, x, pos):
        if x not in ctx:
            raise TypingError("unbound-var", pos, x)
        return ctx[x]

    def synth(self, ctx, t, pos):
        match t:
            case Var(x):
                return self._lookup(ctx, x, pos)
            case Lam(x, body):
                a, b = self.s.fresh(), self.s.fresh()
                self.check(ctx | {x: a}, body, b, pos + (0,))
                return Arrow(a, b)
            case Coerce(c):
                return self.command(ctx, c, None, pos + (0,))
            case TyLam(x, body):
                self._second(pos)
                sk = self.s.skolem(x)
                saved = self.tyenv
                self.tyenv = saved | {x: sk}
                try:
                    with self.s.within(sk):
                        b = self.synth(ctx, body, pos + (0,))
                finally:
                    self.tyenv = saved
                return Forall(sk, b)
        raise TypeError(f"not a term: {t!r}")

    def check(self, ctx, t, a, pos):
        match t:
            case Lam(x, body):
                a = self.s.resolve(a)
                if isinstance(a, Meta):
                    self.s.unify(a, Arrow(self.s.fresh(), self.s.fresh()), pos)
                    a = self.s.resolve(a)
                if not isinstance(a, Arrow):
                    raise TypingError("clash", pos, "abstraction checked against a non-implication")
                self.check(ctx | {x: a.dom}, body, a.cod, pos + (0,))
            case TyLam(x, body):
                self._second(pos)
                a = self.s.resolve(a)
                if not isinstance(a, Forall):
                    self.s.unify(self.synth(ctx, t, pos), a, pos)
                    return
                sk = self.s.skolem(x)
                expected = self.s.subst(TVar(sk), a.var, a.body)
                saved = self.tyenv
                self.tyenv = saved | {x: sk}
                try:
                    with self.s.within(sk):
                        self.check(ctx, body, expected, pos + (0,))
                finally:
                    self.tyenv = saved
            case Coerce(c):
                self.command(ctx, c, a, pos + (0,))
            case _:
                self.s.unify(self.synth(ctx, t, pos), a, pos)

    def command(self, ctx, c, out, pos):
        head = self.synth(ctx, c.term, pos + (0,))
        return self.coterm(ctx, c.coterm, head, out, pos + (1,))

    def coterm(self, ctx, l, a, out, pos):
        match l:
            case Nil():
                if out is None:
                    return a
                self.s.unify(a, out, pos)
                return out
            case Cons(u, rest):
                a = self.s.resolve(a)
                if isinstance(a, Meta):
                    self.s.unify(a, Arrow(self.s.fresh(), self.s.fresh()), pos)
                    a = self.s.resolve(a)
                if not isinstance(a, Arrow):
                    raise TypingError("clash", pos, "argument list against a non-implication")
                self.check(ctx, u, a.dom, pos + (0,))
                return self.coterm(ctx, rest, a.cod, out, pos + (1,))
            case TyCons(ty, rest):
                self._second(pos)
                a = self.s.resolve(a)
                if isinstance(a, Meta):
                    raise TypingError("not-synthesizable", pos, "type argument against an unknown type")
                if not isinstance(a, Forall):
                    raise TypingError("clash", pos, "type argument against a non-quantified type")
                inst = self.s.subst(rename_tvars(ty, self.tyenv), a.var, a.body)
                return self.coterm(ctx, rest, inst, out, pos + (1,))
            case Sel(x, c):
                return self.command(ctx | {x: a}, c, out, pos + (0,))
        raise TypeError(f"not a co-term: {l!r}")


def _level_of(e, level):
    if level is None:
        return "second" if is_second_order(e) else "prop"
    return level


def _ctx_tvars(ctx) -> set:
    out = set()
    for a in ctx.values():
        out |= a.ftv
    return out


def infer(ctx: dict, e, level: str | None = None) -> Judgement:
    """Principal judgement for a term, co-term or command."""
    ch = _Checker(_level_of(e, level))
    cls = syntactic_class(e)
    avoid = _ctx_tvars(ctx)
    if cls == "term":
        (out,) = ch.s.pretty([ch.synth(ctx, e, ())], avoid)
        return Judgement("term", ctx, e, None, out)
    if cls == "coterm":
        a = ch.s.fresh()
        b = ch.coterm(ctx, e, a, None, ())
        a, b = ch.s.pretty([a, b], avoid)
        return Judgement("coterm", ctx, e, a, b)
    (out,) = ch.s.pretty([ch.command(ctx, e, None, ())], avoid)
    return Judgement("command", ctx, e, None, out)


def infer_term(ctx: dict, t, level: str = "prop"):
    if level == "prop" and is_second_order(t):
        raise TypingError("level", (), "second-order construct at propositional level")
    return infer(ctx, t, level).out_type


def check_term(ctx: dict, t, a, level: str | None = None) -> bool:
    ch = _Checker(_level_of(t, level))
    ch.check(ctx, t, a, ())
    return True


def check_coterm(ctx: dict, l, a, level: str | None = None):
    """The type B with ctx | l : a |- B."""
    ch = _Checker(_level_of(l, level))
    b = ch.coterm(ctx, l, a, None, ())
    (b,) = ch.s.pretty([b], _ctx_tvars(ctx) | a.ftv)
    return b


def check_coterm_against(ctx: dict, l, a, b, level: str | None = None) -> bool:
    ch = _Checker(_level_of(l, level))
    ch.coterm(ctx, l, a, b, ())
    return True


def check_command(ctx: dict, c, b, level: str | None = None) -> bool:
    ch = _Checker(_level_of(c, level))
    ch.command(ctx, c, b, ())
    return True


def check_level2(ctx: dict, t, a) -> bool:
    return check_term(ctx, t, a, "second")


def subject_reduction_check(ctx: dict, e, step) -> bool:
    """Does the reduct of `step` have exactly the principal type of e?"""
    try:
        j = infer(ctx, e)
        after = step.after
        if syntactic_class(after) != j.kind:
            return False
        match j.kind:
            case "term":
                return check_term(ctx, after, j.out_type, "second")
            case "coterm":
                return check_coterm_against(ctx, after, j.in_type, j.out_type, "second")
            case _:
                return check_command(ctx, after, j.out_type, "second")
    except TypingError:
        return False


def same_type(a, b) -> bool:
    return type_alpha_eq(a, b)
