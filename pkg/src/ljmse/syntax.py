"""Abstract syntax of the sequent calculus: types, terms, co-terms and commands.

Values are immutable.  Binders carry names; alpha-equivalence is decided by
converting to a nameless key, and substitution renames binders on demand.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Union


def fresh_name(base: str, avoid) -> str:
    """First name of the form base, base1, base2, ... that is not in `avoid`."""
    if base not in avoid:
        return base
    stem = base.rstrip("0123456789") or base
    for i in itertools.count(1):
        cand = f"{stem}{i}"
        if cand not in avoid:
            return cand
    raise AssertionError("unreachable")


# ---------------------------------------------------------------- types

@dataclass(frozen=True)
class TVar:
    name: str

    @cached_property
    def ftv(self) -> frozenset:
        return frozenset((self.name,))


@dataclass(frozen=True)
class Bottom:
    @property
    def ftv(self) -> frozenset:
        return frozenset()


BOT = Bottom()


@dataclass(frozen=True)
class Arrow:
    dom: "Type"
    cod: "Type"

    @cached_property
    def ftv(self) -> frozenset:
        return self.dom.ftv | self.cod.ftv


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Type"

    @cached_property
    def ftv(self) -> frozenset:
        return self.body.ftv - {self.var}


Type = Union[TVar, Bottom, Arrow, Forall]


def neg(a: Type) -> Type:
    return Arrow(a, BOT)


def arrows(*tys: Type) -> Type:
    """Right-nested implication a1 -> a2 -> ... -> an."""
    out = tys[-1]
    for a in reversed(tys[:-1]):
        out = Arrow(a, out)
    return out


def ty_subst_type(b: Type, x: str, a: Type) -> Type:
    """Capture-avoiding [b/x]a."""
    if x not in a.ftv:
        return a
    match a:
        case TVar(n):
            return b if n == x else a
        case Arrow(d, c):
            return Arrow(ty_subst_type(b, x, d), ty_subst_type(b, x, c))
        case Forall(y, body):
            if y in b.ftv:
                y2 = fresh_name(y, b.ftv | body.ftv | {x})
                body = ty_subst_type(TVar(y2), y, body)
                y = y2
            return Forall(y, ty_subst_type(b, x, body))
    raise TypeError(f"not a type: {a!r}")


def type_key(a: Type, env: tuple = ()):
    """Nameless key: bound type variables become indices."""
    match a:
        case TVar(n):
            for i, m in enumerate(reversed(env)):
                if m == n:
                    return ("b", i)
            return ("f", n)
        case Bottom():
            return ("bot",)
        case Arrow(d, c):
            return ("->", type_key(d, env), type_key(c, env))
        case Forall(y, body):
            return ("all", type_key(body, env + (y,)))
    raise TypeError(f"not a type: {a!r}")


def type_alpha_eq(a: Type, b: Type) -> bool:
    return a == b or type_key(a) == type_key(b)


def type_size(a: Type) -> int:
    match a:
        case Arrow(d, c):
            return 1 + type_size(d) + type_size(c)
        case Forall(_, body):
            return 1 + type_size(body)
    return 1


def has_forall(a: Type) -> bool:
    match a:
        case Forall():
            return True
        case Arrow(d, c):
            return has_forall(d) or has_forall(c)
    return False


# ---------------------------------------------------------------- expressions

class _Node:
    """Shared behaviour of expression nodes: cached free (type) variables."""

    __slots__ = ()

    @cached_property
    def fv(self) -> frozenset:
        return _fv(self)

    @cached_property
    def ftv(self) -> frozenset:
        return _ftv(self)


@dataclass(frozen=True)
class Var(_Node):
    name: str


@dataclass(frozen=True)
class Lam(_Node):
    var: str
    body: "Term"


@dataclass(frozen=True)
class Coerce(_Node):
    cmd: "Cut"


@dataclass(frozen=True)
class TyLam(_Node):
    var: str
    body: "Term"


@dataclass(frozen=True)
class Nil(_Node):
    pass


NIL = Nil()


@dataclass(frozen=True)
class Cons(_Node):
    head: "Term"
    tail: "CoTerm"


@dataclass(frozen=True)
class TyCons(_Node):
    ty: Type
    tail: "CoTerm"


@dataclass(frozen=True)
class Sel(_Node):
    var: str
    cmd: "Cut"


@dataclass(frozen=True)
class Cut(_Node):
    term: "Term"
    coterm: "CoTerm"


Term = Union[Var, Lam, Coerce, TyLam]
CoTerm = Union[Nil, Cons, TyCons, Sel]
Command = Cut
Expr = Union[Term, CoTerm, Command]

TERMS = (Var, Lam, Coerce, TyLam)
COTERMS = (Nil, Cons, TyCons, Sel)


def syntactic_class(e: Expr) -> str:
    if isinstance(e, TERMS):
        return "term"
    if isinstance(e, COTERMS):
        return "coterm"
    if isinstance(e, Cut):
        return "command"
    raise TypeError(f"not an expression: {e!r}")


def is_value(t) -> bool:
    return isinstance(t, (Var, Lam, TyLam))


def is_eval_context(l) -> bool:
    return isinstance(l, (Nil, Cons, TyCons))


def _fv(e) -> frozenset:
    match e:
        case Var(n):
            return frozenset((n,))
        case Lam(x, body) | Sel(x, body):
            return body.fv - {x}
        case Coerce(c) | TyLam(_, c) | TyCons(_, c):
            return c.fv
        case Nil():
            return frozenset()
        case Cons(a, b) | Cut(a, b):
            return a.fv | b.fv
    raise TypeError(f"not an expression: {e!r}")


def _ftv(e) -> frozenset:
    match e:
        case Var() | Nil():
            return frozenset()
        case Lam(_, body) | Sel(_, body) | Coerce(body):
            return body.ftv
        case TyLam(x, body):
            return body.ftv - {x}
        case TyCons(ty, tail):
            return ty.ftv | tail.ftv
        case Cons(a, b) | Cut(a, b):
            return a.ftv | b.ftv
    raise TypeError(f"not an expression: {e!r}")


def free_vars(e: Expr) -> frozenset:
    return e.fv


def free_tyvars(e: Expr) -> frozenset:
    return e.ftv


def all_names(e: Expr) -> set:
    """Every term variable name occurring in e, free or bound."""
    out = set()

    def go(e):
        match e:
            case Var(n):
                out.add(n)
            case Lam(x, b) | Sel(x, b):
                out.add(x)
                go(b)
            case Coerce(c) | TyLam(_, c) | TyCons(_, c):
                go(c)
            case Cons(a, b) | Cut(a, b):
                go(a)
                go(b)
    go(e)
    return out


def rename(e: Expr, x: str, y: str) -> Expr:
    return subst(Var(y), x, e)


def subst(t: Term, x: str, e: Expr) -> Expr:
    """Capture-avoiding [t/x]e; the result stays in e's syntactic class."""
    if x not in e.fv:
        return e
    match e:
        case Var(n):
            return t if n == x else e
        case Lam(y, body):
            y, body = _avoid(y, body, t, x)
            return Lam(y, subst(t, x, body))
        case Sel(y, cmd):
            y, cmd = _avoid(y, cmd, t, x)
            return Sel(y, subst(t, x, cmd))
        case Coerce(c):
            return Coerce(subst(t, x, c))
        case TyLam(a, body):
            if a in t.ftv:
                a2 = fresh_name(a, t.ftv | body.ftv)
                body = ty_subst_expr(TVar(a2), a, body)
                a = a2
            return TyLam(a, subst(t, x, body))
        case Cons(u, l):
            return Cons(subst(t, x, u), subst(t, x, l))
        case TyCons(ty, l):
            return TyCons(ty, subst(t, x, l))
        case Cut(u, l):
            return Cut(subst(t, x, u), subst(t, x, l))
    raise TypeError(f"not an expression: {e!r}")


def _avoid(y, body, t, x):
    # rename binder y when it would capture a free variable of t
    if y in t.fv:
        y2 = fresh_name(y, t.fv | body.fv | {x})
        return y2, rename(body, y, y2)
    return y, body


def ty_subst_expr(b: Type, x: str, e: Expr) -> Expr:
    """Capture-avoiding type substitution [b/x]e."""
    if x not in e.ftv:
        return e
    match e:
        case Lam(y, body):
            return Lam(y, ty_subst_expr(b, x, body))
        case Sel(y, cmd):
            return Sel(y, ty_subst_expr(b, x, cmd))
        case Coerce(c):
            return Coerce(ty_subst_expr(b, x, c))
        case TyLam(a, body):
            if a in b.ftv:
                a2 = fresh_name(a, b.ftv | body.ftv | {x})
                body = ty_subst_expr(TVar(a2), a, body)
                a = a2
            return TyLam(a, ty_subst_expr(b, x, body))
        case Cons(u, l):
            return Cons(ty_subst_expr(b, x, u), ty_subst_expr(b, x, l))
        case TyCons(ty, l):
            return TyCons(ty_subst_type(b, x, ty), ty_subst_expr(b, x, l))
        case Cut(u, l):
            return Cut(ty_subst_expr(b, x, u), ty_subst_expr(b, x, l))
    raise TypeError(f"not an expression: {e!r}")


def append(l: CoTerm, l2: CoTerm) -> CoTerm:
    """Eager concatenation l@l2."""
    match l:
        case Nil():
            return l2
        case Cons(u, rest):
            return Cons(u, append(rest, l2))
        case TyCons(ty, rest):
            return TyCons(ty, append(rest, l2))
        case Sel(x, Cut(t, rest)):
            if x in l2.fv:
                x2 = fresh_name(x, l2.fv | l.cmd.fv)
                c = rename(l.cmd, x, x2)
                x, t, rest = x2, c.term, c.coterm
            return Sel(x, Cut(t, append(rest, l2)))
    raise TypeError(f"not a co-term: {l!r}")


# ---------------------------------------------------------------- alpha keys

def expr_key(e: Expr, env: tuple = (), tenv: tuple = ()):
    """Nameless key of e; equal keys iff alpha-equivalent."""
    match e:
        case Var(n):
            for i, m in enumerate(reversed(env)):
                if m == n:
                    return ("v", i)
            return ("f", n)
        case Lam(x, body):
            return ("lam", expr_key(body, env + (x,), tenv))
        case Sel(x, cmd):
            return ("sel", expr_key(cmd, env + (x,), tenv))
        case Coerce(c):
            return ("co", expr_key(c, env, tenv))
        case TyLam(a, body):
            return ("tylam", expr_key(body, env, tenv + (a,)))
        case Nil():
            return ("nil",)
        case Cons(u, l):
            return ("cons", expr_key(u, env, tenv), expr_key(l, env, tenv))
        case TyCons(ty, l):
            return ("tycons", type_key(ty, tenv), expr_key(l, env, tenv))
        case Cut(u, l):
            return ("cut", expr_key(u, env, tenv), expr_key(l, env, tenv))
    raise TypeError(f"not an expression: {e!r}")


def alpha_eq(a: Expr, b: Expr) -> bool:
    return a == b or expr_key(a) == expr_key(b)


def size(e: Expr) -> int:
    """Number of AST nodes (types inside TyCons are not counted)."""
    match e:
        case Var() | Nil():
            return 1
        case Lam(_, b) | Sel(_, b) | Coerce(b) | TyLam(_, b) | TyCons(_, b):
            return 1 + size(b)
        case Cons(a, b) | Cut(a, b):
            return 1 + size(a) + size(b)
    raise TypeError(f"not an expression: {e!r}")


def is_second_order(e: Expr) -> bool:
    match e:
        case TyLam() | TyCons():
            return True
        case Var() | Nil():
            return False
        case Lam(_, b) | Sel(_, b) | Coerce(b):
            return is_second_order(b)
        case Cons(a, b) | Cut(a, b):
            return is_second_order(a) or is_second_order(b)
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------- positions

def children(e: Expr) -> list:
    """(index, child) pairs of reducible sub-expressions, in left-to-right order."""
    match e:
        case Lam(_, b) | Sel(_, b) | Coerce(b) | TyLam(_, b):
            return [(0, b)]
        case TyCons(_, b):
            return [(1, b)]
        case Cons(a, b) | Cut(a, b):
            return [(0, a), (1, b)]
    return []


def with_child(e: Expr, i: int, new: Expr) -> Expr:
    match e, i:
        case Lam(x, _), 0:
            return Lam(x, new)
        case Sel(x, _), 0:
            return Sel(x, new)
        case Coerce(_), 0:
            return Coerce(new)
        case TyLam(x, _), 0:
            return TyLam(x, new)
        case TyCons(ty, _), 1:
            return TyCons(ty, new)
        case Cons(_, b), 0:
            return Cons(new, b)
        case Cons(a, _), 1:
            return Cons(a, new)
        case Cut(_, b), 0:
            return Cut(new, b)
        case Cut(a, _), 1:
            return Cut(a, new)
    raise IndexError(f"no child {i} in {type(e).__name__}")


def subexpr(e: Expr, pos) -> Expr:
    for i in pos:
        e = dict(children(e))[i]
    return e


def replace_at(e: Expr, pos, new: Expr) -> Expr:
    if not pos:
        return new
    child = dict(children(e))[pos[0]]
    return with_child(e, pos[0], replace_at(child, pos[1:], new))
