"""Seeded, derivation-directed generation of well-typed terms.

Each generator builds a typing derivation top-down: it is handed a context
and a goal type and picks a rule whose premises it can fill in, biased
towards redex shapes.  When the budget runs out it falls back on a fresh
free variable of the goal type, recorded in the output context.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .. import syntax as S
from .. import target as T
from ..spectrum import lj, ljm, ljms
from ..syntax import Arrow, Forall, TVar, fresh_name, ty_subst_type, type_alpha_eq
from ..typecheck import TypingError, check_term

BASE = ("X", "Y", "Z")
BINDERS = "xyzwv"


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_size: int = 12
    calculus: str = "ljmse"
    level: str = "prop"
    count: int = 500


class _Retry(Exception):
    """The current attempt painted itself into a corner; start over."""


class _Base:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.free = {}
        self.bound_tvars = set()

    def ty(self, depth: int = 2):
        if depth == 0 or self.rng.random() < 0.55:
            return TVar(self.rng.choice(BASE))
        return Arrow(self.ty(depth - 1), self.ty(depth - 1))

    def binder(self, scope) -> str:
        return fresh_name(self.rng.choice(BINDERS), set(scope) | set(self.free))

    def free_var(self, a) -> str:
        if a.ftv & self.bound_tvars:
            raise _Retry()
        for x, b in self.free.items():
            if type_alpha_eq(a, b) and self.rng.random() < 0.5:
                return x
        name = f"a{len(self.free) + 1}"
        self.free[name] = a
        return name

    def vars_of(self, ctx, a) -> list:
        return [x for x, b in ctx.items() if type_alpha_eq(a, b)]

    def split(self, n: int, parts: int) -> list:
        n = max(n, parts)
        cuts = sorted(self.rng.randint(1, n - 1) for _ in range(parts - 1)) if n > 1 else []
        bounds = [0] + cuts + [n]
        return [max(1, bounds[i + 1] - bounds[i]) for i in range(parts)]

    def pick(self, weighted: dict) -> str:
        keys = [k for k, w in weighted.items() if w > 0]
        return self.rng.choices(keys, [weighted[k] for k in keys])[0]


# ---------------------------------------------------------------- the full calculus

class _GenLJmse(_Base):
    def __init__(self, rng, level):
        super().__init__(rng)
        self.level = level

    def term(self, ctx, a, n):
        vs = self.vars_of(ctx, a)
        if n <= 1 and (vs or not isinstance(a, Arrow)):
            return S.Var(self.rng.choice(vs) if vs else self.free_var(a))
        opts = {
            "var": 1 if vs else 0,
            "lam": 3 if isinstance(a, Arrow) else 0,
            "tylam": 3 if isinstance(a, Forall) else 0,
            "coerce": (8 if self.level == "second" else 4) if n >= 3 else 0,
            "free": 1 if n < 4 else 0.2,
        }
        if a.ftv & self.bound_tvars:
            # free variables may not mention an eigenvariable
            opts["free"] = opts["coerce"] = 0
            if not (vs or isinstance(a, Arrow)):
                raise _Retry()
        match self.pick(opts):
            case "var":
                return S.Var(self.rng.choice(vs))
            case "free":
                return S.Var(self.free_var(a))
            case "lam":
                x = self.binder(ctx)
                return S.Lam(x, self.term(ctx | {x: a.dom}, a.cod, n - 1))
            case "tylam":
                return self.tylam(ctx, a, n)
            case "coerce":
                return S.Coerce(self.cmd(ctx, a, n - 1))

    def tylam(self, ctx, a, n):
        avoid = set(BASE) | {v for b in ctx.values() for v in b.ftv} | a.ftv | set(self.bound_tvars)
        x = fresh_name(a.var, avoid)
        body = ty_subst_type(TVar(x), a.var, a.body)
        self.bound_tvars.add(x)
        try:
            return S.TyLam(x, self.term(ctx, body, n - 1))
        finally:
            self.bound_tvars.discard(x)

    def poly_type(self):
        """A rank-1 polymorphic type forall V.C with V free in C."""
        v = TVar("V")
        c = self.rng.choice([
            Arrow(v, v), Arrow(v, Arrow(self.ty(0), v)), Arrow(Arrow(v, v), Arrow(v, v)),
            Arrow(self.ty(1), Arrow(v, v)),
        ])
        return Forall("V", c)

    def cmd(self, ctx, a, n):
        second = self.level == "second"
        opts = {
            "nil": 2, "beta": 4 if n >= 4 else 0, "sigma": 3 if n >= 3 else 0,
            "head": 2, "pi": 3 if n >= 5 else 0, "mu": 3 if n >= 4 else 0,
            "beta2": 10 if second and n >= 3 else 0, "tyhead": 2 if second else 0,
        }
        match self.pick(opts):
            case "nil":
                return S.Cut(self.term(ctx, a, n - 2), S.NIL)
            case "beta":
                d, e = self.ty(1), (a if self.rng.random() < 0.6 else self.ty(1))
                k1, k2, k3 = self.split(n - 3, 3)
                x = self.binder(ctx)
                body = self.term(ctx | {x: d}, e, k1)
                return S.Cut(S.Lam(x, body), S.Cons(self.term(ctx, d, k2), self.coterm(ctx, e, a, k3)))
            case "sigma":
                b = self.ty(1)
                k1, k2 = self.split(n - 2, 2)
                x = self.binder(ctx)
                return S.Cut(self.term(ctx, b, k1), S.Sel(x, self.cmd(ctx | {x: b}, a, k2)))
            case "head":
                d = self.ty(1)
                f = S.Var(self.free_var(Arrow(d, a)))
                return S.Cut(f, S.Cons(self.term(ctx, d, max(1, n - 3)), S.NIL))
            case "pi":
                if self.rng.random() < 0.5:
                    d = self.ty(1)
                    k1, k2 = self.split(n - 4, 2)
                    inner = self.cmd(ctx, Arrow(d, a), k1)
                    return S.Cut(S.Coerce(inner), S.Cons(self.term(ctx, d, k2), S.NIL))
                return S.Cut(S.Coerce(self.cmd(ctx, a, n - 3)), S.NIL)
            case "mu":
                b = self.ty(1)
                k1, k2 = self.split(n - 4, 2)
                x = self.binder(ctx)
                return S.Cut(self.term(ctx, b, k1), S.Sel(x, S.Cut(S.Var(x), self.coterm(ctx, b, a, k2))))
            case "beta2":
                poly = self.poly_type()
                inst = self.ty(1)
                k1, k2 = self.split(n - 3, 2)
                lam = self.tylam(ctx, poly, k1 + 1)
                rest = self.coterm(ctx, ty_subst_type(inst, poly.var, poly.body), a, k2)
                return S.Cut(lam, S.TyCons(inst, rest))
            case "tyhead":
                poly = self.poly_type()
                inst = self.ty(1)
                f = S.Var(self.free_var(poly))
                rest = self.coterm(ctx, ty_subst_type(inst, poly.var, poly.body), a, max(1, n - 3))
                return S.Cut(f, S.TyCons(inst, rest))

    def coterm(self, ctx, b, a, n):
        opts = {
            "nil": 4 if type_alpha_eq(a, b) else 0,
            "cons": 3 if isinstance(b, Arrow) and n >= 2 else 0,
            "tycons": 3 if isinstance(b, Forall) else 0,
            "sel": 2 if n >= 3 else 0,
            "mu": 3 if n >= 3 else 0,
        }
        if not any(opts.values()):
            if isinstance(b, Arrow):
                opts["cons"] = 1
            else:
                x = self.binder(ctx)
                return S.Sel(x, S.Cut(S.Var(self.free_var(a)), S.NIL))
        match self.pick(opts):
            case "nil":
                return S.NIL
            case "cons":
                k1, k2 = self.split(n - 1, 2)
                return S.Cons(self.term(ctx, b.dom, k1), self.coterm(ctx, b.cod, a, k2))
            case "tycons":
                inst = self.ty(1)
                return S.TyCons(inst, self.coterm(ctx, ty_subst_type(inst, b.var, b.body), a, n - 1))
            case "sel":
                x = self.binder(ctx)
                return S.Sel(x, self.cmd(ctx | {x: b}, a, n - 1))
            case "mu":
                x = self.binder(ctx)
                return S.Sel(x, S.Cut(S.Var(x), self.coterm(ctx, b, a, n - 2)))


# ---------------------------------------------------------------- spectrum calculi

class _GenLam(_Base):
    def term(self, ctx, a, n):
        vs = self.vars_of(ctx, a)
        if n <= 1:
            return T.Var(self.rng.choice(vs) if vs else self.free_var(a))
        opts = {"var": 1 if vs else 0, "free": 1, "lam": 3 if isinstance(a, Arrow) else 0,
                "app": 3 if n >= 3 else 0, "beta": 4 if n >= 4 else 0}
        match self.pick(opts):
            case "var":
                return T.Var(self.rng.choice(vs))
            case "free":
                return T.Var(self.free_var(a))
            case "lam":
                x = self.binder(ctx)
                return T.Lam(x, self.term(ctx | {x: a.dom}, a.cod, n - 1))
            case "app":
                d = self.ty(1)
                k1, k2 = self.split(n - 1, 2)
                return T.App(self.term(ctx, Arrow(d, a), k1), self.term(ctx, d, k2))
            case "beta":
                d = self.ty(1)
                k1, k2 = self.split(n - 2, 2)
                x = self.binder(ctx)
                return T.App(T.Lam(x, self.term(ctx | {x: d}, a, k1)), self.term(ctx, d, k2))


class _GenLJ(_Base):
    def term(self, ctx, a, n):
        vs = self.vars_of(ctx, a)
        if n <= 1:
            return lj.Var(self.rng.choice(vs) if vs else self.free_var(a))
        opts = {"var": 1 if vs else 0, "free": 1, "lam": 3 if isinstance(a, Arrow) else 0,
                "gapp": 2 if n >= 4 else 0, "beta": 4 if n >= 5 else 0, "pi": 4 if n >= 7 else 0}
        match self.pick(opts):
            case "var":
                return lj.Var(self.rng.choice(vs))
            case "free":
                return lj.Var(self.free_var(a))
            case "lam":
                x = self.binder(ctx)
                return lj.Lam(x, self.term(ctx | {x: a.dom}, a.cod, n - 1))
            case "gapp" | "beta" | "pi" as shape:
                d, e = self.ty(1), (a if self.rng.random() < 0.5 else self.ty(1))
                k1, k2, k3 = self.split(n - 1, 3)
                match shape:
                    case "beta":
                        y = self.binder(ctx)
                        f = lj.Lam(y, self.term(ctx | {y: d}, e, max(1, k1 - 1)))
                    case "pi":
                        f = self.inner_app(ctx, Arrow(d, e), k1)
                    case _:
                        f = self.term(ctx, Arrow(d, e), k1)
                x = self.binder(ctx)
                return lj.GApp(f, self.term(ctx, d, k2), x, self.term(ctx | {x: e}, a, k3))

    def inner_app(self, ctx, a, n):
        d, e = self.ty(1), a
        k1, k2, k3 = self.split(max(3, n - 1), 3)
        x = self.binder(ctx)
        return lj.GApp(self.term(ctx, Arrow(d, e), k1), self.term(ctx, d, k2), x,
                       self.term(ctx | {x: e}, a, k3))


class _GenLJm(_Base):
    def term(self, ctx, a, n):
        vs = self.vars_of(ctx, a)
        if n <= 1:
            return ljm.Var(self.rng.choice(vs) if vs else self.free_var(a))
        opts = {"var": 1 if vs else 0, "free": 1, "lam": 3 if isinstance(a, Arrow) else 0,
                "app": 2 if n >= 3 else 0, "beta": 4 if n >= 4 else 0, "pi": 3 if n >= 6 else 0}
        match self.pick(opts):
            case "var":
                return ljm.Var(self.rng.choice(vs))
            case "free":
                return ljm.Var(self.free_var(a))
            case "lam":
                x = self.binder(ctx)
                return ljm.Lam(x, self.term(ctx | {x: a.dom}, a.cod, n - 1))
            case "app" | "beta" | "pi" as shape:
                d, e = self.ty(1), self.rng.choice([a, self.ty(1), Arrow(self.ty(0), a)])
                k1, k2, k3 = self.split(n - 1, 3)
                match shape:
                    case "beta":
                        y = self.binder(ctx)
                        f = ljm.Lam(y, self.term(ctx | {y: d}, e, max(1, k1 - 1)))
                    case "pi":
                        d0 = self.ty(1)
                        j1, j2, j3 = self.split(max(3, k1 - 1), 3)
                        f = ljm.App(self.term(ctx, Arrow(d0, Arrow(d, e)), j1), self.term(ctx, d0, j2),
                                    self.coterm(ctx, Arrow(d, e), Arrow(d, e), j3))
                    case _:
                        f = self.term(ctx, Arrow(d, e), k1)
                return ljm.App(f, self.term(ctx, d, k2), self.coterm(ctx, e, a, k3))

    def coterm(self, ctx, b, a, n):
        opts = {"sel": 3, "cons": 4 if isinstance(b, Arrow) and n >= 3 else 0,
                "mu": 4 if isinstance(b, Arrow) and n >= 4 else 0}
        match self.pick(opts):
            case "sel":
                x = self.binder(ctx)
                return ljm.Sel(x, self.term(ctx | {x: b}, a, n - 1))
            case "cons":
                k1, k2 = self.split(n - 1, 2)
                return ljm.Cons(self.term(ctx, b.dom, k1), self.coterm(ctx, b.cod, a, k2))
            case "mu":
                x = self.binder(ctx)
                k1, k2 = self.split(n - 2, 2)
                return ljm.Sel(x, ljm.App(ljm.Var(x), self.term(ctx, b.dom, k1), self.coterm(ctx, b.cod, a, k2)))


class _GenLJms(_Base):
    def term(self, ctx, a, n):
        vs = self.vars_of(ctx, a)
        if n <= 1:
            return ljms.Var(self.rng.choice(vs) if vs else self.free_var(a))
        opts = {"var": 1 if vs else 0, "free": 1, "lam": 3 if isinstance(a, Arrow) else 0,
                "cut": 2 if n >= 3 else 0, "beta": 4 if n >= 4 else 0, "pi": 3 if n >= 6 else 0,
                "sigma": 3 if n >= 3 else 0}
        match self.pick(opts):
            case "var":
                return ljms.Var(self.rng.choice(vs))
            case "free":
                return ljms.Var(self.free_var(a))
            case "lam":
                x = self.binder(ctx)
                return ljms.Lam(x, self.term(ctx | {x: a.dom}, a.cod, n - 1))
            case "cut":
                b = self.ty(1)
                k1, k2 = self.split(n - 1, 2)
                return ljms.Cut(self.term(ctx, b, k1), self.coterm(ctx, b, a, k2))
            case "sigma":
                b = self.ty(1)
                k1, k2 = self.split(n - 2, 2)
                x = self.binder(ctx)
                return ljms.Cut(self.term(ctx, b, k1), ljms.Sel(x, self.term(ctx | {x: b}, a, k2)))
            case "beta":
                d, e = self.ty(1), (a if self.rng.random() < 0.4 else self.ty(1))
                k1, k2, k3 = self.split(n - 3, 3)
                y = self.binder(ctx)
                f = ljms.Lam(y, self.term(ctx | {y: d}, e, k1))
                return ljms.Cut(f, ljms.Cons(self.term(ctx, d, k2), self.coterm(ctx, e, a, k3)))
            case "pi":
                d, b = self.ty(1), self.ty(1)
                k1, k2, k3, k4 = self.split(n - 3, 4)
                inner = ljms.Cut(self.term(ctx, b, k1), self.coterm(ctx, b, Arrow(d, a), k2))
                return ljms.Cut(inner, ljms.Cons(self.term(ctx, d, k3), self.coterm(ctx, a, a, k4)))

    def coterm(self, ctx, b, a, n):
        opts = {"sel": 3, "cons": 3 if isinstance(b, Arrow) and n >= 3 else 0,
                "mu": 3 if n >= 3 else 0}
        if isinstance(b, Arrow) and not type_alpha_eq(a, b) and n < 3:
            opts["cons"] = 1
        match self.pick(opts):
            case "sel":
                x = self.binder(ctx)
                return ljms.Sel(x, self.term(ctx | {x: b}, a, n - 1))
            case "cons":
                k1, k2 = self.split(n - 1, 2)
                return ljms.Cons(self.term(ctx, b.dom, k1), self.coterm(ctx, b.cod, a, k2))
            case "mu":
                x = self.binder(ctx)
                return ljms.Sel(x, ljms.Cut(ljms.Var(x), self.coterm(ctx, b, a, n - 2)))


# ---------------------------------------------------------------- driver

_SIZE = {"ljmse": S.size, "lambda": T.size, "lj": lj.size, "ljm": ljm.size, "ljms": ljms.size}


def _checks(calculus, level, ctx, t, a) -> bool:
    match calculus:
        case "ljmse":
            try:
                return check_term(ctx, t, a, level)
            except TypingError:
                return False
        case "lambda":
            return _lam_check(ctx, t, a)
        case "lj":
            return lj.check(ctx, t, a)
        case "ljm":
            return ljm.check(ctx, t, a)
        case "ljms":
            return ljms.check(ctx, t, a)
    raise ValueError(calculus)


def _lam_check(ctx, t, a) -> bool:
    try:
        return T.typecheck_lam(ctx, t, a)
    except TypingError:
        return False


def _goal(g: _Base, level: str):
    if level == "second" and g.rng.random() < 0.3:
        return Forall("X", g.rng.choice([Arrow(TVar("X"), TVar("X")), Arrow(TVar("Y"), Arrow(TVar("X"), TVar("X")))]))
    return g.ty(2)


def _generator(calculus, rng, level):
    match calculus:
        case "ljmse":
            return _GenLJmse(rng, level)
        case "lambda":
            return _GenLam(rng)
        case "lj":
            return _GenLJ(rng)
        case "ljm":
            return _GenLJm(rng)
        case "ljms":
            return _GenLJms(rng)
    raise ValueError(f"unknown calculus {calculus!r}")


def gen_one(cfg: GenConfig, rng: random.Random):
    size = _SIZE[cfg.calculus]
    while True:
        g = _generator(cfg.calculus, rng, cfg.level)
        a = _goal(g, cfg.level)
        budget = rng.randint(min(4, cfg.max_size), cfg.max_size)
        try:
            t = g.term({}, a, budget)
        except (_Retry, RecursionError):
            continue
        if size(t) > cfg.max_size:
            continue
        ctx = dict(sorted(g.free.items()))
        if not _checks(cfg.calculus, cfg.level, ctx, t, a):
            raise AssertionError(f"generated an ill-typed {cfg.calculus} term: {t!r}")
        return ctx, t, a


def gen_typed(cfg: GenConfig) -> list:
    """cfg.count triples (ctx, term, type), deterministic in the config."""
    rng = random.Random(f"{cfg.calculus}/{cfg.level}/{cfg.seed}")
    return [gen_one(cfg, rng) for _ in range(cfg.count)]
