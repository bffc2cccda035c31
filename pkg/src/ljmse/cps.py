"""CPS and CGPS translations into the target lambda-calculus.

Every translation is a colon translation: (T : K) for CPS and (T : G, K) for
CGPS, where K is the continuation and G the garbage.  The bar of a term is
\\k.(t:k), respectively \\g.\\k.(t:g,k).
"""
from __future__ import annotations

from enum import Enum

from . import target as T
from .syntax import (
    Arrow, Bottom, Coerce, Cons, Cut, Forall, Lam, Nil, Sel, TVar, TyCons,
    TyLam, Var, all_names, fresh_name, neg, rename,
)
from .spectrum import lj, ljm, ljms


class Kind(str, Enum):
    CPS = "cps"
    CGPS = "cgps"
    CGPS_LJMS = "cgps-ljms"
    CGPS_LJM = "cgps-ljm"
    CGPS_LJ = "cgps-lj"
    CGPS_LJ_OPT = "cgps-lj-opt"
    CPS_SIMPLE = "cps-simple"
    CGPS_LJ_SIMPLE = "cgps-lj-simple"


SOURCE = {
    Kind.CPS: "ljmse", Kind.CGPS: "ljmse", Kind.CPS_SIMPLE: "ljmse",
    Kind.CGPS_LJMS: "ljms", Kind.CGPS_LJM: "ljm", Kind.CGPS_LJ: "lj",
    Kind.CGPS_LJ_OPT: "lj", Kind.CGPS_LJ_SIMPLE: "lj",
}

_GARBAGE_FREE = {Kind.CPS, Kind.CPS_SIMPLE}
_SIMPLE_TYPES = {Kind.CPS_SIMPLE, Kind.CGPS_LJ_SIMPLE}


# ---------------------------------------------------------------- types

def star_type(a, kind: Kind = Kind.CGPS):
    kind = Kind(kind)
    match a:
        case TVar() | Bottom():
            return a
        case Arrow(d, c):
            if kind in _SIMPLE_TYPES:
                return Arrow(bar_type(d, kind), bar_type(c, kind))
            return Arrow(neg(bar_type(c, kind)), neg(bar_type(d, kind)))
        case Forall(x, body):
            return Forall(x, bar_type(body, kind))
    raise TypeError(f"not a type: {a!r}")


def bar_type(a, kind: Kind = Kind.CGPS):
    kind = Kind(kind)
    inner = neg(neg(star_type(a, kind)))
    return inner if kind in _GARBAGE_FREE else Arrow(T.TOP, inner)


def bar_ctx(ctx: dict, kind: Kind = Kind.CGPS) -> dict:
    return {x: bar_type(a, kind) for x, a in ctx.items()}


# ---------------------------------------------------------------- fresh names

class FreshSupply:
    """Deterministic generator of names unused in the inputs of one translation."""

    def __init__(self, avoid=()):
        self.used = set(avoid)

    def __call__(self, base: str) -> str:
        name = fresh_name(base, self.used)
        self.used.add(name)
        return name

    def avoid(self, names):
        self.used |= set(names)


def _supply(source_names, *targets) -> FreshSupply:
    s = FreshSupply(source_names)
    for t in targets:
        s.avoid(t.fv)
    return s


def _app(*ts):
    return T.app(*ts)


def _pair(t, u, fresh):
    return T.App(T.Lam(fresh("n"), t), u)


# ---------------------------------------------------------------- CPS (and the simplified variant)

class _Cps:
    def __init__(self, fresh: FreshSupply, simple: bool):
        self.fresh = fresh
        self.simple = simple

    def bar(self, t):
        k = self.fresh("k")
        return T.Lam(k, self.colon(t, T.Var(k)))

    def _consume(self, l, u, K):
        # continuation receiving the function: \m.m (l:K) u-bar, or \m.(l:K)(m u-bar)
        m = self.fresh("m")
        if self.simple:
            return T.Lam(m, T.App(self.colon(l, K), T.App(T.Var(m), self.bar(u))))
        return T.Lam(m, _app(T.Var(m), self.colon(l, K), self.bar(u)))

    def colon(self, e, K):
        match e:
            case Var(x):
                return T.App(T.Var(x), K)
            case Lam(x, t):
                if self.simple:
                    return T.App(K, T.Lam(x, self.bar(t)))
                w = self.fresh("w")
                return T.App(K, T.Lam(w, T.Lam(x, T.App(T.Var(w), self.bar(t)))))
            case Coerce(c):
                return self.colon(c, K)
            case Nil():
                w = self.fresh("w")
                return T.Lam(w, T.App(T.Var(w), K))
            case Cons(u, l):
                w = self.fresh("w")
                return T.Lam(w, T.App(T.Var(w), self._consume(l, u, K)))
            case Sel(x, c):
                if x in K.fv:
                    x2 = self.fresh(x)
                    c, x = rename(c, x, x2), x2
                return T.Lam(x, self.colon(c, K))
            case Cut(t, Nil()):
                return self.colon(t, K)
            case Cut(t, Cons(u, l)):
                return self.colon(t, self._consume(l, u, K))
            case Cut(t, Sel() as l):
                return T.App(self.colon(l, K), self.bar(t))
            case TyLam() | TyCons() | Cut(_, TyCons()):
                raise ValueError("the CPS translations are defined at the propositional level only")
        raise TypeError(f"not an expression: {e!r}")


def colon_cps(e, K, fresh: FreshSupply | None = None):
    fresh = fresh or _supply(all_names(e), K)
    return _Cps(fresh, False).colon(e, K)


def cps(t):
    return _Cps(_supply(all_names(t)), False).bar(t)


def colon_cps_simple(e, K, fresh: FreshSupply | None = None):
    fresh = fresh or _supply(all_names(e), K)
    return _Cps(fresh, True).colon(e, K)


def cps_simple(t):
    return _Cps(_supply(all_names(t)), True).bar(t)


# ---------------------------------------------------------------- CGPS

class _Cgps:
    """Garbage-passing colon translation of the full calculus (both levels)."""

    def __init__(self, fresh: FreshSupply):
        self.fresh = fresh

    def bar(self, t):
        g, k = self.fresh("g"), self.fresh("k")
        return T.Lam(g, T.Lam(k, self.colon(t, T.Var(g), T.Var(k))))

    def _consume(self, l, u, G, K):
        m = self.fresh("m")
        return T.Lam(m, _app(T.Var(m), self.colon(l, G, K), self.bar(u)))

    def _instantiate(self, l, ty, G, K):
        m = self.fresh("m")
        return T.Lam(m, T.App(self.colon(l, G, K), T.TyApp(T.Var(m), star_type(ty, Kind.CGPS))))

    def colon(self, e, G, K):
        match e:
            case Var(x):
                return _app(T.Var(x), T.succ(G), K)
            case Lam(x, t):
                w = self.fresh("w")
                return _pair(T.App(K, T.Lam(w, T.Lam(x, T.App(T.Var(w), self.bar(t))))), G, self.fresh)
            case TyLam(x, t):
                return _pair(T.App(K, T.TyLam(x, self.bar(t))), G, self.fresh)
            case Coerce(c):
                return self.colon(c, T.succ(G), K)
            case Nil():
                w = self.fresh("w")
                return T.Lam(w, _app(T.Var(w), G, K))
            case Cons(u, l):
                w = self.fresh("w")
                return T.Lam(w, _app(T.Var(w), G, self._consume(l, u, G, K)))
            case TyCons(ty, l):
                w = self.fresh("w")
                return T.Lam(w, _app(T.Var(w), G, self._instantiate(l, ty, G, K)))
            case Sel(x, c):
                if x in G.fv or x in K.fv:
                    x2 = self.fresh(x)
                    c, x = rename(c, x, x2), x2
                return T.Lam(x, self.colon(c, G, K))
            case Cut(t, Nil()):
                return self.colon(t, G, K)
            case Cut(t, Cons(u, l)):
                return self.colon(t, G, self._consume(l, u, G, K))
            case Cut(t, TyCons(ty, l)):
                return self.colon(t, G, self._instantiate(l, ty, G, K))
            case Cut(t, Sel() as l):
                return T.App(self.colon(l, G, K), self.bar(t))
        raise TypeError(f"not an expression: {e!r}")


def colon_cgps(e, G, K, fresh: FreshSupply | None = None):
    fresh = fresh or _supply(all_names(e), G, K)
    return _Cgps(fresh).colon(e, G, K)


def cgps(t):
    return _Cgps(_supply(all_names(t))).bar(t)


# ---------------------------------------------------------------- subsystems

class _CgpsLJms:
    def __init__(self, fresh):
        self.fresh = fresh

    def bar(self, t):
        g, k = self.fresh("g"), self.fresh("k")
        return T.Lam(g, T.Lam(k, self.term(t, T.Var(g), T.Var(k))))

    def _binder(self, x, body, G, K):
        if x in G.fv or x in K.fv:
            x2 = self.fresh(x)
            return x2, ljms.subst(ljms.Var(x2), x, body)
        return x, body

    def term(self, t, G, K):
        match t:
            case ljms.Var(x):
                return _app(T.Var(x), T.succ(G), K)
            case ljms.Lam(x, b):
                w = self.fresh("w")
                return _pair(T.App(K, T.Lam(w, T.Lam(x, T.App(T.Var(w), self.bar(b))))), G, self.fresh)
            case ljms.Cut(u, l):
                return self.semi(u, l, T.succ(G), K)
        raise TypeError(t)

    def coterm(self, l, G, K):
        match l:
            case ljms.Cons(u, rest):
                w, m = self.fresh("w"), self.fresh("m")
                return T.Lam(w, _app(T.Var(w), G, T.Lam(m, _app(T.Var(m), self.coterm(rest, G, K), self.bar(u)))))
            case ljms.Sel(x, v):
                x, v = self._binder(x, v, G, K)
                if isinstance(v, ljms.Cut):
                    return T.Lam(x, self.semi(v.term, v.coterm, G, K))
                return T.Lam(x, self.term(v, G, K))
        raise TypeError(l)

    def semi(self, t, l, G, K):
        """The auxiliary form (t l ; G, K)."""
        match l:
            case ljms.Sel():
                return T.App(self.coterm(l, G, K), self.bar(t))
            case ljms.Cons(u, rest):
                m = self.fresh("m")
                return self.term(t, G, T.Lam(m, _app(T.Var(m), self.coterm(rest, G, K), self.bar(u))))
        raise TypeError(l)


class _CgpsLJm:
    def __init__(self, fresh):
        self.fresh = fresh

    def bar(self, t):
        g, k = self.fresh("g"), self.fresh("k")
        return T.Lam(g, T.Lam(k, self.term(t, T.Var(g), T.Var(k))))

    def _consume(self, l, u, G, K):
        m = self.fresh("m")
        return T.Lam(m, _app(T.Var(m), self.coterm(l, G, K), self.bar(u)))

    def term(self, t, G, K):
        match t:
            case ljm.Var(x):
                return _app(T.Var(x), T.succ(G), K)
            case ljm.Lam(x, b):
                w = self.fresh("w")
                return _pair(T.App(K, T.Lam(w, T.Lam(x, T.App(T.Var(w), self.bar(b))))), G, self.fresh)
            case ljm.App(f, u, l):
                sg = T.succ(G)
                return self.term(f, sg, self._consume(l, u, sg, K))
        raise TypeError(t)

    def coterm(self, l, G, K):
        match l:
            case ljm.Cons(u, rest):
                w = self.fresh("w")
                return T.Lam(w, _app(T.Var(w), G, self._consume(rest, u, G, K)))
            case ljm.Sel(x, v):
                if x in G.fv or x in K.fv:
                    x2 = self.fresh(x)
                    v, x = ljm.subst(ljm.Var(x2), x, v), x2
                if isinstance(v, ljm.App):
                    return T.Lam(x, self.term(v.fun, G, self._consume(v.co, v.arg, G, K)))
                return T.Lam(x, self.term(v, G, K))
        raise TypeError(l)


class _CgpsLJ:
    """The three garbage-passing translations of generalised application."""

    def __init__(self, fresh, variant: str):
        self.fresh = fresh
        self.variant = variant

    def bar(self, t):
        g, k = self.fresh("g"), self.fresh("k")
        return T.Lam(g, T.Lam(k, self.term(t, T.Var(g), T.Var(k))))

    def term(self, t, G, K):
        match t:
            case lj.Var(x):
                if self.variant == "main":
                    return _app(T.Var(x), T.succ(G), K)
                return _app(T.Var(x), G, K)
            case lj.Lam(x, b):
                if self.variant == "simple":
                    return _pair(T.App(K, T.Lam(x, self.bar(b))), G, self.fresh)
                w = self.fresh("w")
                return _pair(T.App(K, T.Lam(w, T.Lam(x, T.App(T.Var(w), self.bar(b))))), G, self.fresh)
            case lj.GApp(f, u, x, v):
                sg = T.succ(G)
                if x in G.fv or x in K.fv:
                    x2 = self.fresh(x)
                    v, x = lj.subst(lj.Var(x2), x, v), x2
                if self.variant == "main" and lj.is_value(v):
                    inner = T.Lam(x, self.term(v, sg, K))
                else:
                    inner = T.Lam(x, self.term(v, G, K))
                m = self.fresh("m")
                ub = self.bar(u)
                if self.variant == "simple":
                    cont = T.Lam(m, T.App(inner, T.App(T.Var(m), ub)))
                else:
                    cont = T.Lam(m, _app(T.Var(m), inner, ub))
                return self.term(f, sg, cont)
        raise TypeError(t)


def colon_cgps_sub(t, G, K, kind: Kind, fresh: FreshSupply | None = None):
    kind = Kind(kind)
    fresh = fresh or _supply(_spec_names(t, kind), G, K)
    match kind:
        case Kind.CGPS_LJMS:
            tr = _CgpsLJms(fresh)
            return tr.term(t, G, K) if ljms.is_term(t) else tr.coterm(t, G, K)
        case Kind.CGPS_LJM:
            tr = _CgpsLJm(fresh)
            return tr.term(t, G, K) if ljm.is_term(t) else tr.coterm(t, G, K)
        case Kind.CGPS_LJ:
            return _CgpsLJ(fresh, "main").term(t, G, K)
        case Kind.CGPS_LJ_OPT:
            return _CgpsLJ(fresh, "opt").term(t, G, K)
        case Kind.CGPS_LJ_SIMPLE:
            return _CgpsLJ(fresh, "simple").term(t, G, K)
    raise ValueError(f"{kind.value} is not a subsystem translation")


def cgps_lj_simple(t):
    return translate(t, Kind.CGPS_LJ_SIMPLE)


def _spec_names(t, kind):
    mod = {"ljms": ljms, "ljm": ljm, "lj": lj}[SOURCE[kind]]
    return mod.all_names(t)


def translate(t, kind: Kind):
    """The bar of a term under any translation kind."""
    kind = Kind(kind)
    match kind:
        case Kind.CPS:
            return cps(t)
        case Kind.CPS_SIMPLE:
            return cps_simple(t)
        case Kind.CGPS:
            return cgps(t)
        case Kind.CGPS_LJMS:
            return _CgpsLJms(_supply(ljms.all_names(t))).bar(t)
        case Kind.CGPS_LJM:
            return _CgpsLJm(_supply(ljm.all_names(t))).bar(t)
        case Kind.CGPS_LJ:
            return _CgpsLJ(_supply(lj.all_names(t)), "main").bar(t)
        case Kind.CGPS_LJ_OPT:
            return _CgpsLJ(_supply(lj.all_names(t)), "opt").bar(t)
        case Kind.CGPS_LJ_SIMPLE:
            return _CgpsLJ(_supply(lj.all_names(t)), "simple").bar(t)
    raise ValueError(kind)
