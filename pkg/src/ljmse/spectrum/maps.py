"""Maps between the calculi of the spectrum.

The embeddings go up one level at a time (lambda -> lj -> ljm -> ljms -> full
calculus).  sharp interprets ljms back into ljm by executing explicit
substitutions, circ interprets the full calculus into ljms, and mu_nf
undoes every (x)x l simplification.
"""
from __future__ import annotations

from .. import syntax as S
from .. import target as T
from ..syntax import fresh_name
from . import lj, ljm, ljms


def embed_J(t):
    """J(x) = x, J(\\x.t) = \\x.J(t), J(tu) = J(t)(J(u), x.x)."""
    match t:
        case T.Var(x):
            return lj.Var(x)
        case T.Lam(x, b):
            return lj.Lam(x, embed_J(b))
        case T.App(f, a):
            f2, a2 = embed_J(f), embed_J(a)
            x = fresh_name("x", f2.fv | a2.fv)
            return lj.GApp(f2, a2, x, lj.Var(x))
    raise TypeError(f"not a lambda-term: {t!r}")


def embed_m(t):
    """m(t(u,x.v)) = m(t)(m(u), (x)m(v))."""
    match t:
        case lj.Var(x):
            return ljm.Var(x)
        case lj.Lam(x, b):
            return ljm.Lam(x, embed_m(b))
        case lj.GApp(f, u, x, v):
            return ljm.App(embed_m(f), embed_m(u), ljm.Sel(x, embed_m(v)))
    raise TypeError(f"not an lj term: {t!r}")


def embed_s(e):
    """s(t(u,l)) = s(t)(s(u)::s(l)), homomorphic elsewhere."""
    match e:
        case ljm.Var(x):
            return ljms.Var(x)
        case ljm.Lam(x, b):
            return ljms.Lam(x, embed_s(b))
        case ljm.App(f, u, l):
            return ljms.Cut(embed_s(f), ljms.Cons(embed_s(u), embed_s(l)))
        case ljm.Cons(u, l):
            return ljms.Cons(embed_s(u), embed_s(l))
        case ljm.Sel(x, v):
            return ljms.Sel(x, embed_s(v))
    raise TypeError(f"not an ljm expression: {e!r}")


def embed_e(e):
    """e(tl) = {e(t)e(l)}, e((x)V) = (x)e(V)[], e((x)tl) = (x)e(t)e(l)."""
    match e:
        case ljms.Var(x):
            return S.Var(x)
        case ljms.Lam(x, b):
            return S.Lam(x, embed_e(b))
        case ljms.Cut(t, l):
            return S.Coerce(S.Cut(embed_e(t), embed_e(l)))
        case ljms.Cons(u, l):
            return S.Cons(embed_e(u), embed_e(l))
        case ljms.Sel(x, ljms.Cut(t, l)):
            return S.Sel(x, S.Cut(embed_e(t), embed_e(l)))
        case ljms.Sel(x, v):
            return S.Sel(x, S.Cut(embed_e(v), S.NIL))
    raise TypeError(f"not an ljms expression: {e!r}")


def map_sharp(e):
    """Interpretation of ljms into ljm: (t(x)v)# = [t#/x]v#, (t(u::l))# = t#(u#, l#)."""
    match e:
        case ljms.Var(x):
            return ljm.Var(x)
        case ljms.Lam(x, b):
            return ljm.Lam(x, map_sharp(b))
        case ljms.Cut(t, ljms.Sel(x, v)):
            return ljm.subst(map_sharp(t), x, map_sharp(v))
        case ljms.Cut(t, ljms.Cons(u, l)):
            return ljm.App(map_sharp(t), map_sharp(u), map_sharp(l))
        case ljms.Cons(u, l):
            return ljm.Cons(map_sharp(u), map_sharp(l))
        case ljms.Sel(x, v):
            return ljm.Sel(x, map_sharp(v))
    raise TypeError(f"not an ljms expression: {e!r}")


def map_circ(e):
    """Interpretation of the full calculus into ljms: []° = (x)x, {tl}° = t°l°, ((x)tl)° = (x)t°l°.

    Commands are sent to the ljms term t°l° as well.
    """
    match e:
        case S.Var(x):
            return ljms.Var(x)
        case S.Lam(x, b):
            return ljms.Lam(x, map_circ(b))
        case S.Coerce(c):
            return map_circ(c)
        case S.Cut(t, l):
            return ljms.Cut(map_circ(t), map_circ(l))
        case S.Nil():
            return ljms.Sel("x", ljms.Var("x"))
        case S.Cons(u, l):
            return ljms.Cons(map_circ(u), map_circ(l))
        case S.Sel(x, c):
            return ljms.Sel(x, map_circ(c))
    raise ValueError(f"no ljms interpretation for {type(e).__name__}")


def mu_nf(e):
    """Mu-normal form: (x)xl becomes l when x is not free in l, everywhere."""
    match e:
        case S.Var() | S.Nil():
            return e
        case S.Lam(x, b):
            return S.Lam(x, mu_nf(b))
        case S.TyLam(x, b):
            return S.TyLam(x, mu_nf(b))
        case S.Coerce(c):
            return S.Coerce(mu_nf(c))
        case S.Cut(t, l):
            return S.Cut(mu_nf(t), mu_nf(l))
        case S.Cons(u, l):
            return S.Cons(mu_nf(u), mu_nf(l))
        case S.TyCons(ty, l):
            return S.TyCons(ty, mu_nf(l))
        case S.Sel(x, S.Cut(S.Var(y), l)) if x == y and x not in l.fv:
            return mu_nf(l)
        case S.Sel(x, c):
            return S.Sel(x, mu_nf(c))
    raise TypeError(f"not an expression: {e!r}")


EMBEDDINGS = {
    ("lambda", "lj"): embed_J,
    ("lj", "ljm"): embed_m,
    ("ljm", "ljms"): embed_s,
    ("ljms", "ljmse"): embed_e,
}
