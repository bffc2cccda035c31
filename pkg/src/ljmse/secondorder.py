"""Second-order machinery: type substitution, the type-level beta rule and
the facts linking it to the type translations."""
from __future__ import annotations

import random

from .cps import Kind, bar_type, star_type
from .syntax import (
    Arrow, Cut, Forall, TVar, TyCons, TyLam, ty_subst_expr,
    ty_subst_type, type_alpha_eq,
)

__all__ = [
    "ty_subst_type", "ty_subst_expr", "beta2_root", "star_naturality",
    "bar_naturality", "random_type", "random_triples",
]


def beta2_root(c):
    """(/\\X.t)(B::l) to ([B/X]t) l, or None when c is not such a redex."""
    match c:
        case Cut(TyLam(x, t), TyCons(ty, l)):
            return Cut(ty_subst_expr(ty, x, t), l)
    return None


def star_naturality(b, x: str, a, kind: Kind = Kind.CGPS) -> bool:
    """([B/X]A)* = [B*/X]A*."""
    left = star_type(ty_subst_type(b, x, a), kind)
    right = ty_subst_type(star_type(b, kind), x, star_type(a, kind))
    return type_alpha_eq(left, right)


def bar_naturality(b, x: str, a, kind: Kind = Kind.CGPS) -> bool:
    """bar([B/X]A) = [B*/X] bar(A)."""
    left = bar_type(ty_subst_type(b, x, a), kind)
    right = ty_subst_type(star_type(b, kind), x, bar_type(a, kind))
    return type_alpha_eq(left, right)


def random_type(rng: random.Random, depth: int = 3, names=("X", "Y", "Z")):
    """Random second-order type; quantifiers may shadow and capture."""
    r = rng.random()
    if depth == 0 or r < 0.3:
        return TVar(rng.choice(names))
    if r < 0.75:
        return Arrow(random_type(rng, depth - 1, names), random_type(rng, depth - 1, names))
    return Forall(rng.choice(names), random_type(rng, depth - 1, names))


def random_triples(count: int, seed: int = 0) -> list:
    """(B, X, A) triples for the naturality checks."""
    rng = random.Random(f"triples/{seed}")
    return [(random_type(rng, 2), rng.choice("XYZ"), random_type(rng, 3)) for _ in range(count)]

