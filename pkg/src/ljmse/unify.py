"""First-order unification over types, with scoped skolems for the second-order level.

Metavariables stand for unknown types.  A skolem is a rigid type variable
introduced when checking a type abstraction; a metavariable may only be
solved by a type whose free skolems were in scope when it was created.
"""
from __future__ import annotations

import itertools
from contextlib import contextmanager
from dataclasses import dataclass

from .syntax import Arrow, Bottom, Forall, TVar, ty_subst_type


class TypingError(Exception):
    """A typing failure with a reason tag and the position of the offending node."""

    REASONS = ("unbound-var", "clash", "occurs", "level", "not-synthesizable")

    def __init__(self, reason: str, pos=(), detail: str = ""):
        super().__init__(f"{reason} at {list(pos)}" + (f": {detail}" if detail else ""))
        self.reason = reason
        self.pos = tuple(pos)
        self.detail = detail

    def to_json(self) -> dict:
        return {"error": {"reason": self.reason, "pos": list(self.pos)}}


@dataclass(frozen=True)
class Meta:
    id: int

    ftv = frozenset()


class Solver:
    def __init__(self):
        self.sol = {}
        self.allowed = {}
        self.scope = frozenset()
        self.skolems = set()
        self._ids = itertools.count()

    def fresh(self) -> Meta:
        m = Meta(next(self._ids))
        self.allowed[m.id] = self.scope
        return m

    def skolem(self, hint: str) -> str:
        name = f"{hint}#{next(self._ids)}"
        self.skolems.add(name)
        return name

    @contextmanager
    def within(self, sk: str):
        old = self.scope
        self.scope = old | {sk}
        try:
            yield
        finally:
            self.scope = old

    def resolve(self, a):
        while isinstance(a, Meta) and a.id in self.sol:
            a = self.sol[a.id]
        return a

    def zonk(self, a):
        a = self.resolve(a)
        match a:
            case Arrow(d, c):
                d2, c2 = self.zonk(d), self.zonk(c)
                return a if (d2 is d and c2 is c) else Arrow(d2, c2)
            case Forall(x, body):
                b2 = self.zonk(body)
                return a if b2 is body else Forall(x, b2)
        return a

    def metas(self, a) -> set:
        out = set()

        def go(a):
            a = self.resolve(a)
            match a:
                case Meta(i):
                    out.add(i)
                case Arrow(d, c):
                    go(d)
                    go(c)
                case Forall(_, body):
                    go(body)
        go(a)
        return out

    def _metas_under(self, a, bound=frozenset()):
        a = self.resolve(a)
        match a:
            case Meta(i):
                return [(i, bound)]
            case Arrow(d, c):
                return self._metas_under(d, bound) + self._metas_under(c, bound)
            case Forall(x, body):
                return self._metas_under(body, bound | {x})
        return []

    def _restrict(self, a, names):
        for i in self.metas(a):
            self.allowed[i] = self.allowed[i] - names

    def subst(self, b, x: str, a):
        """[b/x]a where a may contain unsolved metavariables.

        Metavariables are committed to not mention x (or skolems of b), which
        keeps the result sound at the price of completeness in corner cases.
        """
        a = self.zonk(a)
        b = self.zonk(b)
        self._restrict(a, {x} | (b.ftv & self.skolems))
        return ty_subst_type(b, x, a)

    def bind(self, m: Meta, t, pos):
        t = self.zonk(t)
        if t == m:
            return
        if m.id in self.metas(t):
            raise TypingError("occurs", pos, "cyclic type")
        escaping = (t.ftv & self.skolems) - self.allowed[m.id]
        if escaping:
            raise TypingError("clash", pos, f"type variable {sorted(escaping)[0]} escapes its scope")
        for i, bound in self._metas_under(t):
            # skolems bound by a quantifier above the occurrence stay usable
            self.allowed[i] = self.allowed[i] & (self.allowed[m.id] | bound)
        self.sol[m.id] = t

    def unify(self, a, b, pos=()):
        a, b = self.resolve(a), self.resolve(b)
        if a is b:
            return
        match a, b:
            case Meta(), _:
                self.bind(a, b, pos)
            case _, Meta():
                self.bind(b, a, pos)
            case TVar(n), TVar(m) if n == m:
                pass
            case Bottom(), Bottom():
                pass
            case Arrow(d1, c1), Arrow(d2, c2):
                self.unify(d1, d2, pos)
                self.unify(c1, c2, pos)
            case Forall(x, p), Forall(y, q):
                if x == y:
                    self.unify(p, q, pos)
                elif x in self.skolems and x not in self.zonk(b).ftv:
                    self.unify(p, self.subst(TVar(x), y, q), pos)
                elif y in self.skolems and y not in self.zonk(a).ftv:
                    self.unify(self.subst(TVar(y), x, p), q, pos)
                else:
                    sk = TVar(self.skolem(x))
                    self.unify(self.subst(sk, x, p), self.subst(sk, y, q), pos)
            case _:
                raise TypingError("clash", pos, f"cannot match {_show(self.zonk(a))} with {_show(self.zonk(b))}")

    def pretty(self, types, avoid=frozenset()):
        """Zonk and give readable names: metavariables become A, B, ...; skolems lose their suffix."""
        types = [self.zonk(a) for a in types]
        used = set(avoid)
        for a in types:
            used |= {n for n in _all_tvars(a) if n not in self.skolems}
        names = {}
        letters = (f"{c}{i or ''}" for i in itertools.count() for c in "ABCDEFGHJKLMNPQRSTUVW")

        def meta_name(i):
            if i not in names:
                n = next(letters)
                while n in used:
                    n = next(letters)
                used.add(n)
                names[i] = n
            return names[i]

        def go(a, env):
            match a:
                case Meta(i):
                    return TVar(meta_name(i))
                case TVar(n):
                    return TVar(env.get(n, n))
                case Arrow(d, c):
                    return Arrow(go(d, env), go(c, env))
                case Forall(x, body):
                    if x in self.skolems:
                        base = x.split("#")[0]
                        cand = base
                        k = 0
                        inner = _all_tvars(body) - {x}
                        while cand in inner or cand in used or cand in env.values():
                            k += 1
                            cand = f"{base}{k}"
                        env = {**env, x: cand}
                        return Forall(cand, go(body, env))
                    return Forall(x, go(body, {k: v for k, v in env.items() if k != x}))
            return a
        return [go(a, {}) for a in types]


def _all_tvars(a) -> set:
    match a:
        case TVar(n):
            return {n}
        case Arrow(d, c):
            return _all_tvars(d) | _all_tvars(c)
        case Forall(x, body):
            return {x} | _all_tvars(body)
    return set()


def _show(a) -> str:
    match a:
        case Meta(i):
            return f"?{i}"
        case TVar(n):
            return n
        case Bottom():
            return "Bot"
        case Arrow(d, c):
            return f"({_show(d)}->{_show(c)})"
        case Forall(x, body):
            return f"(forall {x}.{_show(body)})"
    return repr(a)


def rename_tvars(a, mapping: dict):
    """Rename free type variables of a source type via mapping (names must be fresh)."""
    if not mapping:
        return a
    match a:
        case TVar(n):
            return TVar(mapping.get(n, n))
        case Arrow(d, c):
            return Arrow(rename_tvars(d, mapping), rename_tvars(c, mapping))
        case Forall(x, body):
            return Forall(x, rename_tvars(body, {k: v for k, v in mapping.items() if k != x}))
    return a
