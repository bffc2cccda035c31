"""Plumbing shared by the spectrum calculi: step records, search and typing helpers."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..syntax import Arrow
from ..unify import Meta, Solver, TypingError


@dataclass(frozen=True)
class SpecStep:
    rule: str
    pos: tuple
    after: object


class SearchCapHit(Exception):
    pass


def search(start, accept, steps, key, rules=None, max_depth: int = 50,
           max_nodes: int = 20_000, allow_empty: bool = True):
    """Breadth-first search for a reduct satisfying `accept`.

    Returns the SpecSteps of a shortest path (empty when `start` itself is
    accepted and allow_empty is set) or None when the reachable graph is
    exhausted.  Raises SearchCapHit when a bound cuts the search short.
    """
    if allow_empty and accept(start):
        return []
    parent = {key(start): None}
    frontier = deque([(start, 0)])
    truncated = False
    while frontier:
        cur, d = frontier.popleft()
        if d == max_depth:
            truncated = True
            continue
        ck = key(cur)
        for st in steps(cur):
            if rules is not None and st.rule not in rules:
                continue
            if accept(st.after):
                path = [st]
                k = ck
                while parent[k] is not None:
                    k, s = parent[k]
                    path.append(s)
                return path[::-1]
            k = key(st.after)
            if k in parent:
                continue
            parent[k] = (ck, st)
            if len(parent) > max_nodes:
                raise SearchCapHit(f"more than {max_nodes} reducts")
            frontier.append((st.after, d + 1))
    if truncated:
        raise SearchCapHit(f"depth bound {max_depth} reached")
    return None


def reaches(start, goal, steps, key, rules=None, plus: bool = False, **caps) -> bool:
    """start ->* goal (or ->+ when plus), decided by bounded search."""
    gk = key(goal)
    path = search(start, lambda t: key(t) == gk, steps, key, rules, allow_empty=not plus, **caps)
    return path is not None


def expect_arrow(s: Solver, a, pos, what: str):
    a = s.resolve(a)
    if isinstance(a, Meta):
        s.unify(a, Arrow(s.fresh(), s.fresh()), pos)
        a = s.resolve(a)
    if not isinstance(a, Arrow):
        raise TypingError("clash", pos, f"{what} against a non-implication")
    return a


def lookup(ctx, x, pos):
    if x not in ctx:
        raise TypingError("unbound-var", pos, x)
    return ctx[x]


def ctx_tvars(ctx) -> set:
    out = set()
    for a in ctx.values():
        out |= a.ftv
    return out
