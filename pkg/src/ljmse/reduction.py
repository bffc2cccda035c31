"""One-step reduction, redex enumeration, strategies and critical peaks."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .surface import to_json
from .syntax import (
    NIL, Coerce, Cons, Cut, Lam, Nil, Sel, TyCons, TyLam, Var, append,
    children, expr_key, is_eval_context, is_value, subst, ty_subst_expr,
    with_child,
)


class Rule(str, Enum):
    BETA = "beta"
    PI = "pi"
    SIGMA = "sigma"
    MU = "mu"
    EPS = "eps"
    BETA2 = "beta2"


ALL_RULES = frozenset(Rule)
BPS = frozenset({Rule.BETA, Rule.PI, Rule.SIGMA})
BPSE = BPS | {Rule.EPS}


@dataclass(frozen=True)
class Step:
    rule: Rule
    pos: tuple
    before: object
    after: object

    def to_json(self) -> dict:
        return {"rule": self.rule.value, "pos": list(self.pos), "to": to_json(self.after)}


@dataclass
class Trace:
    initial: object
    steps: list = field(default_factory=list)
    status: str = "normal"

    @property
    def final(self):
        return self.steps[-1].after if self.steps else self.initial

    def to_json(self) -> dict:
        return {
            "initial": to_json(self.initial),
            "steps": [s.to_json() for s in self.steps],
            "status": self.status,
        }


def root_step(e) -> list:
    """All contractions of a redex sitting at the root of e."""
    out = []
    match e:
        case Cut(Lam(x, t), Cons(u, l)):
            out.append((Rule.BETA, Cut(u, Sel(x, Cut(t, l)))))
        case Cut(TyLam(a, t), TyCons(ty, l)):
            out.append((Rule.BETA2, Cut(ty_subst_expr(ty, a, t), l)))
        case Cut(t, Sel(x, c)):
            out.append((Rule.SIGMA, subst(t, x, c)))
        case Sel(x, Cut(Var(y), l)) if x == y and x not in l.fv:
            out.append((Rule.MU, l))
        case Coerce(Cut(t, Nil())):
            out.append((Rule.EPS, t))
    match e:
        case Cut(Coerce(Cut(t, l)), ctx) if is_eval_context(ctx):
            out.append((Rule.PI, Cut(t, append(l, ctx))))
    return out


def _steps(e, rules):
    for rule, new in root_step(e):
        if rule in rules:
            yield rule, (), new
    for i, child in children(e):
        for rule, pos, new in _steps(child, rules):
            yield rule, (i,) + pos, with_child(e, i, new)


def all_steps(e, rules=ALL_RULES) -> list:
    """Every one-step reduct, root first, then children left to right."""
    return [Step(r, p, e, new) for r, p, new in _steps(e, rules)]


def has_step(e, rules=ALL_RULES) -> bool:
    return next(_steps(e, rules), None) is not None


def is_normal(e, rules=ALL_RULES) -> bool:
    return not has_step(e, frozenset(rules))


def normal_shape(e, with_eps: bool = False) -> bool:
    """Grammar characterization of beta-pi-sigma(-eps) normal forms.

    Commands must be V[] or x(u::l); with eps, coercion bodies must be x(u::l).
    """
    match e:
        case Var() | Nil():
            return True
        case Lam(_, b) | TyLam(_, b):
            return normal_shape(b, with_eps)
        case Coerce(c):
            if with_eps and not (isinstance(c.term, Var) and isinstance(c.coterm, Cons)):
                return False
            return normal_shape(c, with_eps)
        case Cons(u, l):
            return normal_shape(u, with_eps) and normal_shape(l, with_eps)
        case TyCons(_, l):
            return normal_shape(l, with_eps)
        case Sel(_, c):
            return normal_shape(c, with_eps)
        case Cut(t, l):
            ok = (is_value(t) and isinstance(l, Nil)) or (
                isinstance(t, Var) and isinstance(l, (Cons, TyCons)))
            return ok and normal_shape(t, with_eps) and normal_shape(l, with_eps)
    raise TypeError(f"not an expression: {e!r}")


def normalize(e, strategy: str = "leftmost", seed: int | None = None,
              max_steps: int = 10_000, rules=ALL_RULES) -> Trace:
    rng = random.Random(seed)
    trace = Trace(e)
    cur = e
    for _ in range(max_steps):
        if strategy == "leftmost":
            nxt = next(_steps(cur, rules), None)
            if nxt is None:
                return trace
            rule, pos, new = nxt
            step = Step(rule, pos, cur, new)
        elif strategy == "random":
            options = all_steps(cur, rules)
            if not options:
                return trace
            step = rng.choice(options)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        trace.steps.append(step)
        cur = step.after
    if has_step(cur, rules):
        trace.status = "bound-exhausted"
    return trace


# ---------------------------------------------------------------- joining

def reducts_within(e, depth: int, rules=ALL_RULES, cap: int = 20_000) -> dict:
    """Alpha keys of every expression reachable in at most `depth` steps, with distances."""
    seen = {expr_key(e): 0}
    frontier = deque([(e, 0)])
    while frontier:
        cur, d = frontier.popleft()
        if d == depth:
            continue
        for _, _, new in _steps(cur, rules):
            k = expr_key(new)
            if k not in seen:
                seen[k] = d + 1
                if len(seen) > cap:
                    raise OverflowError("join search cap exceeded")
                frontier.append((new, d + 1))
    return seen


@dataclass
class JoinResult:
    joined: bool
    left_steps: int = -1
    right_steps: int = -1
    method: str = ""


def join(a, b, max_steps: int = 10, rules=ALL_RULES) -> JoinResult:
    """Do a and b have a common reduct within max_steps steps on each side?"""
    ka, kb = expr_key(a), expr_key(b)
    if ka == kb:
        return JoinResult(True, 0, 0, "identical")
    # cheap witness: both normalize (leftmost) to the same expression
    ta = normalize(a, max_steps=max_steps, rules=rules)
    tb = normalize(b, max_steps=max_steps, rules=rules)
    if ta.status == tb.status == "normal" and expr_key(ta.final) == expr_key(tb.final):
        return JoinResult(True, len(ta.steps), len(tb.steps), "normal-form")
    ra = reducts_within(a, max_steps, rules)
    rb = reducts_within(b, max_steps, rules)
    common = [k for k in ra if k in rb]
    if not common:
        return JoinResult(False)
    best = min(common, key=lambda k: ra[k] + rb[k])
    return JoinResult(True, ra[best], rb[best], "search")


# ---------------------------------------------------------------- critical peaks

def _find(e, rule, pos):
    for s in all_steps(e):
        if s.rule == rule and s.pos == pos:
            return s
    raise AssertionError(f"no {rule.value} step at {pos} in {e!r}")


def _pool(depth: int):
    v = Var
    terms = [v("t0"), v("t1"), Lam("a", v("a")), Lam("a", v("t1"))]
    lists = [NIL, Cons(v("u0"), NIL), Cons(v("u1"), Cons(v("u2"), NIL))]
    sels = [Sel("b", Cut(v("b"), Cons(v("u3"), NIL))), Sel("b", Cut(v("t2"), NIL))]
    if depth >= 2:
        terms.append(Coerce(Cut(v("t3"), Cons(v("u4"), NIL))))
        lists.append(Cons(Lam("a", v("a")), NIL))
        sels.append(Sel("b", Cut(Lam("a", v("b")), Cons(v("u5"), NIL))))
    if depth >= 3:
        terms.append(Coerce(Cut(Lam("a", v("a")), Cons(v("u6"), NIL))))
        sels.append(Sel("b", Cut(v("b"), Sel("c", Cut(v("c"), NIL)))))
    return terms, lists, sels


def critical_peaks(depth: int = 2, seed: int = 0, per_family: int = 3) -> list:
    """Instances of every overlap family, each with its two diverging steps."""
    rng = random.Random(seed)
    terms, lists, sels = _pool(depth)
    ctxs = [l for l in lists if not isinstance(l, Nil)]
    coterms = lists + sels
    x, y = "x", "y"
    out = []

    def add(e, s1, s2):
        out.append((e, _find(e, *s1), _find(e, *s2)))

    # the instance displayed for the self-overlap of pi
    shown = Cut(Coerce(Cut(Coerce(Cut(Var("x"), NIL)), Cons(Var("u"), NIL))), Cons(Var("v"), NIL))
    add(shown, (Rule.PI, ()), (Rule.PI, (0, 0)))
    for _ in range(per_family):
        t, l = rng.choice(terms), rng.choice(coterms)
        e1, e = rng.choice(lists[1:]), rng.choice(ctxs)
        # {{t l}E'}E
        add(Cut(Coerce(Cut(Coerce(Cut(t, l)), e1)), e), (Rule.PI, ()), (Rule.PI, (0, 0)))
        # {(\x.t)(u::l)}E
        body, u = rng.choice(terms + [Var(x)]), rng.choice(terms)
        add(Cut(Coerce(Cut(Lam(x, body), Cons(u, l))), e), (Rule.PI, ()), (Rule.BETA, (0, 0)))
        # {t(x)c}E
        c = Cut(rng.choice([Var(x), t]), rng.choice(coterms))
        add(Cut(Coerce(Cut(t, Sel(x, c))), e), (Rule.PI, ()), (Rule.SIGMA, (0, 0)))
        # {t[]}E
        add(Cut(Coerce(Cut(t, NIL)), e), (Rule.PI, ()), (Rule.EPS, (0,)))
        # {{t l}[]}
        add(Coerce(Cut(Coerce(Cut(t, l)), NIL)), (Rule.EPS, ()), (Rule.PI, (0,)))
        # t(x)x l with x not in l
        add(Cut(t, Sel(x, Cut(Var(x), l))), (Rule.SIGMA, ()), (Rule.MU, (1,)))
        # (x)(x(y)c) with x not in c
        c2 = Cut(rng.choice([Var(y), t]), rng.choice(coterms))
        add(Sel(x, Cut(Var(x), Sel(y, c2))), (Rule.MU, ()), (Rule.SIGMA, (0,)))
    return out


def peak_family(step_a: Step, step_b: Step) -> str:
    rules = {step_a.rule, step_b.rule}
    if rules == {Rule.PI}:
        return "pi/pi"
    return "/".join(sorted(r.value for r in rules))
