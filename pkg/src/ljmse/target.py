"""The target lambda-calculus (with optional type abstraction), its beta graph and typing.

Named terms are the public representation.  Reduction, alpha-equivalence and
reachability run on a nameless encoding built from plain tuples:

    ("v", i)        bound term variable (de Bruijn index)
    ("f", name)     free term variable
    ("l", body)     abstraction
    ("a", fun, arg) application
    ("L", body)     type abstraction
    ("A", fun, ty)  type application, ty in nameless type form

Nameless types are ("b", i), ("f", name), ("bot",), ("->", a, b), ("all", body);
type indices count both type abstractions and quantifiers.
"""
from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .surface import TokenStream, ParseError, parse_type_from, print_type, type_from_json, type_to_json
from .syntax import (
    BOT, Arrow, Bottom, Forall, TVar, fresh_name, ty_subst_type,
)
from .unify import Meta, Solver, TypingError, rename_tvars

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))


# ---------------------------------------------------------------- named terms

class _Node:
    __slots__ = ()

    @cached_property
    def fv(self) -> frozenset:
        match self:
            case Var(n):
                return frozenset((n,))
            case Lam(x, b):
                return b.fv - {x}
            case App(f, a):
                return f.fv | a.fv
            case TyLam(_, b) | TyApp(b, _):
                return b.fv
        raise TypeError(self)

    @cached_property
    def ftv(self) -> frozenset:
        match self:
            case Var():
                return frozenset()
            case Lam(_, b):
                return b.ftv
            case App(f, a):
                return f.ftv | a.ftv
            case TyLam(x, b):
                return b.ftv - {x}
            case TyApp(f, ty):
                return f.ftv | ty.ftv
        raise TypeError(self)


@dataclass(frozen=True)
class Var(_Node):
    name: str


@dataclass(frozen=True)
class Lam(_Node):
    var: str
    body: "LamTerm"


@dataclass(frozen=True)
class App(_Node):
    fun: "LamTerm"
    arg: "LamTerm"


@dataclass(frozen=True)
class TyLam(_Node):
    var: str
    body: "LamTerm"


@dataclass(frozen=True)
class TyApp(_Node):
    fun: "LamTerm"
    ty: object


LamTerm = Var | Lam | App | TyLam | TyApp


def app(f, *args):
    for a in args:
        f = App(f, a)
    return f


def lams(names, body):
    for x in reversed(names):
        body = Lam(x, body)
    return body


# garbage: the unit type and its successor s = \x.[x; \z.z]
TOP = Arrow(BOT, BOT)
S_COMB = Lam("x", App(Lam("y", Var("x")), Lam("z", Var("z"))))


def pair(t, u):
    """[t;u] = (\\v.t)u with v not free in t; reduces to t in one step."""
    return App(Lam(fresh_name("n", t.fv), t), u)


def succ(g):
    return App(S_COMB, g)


def subst(t, x: str, e):
    """Capture-avoiding [t/x]e on named target terms."""
    if x not in e.fv:
        return e
    match e:
        case Var(n):
            return t if n == x else e
        case Lam(y, b):
            if y in t.fv:
                y2 = fresh_name(y, t.fv | b.fv | {x})
                b, y = subst(Var(y2), y, b), y2
            return Lam(y, subst(t, x, b))
        case App(f, a):
            return App(subst(t, x, f), subst(t, x, a))
        case TyLam(a, b):
            if a in t.ftv:
                a2 = fresh_name(a, t.ftv | b.ftv)
                b, a = ty_subst_term(TVar(a2), a, b), a2
            return TyLam(a, subst(t, x, b))
        case TyApp(f, ty):
            return TyApp(subst(t, x, f), ty)
    raise TypeError(e)


def ty_subst_term(b, x: str, e):
    """Capture-avoiding type substitution [b/x]e."""
    if x not in e.ftv:
        return e
    match e:
        case Lam(y, body):
            return Lam(y, ty_subst_term(b, x, body))
        case App(f, a):
            return App(ty_subst_term(b, x, f), ty_subst_term(b, x, a))
        case TyLam(a, body):
            if a in b.ftv:
                a2 = fresh_name(a, b.ftv | body.ftv | {x})
                body, a = ty_subst_term(TVar(a2), a, body), a2
            return TyLam(a, ty_subst_term(b, x, body))
        case TyApp(f, ty):
            return TyApp(ty_subst_term(b, x, f), ty_subst_type(b, x, ty))
    raise TypeError(e)


def size(e) -> int:
    match e:
        case Var():
            return 1
        case Lam(_, b) | TyLam(_, b) | TyApp(b, _):
            return 1 + size(b)
        case App(f, a):
            return 1 + size(f) + size(a)
    raise TypeError(e)


def occurs_subterm(sub, e) -> bool:
    """Is sub (up to alpha) a subterm of e?  Bound variables of e may not occur free in sub."""
    return _contains(to_nameless(e), to_nameless(sub))


def _contains(big, small) -> bool:
    if big == small:
        return True
    tag = big[0]
    if tag == "l":
        return _contains(big[1], shift(small, 1, 0))
    if tag == "a":
        return _contains(big[1], small) or _contains(big[2], small)
    if tag == "L":
        return _contains(big[1], tshift(small, 1, 0))
    if tag == "A":
        return _contains(big[1], small)
    return False


# ---------------------------------------------------------------- nameless encoding

def _type_nl(a, tenv):
    match a:
        case TVar(n):
            for i in range(len(tenv) - 1, -1, -1):
                if tenv[i] == n:
                    return ("b", len(tenv) - 1 - i)
            return ("f", n)
        case Bottom():
            return ("bot",)
        case Arrow(d, c):
            return ("->", _type_nl(d, tenv), _type_nl(c, tenv))
        case Forall(x, body):
            return ("all", _type_nl(body, tenv + (x,)))
    raise TypeError(a)


def to_nameless(e, env=(), tenv=()):
    match e:
        case Var(n):
            for i in range(len(env) - 1, -1, -1):
                if env[i] == n:
                    return ("v", len(env) - 1 - i)
            return ("f", n)
        case Lam(x, b):
            return ("l", to_nameless(b, env + (x,), tenv))
        case App(f, a):
            return ("a", to_nameless(f, env, tenv), to_nameless(a, env, tenv))
        case TyLam(x, b):
            return ("L", to_nameless(b, env, tenv + (x,)))
        case TyApp(f, ty):
            return ("A", to_nameless(f, env, tenv), _type_nl(ty, tenv))
    raise TypeError(e)


key = to_nameless


def alpha_eq(a, b) -> bool:
    return a == b or to_nameless(a) == to_nameless(b)


def _free_names(n, out):
    tag = n[0]
    if tag == "f":
        out.add(n[1])
    elif tag in ("l", "L"):
        _free_names(n[1], out)
    elif tag == "a":
        _free_names(n[1], out)
        _free_names(n[2], out)
    elif tag == "A":
        _free_names(n[1], out)
    return out


def _type_from_nl(t, tenv):
    tag = t[0]
    if tag == "b":
        return TVar(tenv[len(tenv) - 1 - t[1]])
    if tag == "f":
        return TVar(t[1])
    if tag == "bot":
        return BOT
    if tag == "->":
        return Arrow(_type_from_nl(t[1], tenv), _type_from_nl(t[2], tenv))
    x = f"X{len(tenv)}"
    return Forall(x, _type_from_nl(t[1], tenv + (x,)))


def from_nameless(n, avoid=None):
    """Named term for a nameless one; binders are x0, x1, ... by depth."""
    if avoid is None:
        avoid = _free_names(n, set())

    def name(d, prefix):
        cand = f"{prefix}{d}"
        while cand in avoid:
            cand += "'"
        return cand

    def go(n, env, tenv):
        tag = n[0]
        if tag == "v":
            return Var(env[len(env) - 1 - n[1]])
        if tag == "f":
            return Var(n[1])
        if tag == "l":
            x = name(len(env), "x")
            return Lam(x, go(n[1], env + (x,), tenv))
        if tag == "a":
            return App(go(n[1], env, tenv), go(n[2], env, tenv))
        if tag == "L":
            x = name(len(tenv), "X")
            return TyLam(x, go(n[1], env, tenv + (x,)))
        return TyApp(go(n[1], env, tenv), _type_from_nl(n[2], tenv))
    return go(n, (), ())


# ---------------------------------------------------------------- nameless operations

def shift(n, d, c):
    """Add d to term indices >= c."""
    tag = n[0]
    if tag == "v":
        return ("v", n[1] + d) if n[1] >= c else n
    if tag == "f":
        return n
    if tag == "l":
        return ("l", shift(n[1], d, c + 1))
    if tag == "a":
        return ("a", shift(n[1], d, c), shift(n[2], d, c))
    if tag == "L":
        return ("L", shift(n[1], d, c))
    return ("A", shift(n[1], d, c), n[2])


def _ty_shift(t, d, c):
    tag = t[0]
    if tag == "b":
        return ("b", t[1] + d) if t[1] >= c else t
    if tag == "->":
        return ("->", _ty_shift(t[1], d, c), _ty_shift(t[2], d, c))
    if tag == "all":
        return ("all", _ty_shift(t[1], d, c + 1))
    return t


def tshift(n, d, c):
    """Add d to type indices >= c inside a term."""
    tag = n[0]
    if tag in ("v", "f"):
        return n
    if tag == "l":
        return ("l", tshift(n[1], d, c))
    if tag == "a":
        return ("a", tshift(n[1], d, c), tshift(n[2], d, c))
    if tag == "L":
        return ("L", tshift(n[1], d, c + 1))
    return ("A", tshift(n[1], d, c), _ty_shift(n[2], d, c))


def _inst(n, a, depth, tdepth):
    # body[depth := a], lowering the indices above depth
    tag = n[0]
    if tag == "v":
        i = n[1]
        if i == depth:
            out = shift(a, depth, 0) if depth else a
            return tshift(out, tdepth, 0) if tdepth else out
        return ("v", i - 1) if i > depth else n
    if tag == "f":
        return n
    if tag == "l":
        return ("l", _inst(n[1], a, depth + 1, tdepth))
    if tag == "a":
        return ("a", _inst(n[1], a, depth, tdepth), _inst(n[2], a, depth, tdepth))
    if tag == "L":
        return ("L", _inst(n[1], a, depth, tdepth + 1))
    return ("A", _inst(n[1], a, depth, tdepth), n[2])


def _ty_inst(t, b, depth):
    tag = t[0]
    if tag == "b":
        i = t[1]
        if i == depth:
            return _ty_shift(b, depth, 0) if depth else b
        return ("b", i - 1) if i > depth else t
    if tag == "->":
        return ("->", _ty_inst(t[1], b, depth), _ty_inst(t[2], b, depth))
    if tag == "all":
        return ("all", _ty_inst(t[1], b, depth + 1))
    return t


def _tinst(n, b, tdepth):
    tag = n[0]
    if tag in ("v", "f"):
        return n
    if tag == "l":
        return ("l", _tinst(n[1], b, tdepth))
    if tag == "a":
        return ("a", _tinst(n[1], b, tdepth), _tinst(n[2], b, tdepth))
    if tag == "L":
        return ("L", _tinst(n[1], b, tdepth + 1))
    return ("A", _tinst(n[1], b, tdepth), _ty_inst(n[2], b, tdepth))


def contract(n):
    """Contract the redex at the root of n, or return None."""
    tag = n[0]
    if tag == "a" and n[1][0] == "l":
        return _inst(n[1][1], n[2], 0, 0)
    if tag == "A" and n[1][0] == "L":
        return _tinst(n[1][1], n[2], 0)
    return None


def _rebuild(n, i, new):
    tag = n[0]
    if tag in ("l", "L"):
        return (tag, new)
    if tag == "a":
        return ("a", new, n[2]) if i == 0 else ("a", n[1], new)
    return ("A", new, n[2])


def contract_at(n, pos):
    if not pos:
        out = contract(n)
        if out is None:
            raise ValueError("no redex at the given position")
        return out
    i = pos[0]
    return _rebuild(n, i, contract_at(n[1 + i], pos[1:]))


def steps_nl(n, pos=()):
    """All one-step reducts of a nameless term, as (position, reduct) pairs."""
    out = []
    r = contract(n)
    if r is not None:
        out.append((pos, r))
    tag = n[0]
    if tag in ("l", "L"):
        out.extend((p, (tag, s)) for p, s in steps_nl(n[1], pos + (0,)))
    elif tag == "a":
        out.extend((p, ("a", s, n[2])) for p, s in steps_nl(n[1], pos + (0,)))
        out.extend((p, ("a", n[1], s)) for p, s in steps_nl(n[2], pos + (1,)))
    elif tag == "A":
        out.extend((p, ("A", s, n[2])) for p, s in steps_nl(n[1], pos + (0,)))
    return out


def head_step(n):
    """The weak-head redex: its spine position and the contracted term."""
    spine = []
    cur = n
    while cur[0] in ("a", "A"):
        r = contract(cur)
        if r is not None:
            out = r
            for parent in reversed(spine):
                out = _rebuild(parent, 0, out)
            return (0,) * len(spine), out
        spine.append(cur)
        cur = cur[1]
    return None


def beta_steps(t) -> list:
    """All one-step beta (and type-beta) reducts of a named term."""
    return [from_nameless(s) for _, s in steps_nl(to_nameless(t))]


def normal_form(t, max_steps: int = 100_000):
    """Leftmost-outermost normal form (nameless in, nameless out)."""
    n = to_nameless(t) if not isinstance(t, tuple) else t
    for _ in range(max_steps):
        s = steps_nl(n)
        if not s:
            return n
        n = s[0][1]
    raise OverflowError("normal form bound exceeded")


# ---------------------------------------------------------------- reachability

@dataclass
class ReachResult:
    found: bool
    path: list = field(default_factory=list)
    nodes_explored: int = 0
    exhausted: bool = True
    method: str = "standard"
    positions: list = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.path)

    @property
    def conclusive(self) -> bool:
        return self.found or self.exhausted


DEFAULT_CAPS = {"nodes": 50_000, "depth": 200}


class _CapHit(Exception):
    pass


class _Standard:
    """Decide M ->* N by the standardization theorem.

    Every reduction can be reordered into weak-head steps followed by internal
    steps, which act componentwise on abstractions and applications.  So
    M ->* N iff some weak-head reduct of M has the shape of N with
    componentwise reducible parts.  Memoized on pairs; terminates whenever
    M is strongly normalizing.
    """

    def __init__(self, caps):
        self.nodes = caps["nodes"]
        self.depth = caps["depth"]
        self.explored = 0
        self.memo = {}

    def tick(self):
        self.explored += 1
        if self.explored > self.nodes:
            raise _CapHit()

    def reach(self, m, n):
        if m == n:
            return []
        k = (m, n)
        if k in self.memo:
            return self.memo[k]
        self.tick()
        self.memo[k] = None
        result = None
        cur, head = m, []
        while True:
            sub = self.match(cur, n)
            if sub is not None:
                result = head + sub
                break
            hs = head_step(cur)
            if hs is None:
                break
            if len(head) >= self.depth:
                raise _CapHit()
            self.tick()
            head.append(hs[0])
            cur = hs[1]
            if cur == n:
                result = head
                break
        self.memo[k] = result
        return result

    def match(self, m, n):
        tm, tn = m[0], n[0]
        if tm != tn:
            return None
        if tm in ("v", "f"):
            return [] if m == n else None
        if tm in ("l", "L"):
            sub = self.reach(m[1], n[1])
            return None if sub is None else [(0,) + p for p in sub]
        if tm == "A":
            if m[2] != n[2]:
                return None
            sub = self.reach(m[1], n[1])
            return None if sub is None else [(0,) + p for p in sub]
        # application: cheap rejection when both heads are stuck variables
        left = self.reach(m[1], n[1])
        if left is None:
            return None
        right = self.reach(m[2], n[2])
        if right is None:
            return None
        return [(0,) + p for p in left] + [(1,) + p for p in right]


def _replay(start, positions):
    out, cur = [], start
    for p in positions:
        cur = contract_at(cur, p)
        out.append(cur)
    return out


def reach(frm, to, mode: str = "plus", caps=None, method: str = "standard") -> ReachResult:
    """Is `to` reachable from `frm` by beta steps (at least one in plus mode)?"""
    caps = {**DEFAULT_CAPS, **(caps or {})}
    m = frm if isinstance(frm, tuple) else to_nameless(frm)
    n = to if isinstance(to, tuple) else to_nameless(to)
    if method == "bfs" or (mode == "plus" and m == n):
        return _reach_bfs(m, n, mode, caps)
    st = _Standard(caps)
    try:
        positions = st.reach(m, n)
    except _CapHit:
        return ReachResult(False, [], st.explored, False, "standard")
    if positions is None:
        return ReachResult(False, [], st.explored, True, "standard")
    terms = _replay(m, positions)
    assert (terms[-1] if terms else m) == n, "replayed path does not end at the target"
    return ReachResult(True, [from_nameless(t) for t in terms], st.explored, True,
                       "standard", positions)


def _reach_bfs(m, n, mode, caps) -> ReachResult:
    parent = {m: None}
    frontier = deque([(m, 0)])
    exhausted = True
    explored = 0
    while frontier:
        cur, d = frontier.popleft()
        explored += 1
        succs = steps_nl(cur)
        if d >= caps["depth"]:
            if succs:
                exhausted = False
            continue
        for pos, s in succs:
            if s == n:
                chain = [(pos, s)]
                node = cur
                while parent[node] is not None:
                    prev, p = parent[node]
                    chain.append((p, node))
                    node = prev
                chain.reverse()
                return ReachResult(True, [from_nameless(t) for _, t in chain], explored, True,
                                   "bfs", [p for p, _ in chain])
            if s not in parent:
                parent[s] = (cur, pos)
                if len(parent) > caps["nodes"]:
                    return ReachResult(False, [], explored, False, "bfs")
                frontier.append((s, d + 1))
    if mode == "star" and m == n:
        return ReachResult(True, [], explored, True, "bfs")
    return ReachResult(False, [], explored, exhausted, "bfs")


def reduction_graph(frm, caps=None):
    """Every reduct of frm (nameless), and whether enumeration finished under the caps."""
    caps = {**DEFAULT_CAPS, **(caps or {})}
    m = frm if isinstance(frm, tuple) else to_nameless(frm)
    seen = {m}
    frontier = deque([m])
    while frontier:
        cur = frontier.popleft()
        for _, s in steps_nl(cur):
            if s not in seen:
                seen.add(s)
                if len(seen) > caps["nodes"]:
                    return seen, False
                frontier.append(s)
    return seen, True


# ---------------------------------------------------------------- typing

class _TargetChecker:
    def __init__(self):
        self.s = Solver()
        self.tyenv = {}
        self.deferred = []

    def synth(self, ctx, t, pos):
        match t:
            case Var(x):
                if x not in ctx:
                    raise TypingError("unbound-var", pos, x)
                return ctx[x]
            case Lam(x, b):
                a = self.s.fresh()
                return Arrow(a, self.synth(ctx | {x: a}, b, pos + (0,)))
            case App(Lam(x, b), arg):
                a = self.synth(ctx, arg, pos + (1,))
                return self.synth(ctx | {x: a}, b, pos + (0, 0))
            case App(f, arg):
                ft = self.s.resolve(self.synth(ctx, f, pos + (0,)))
                if isinstance(ft, Meta):
                    self.s.unify(ft, Arrow(self.s.fresh(), self.s.fresh()), pos)
                    ft = self.s.resolve(ft)
                if not isinstance(ft, Arrow):
                    raise TypingError("clash", pos, "application of a non-function")
                self.check(ctx, arg, ft.dom, pos + (1,))
                return ft.cod
            case TyLam(x, b):
                sk = self.s.skolem(x)
                saved = self.tyenv
                self.tyenv = saved | {x: sk}
                try:
                    with self.s.within(sk):
                        body = self.synth(ctx, b, pos + (0,))
                finally:
                    self.tyenv = saved
                return Forall(sk, body)
            case TyApp(f, ty):
                ft = self.s.resolve(self.synth(ctx, f, pos + (0,)))
                arg = rename_tvars(ty, self.tyenv)
                if isinstance(ft, Forall):
                    return self.s.subst(arg, ft.var, ft.body)
                if isinstance(ft, Meta):
                    r = self.s.fresh()
                    self.deferred.append((ft, arg, r, pos))
                    return r
                raise TypingError("clash", pos, "type application of a non-quantified term")
        raise TypeError(t)

    def check(self, ctx, t, a, pos):
        match t:
            case Lam(x, b):
                a = self.s.resolve(a)
                if isinstance(a, Meta):
                    self.s.unify(a, Arrow(self.s.fresh(), self.s.fresh()), pos)
                    a = self.s.resolve(a)
                if not isinstance(a, Arrow):
                    raise TypingError("clash", pos, "abstraction against a non-implication")
                self.check(ctx | {x: a.dom}, b, a.cod, pos + (0,))
            case TyLam(x, b):
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
                        self.check(ctx, b, expected, pos + (0,))
                finally:
                    self.tyenv = saved
            case App(Lam(x, b), arg):
                at = self.synth(ctx, arg, pos + (1,))
                self.check(ctx | {x: at}, b, a, pos + (0, 0))
            case _:
                self.s.unify(self.synth(ctx, t, pos), a, pos)

    def finish(self):
        pending = self.deferred
        while pending:
            later = []
            for ft, arg, r, pos in pending:
                ft = self.s.resolve(ft)
                if isinstance(ft, Forall):
                    self.s.unify(r, self.s.subst(arg, ft.var, ft.body), pos)
                elif isinstance(ft, Meta):
                    later.append((ft, arg, r, pos))
                else:
                    raise TypingError("clash", pos, "type application of a non-quantified term")
            if len(later) == len(pending):
                raise TypingError("not-synthesizable", later[0][3], "type application of unknown type")
            pending = later


def typecheck_lam(ctx: dict, t, ty) -> bool:
    ch = _TargetChecker()
    ch.check(ctx, t, ty, ())
    ch.finish()
    return True


def infer_lam(ctx: dict, t):
    ch = _TargetChecker()
    a = ch.synth(ctx, t, ())
    ch.finish()
    avoid = set()
    for b in ctx.values():
        avoid |= b.ftv
    return ch.s.pretty([a], avoid)[0]


# ---------------------------------------------------------------- concrete syntax

def print_lam(t, abbrev: bool = False) -> str:
    if abbrev and t == S_COMB:
        return "s"
    match t:
        case Var(n):
            return n
        case Lam(x, b):
            sep = "" if isinstance(b, (Lam, TyLam)) else " "
            return f"\\{x}.{sep}{print_lam(b, abbrev)}"
        case TyLam(x, b):
            sep = "" if isinstance(b, (Lam, TyLam)) else " "
            return f"/\\{x}.{sep}{print_lam(b, abbrev)}"
        case App(f, a):
            fs = print_lam(f, abbrev)
            if isinstance(f, (Lam, TyLam)) and not (abbrev and f == S_COMB):
                fs = f"({fs})"
            as_ = print_lam(a, abbrev)
            if isinstance(a, (App, Lam, TyLam, TyApp)) and not (abbrev and a == S_COMB):
                as_ = f"({as_})"
            return f"{fs} {as_}"
        case TyApp(f, ty):
            fs = print_lam(f, abbrev)
            if isinstance(f, (Lam, TyLam)):
                fs = f"({fs})"
            return f"{fs} <{print_type(ty)}>"
    raise TypeError(t)


def parse_lam(src: str):
    ts = TokenStream(src)
    t = _lam_term(ts)
    ts.finish()
    return t


def _lam_term(ts):
    if ts.at("\\"):
        ts.next()
        x = ts.ident()
        ts.expect(".")
        return Lam(x, _lam_term(ts))
    if ts.at("/\\"):
        ts.next()
        x = ts.ident()
        ts.expect(".")
        return TyLam(x, _lam_term(ts))
    t = _lam_atom(ts)
    while True:
        if ts.at("<"):
            ts.next()
            ty = parse_type_from(ts)
            ts.expect(">")
            t = TyApp(t, ty)
        elif ts.at("\\") or ts.at("/\\"):
            return App(t, _lam_term(ts))
        elif ts.at("(") or ts.at_ident():
            t = App(t, _lam_atom(ts))
        else:
            return t


def _lam_atom(ts):
    if ts.at("("):
        ts.next()
        t = _lam_term(ts)
        ts.expect(")")
        return t
    tok = ts.peek()
    if not tok.ident:
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.offset)
    return Var(ts.ident())


def lam_to_json(t) -> dict:
    match t:
        case Var(n):
            return {"k": "var", "x": n}
        case Lam(x, b):
            return {"k": "lam", "x": x, "body": lam_to_json(b)}
        case App(f, a):
            return {"k": "app", "fun": lam_to_json(f), "arg": lam_to_json(a)}
        case TyLam(x, b):
            return {"k": "tylam", "x": x, "body": lam_to_json(b)}
        case TyApp(f, ty):
            return {"k": "tyapp", "fun": lam_to_json(f), "ty": type_to_json(ty)}
    raise TypeError(t)


def lam_from_json(d: dict):
    match d["k"]:
        case "var":
            return Var(d["x"])
        case "lam":
            return Lam(d["x"], lam_from_json(d["body"]))
        case "app":
            return App(lam_from_json(d["fun"]), lam_from_json(d["arg"]))
        case "tylam":
            return TyLam(d["x"], lam_from_json(d["body"]))
        case "tyapp":
            return TyApp(lam_from_json(d["fun"]), type_from_json(d["ty"]))
    raise ValueError(f"unknown target kind {d['k']!r}")
