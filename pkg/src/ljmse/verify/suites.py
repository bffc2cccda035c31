"""Property suites.  Each suite folds over independent cases into a Report."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace

from .. import cps as C
from .. import reduction as R
from .. import target as T
from ..cps import Kind
from ..secondorder import bar_naturality, random_triples, star_naturality
from ..spectrum import CALCULI, EMBEDDINGS, SearchCapHit, SpecStep, ljm, ljms, search
from ..spectrum import embed_e, embed_m, embed_s, map_circ, map_sharp, mu_nf
from ..surface import parse_expr, print_expr
from ..syntax import (
    NIL, Coerce, Cons, Cut, Lam, all_names, children, expr_key, fresh_name, ty_subst_type,
)
from ..typecheck import TypingError, check_term, infer, subject_reduction_check
from .gen import GenConfig, gen_typed


@dataclass
class Report:
    suite: str
    cases: int = 0
    failures: list = field(default_factory=list)
    inconclusive: int = 0
    stats: dict = field(default_factory=dict)
    wall_time: float = 0.0
    allow_inconclusive: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures and (self.allow_inconclusive or self.inconclusive == 0)

    def count(self, group: str, key, n: int = 1):
        bucket = self.stats.setdefault(group, {})
        bucket[str(key)] = bucket.get(str(key), 0) + n

    def fail(self, **record):
        self.failures.append(record)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "cases": self.cases,
            "failures": self.failures,
            "inconclusive": self.inconclusive,
            "stats": {k: dict(sorted(v.items())) if isinstance(v, dict) else v
                      for k, v in sorted(self.stats.items())},
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return (f"{state} {self.suite}: {self.cases} cases, {len(self.failures)} failures, "
                f"{self.inconclusive} inconclusive")


def _timed(fn):
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.wall_time = time.perf_counter() - t0
        return rep
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _corpus(cfg: GenConfig, calculus: str, level: str = "prop", count: int | None = None):
    return gen_typed(replace(cfg, calculus=calculus, level=level,
                             count=cfg.count if count is None else count))


def _show(calculus, e) -> str:
    return print_expr(e) if calculus == "ljmse" else CALCULI[calculus].show(e)


def _full_steps(e) -> list:
    return [SpecStep(s.rule.value, s.pos, s.after) for s in R.all_steps(e)]


def _source_steps(calculus):
    if calculus == "ljmse":
        return _full_steps
    return CALCULI[calculus].steps


def _reach_json(r: T.ReachResult) -> dict:
    return {"found": r.found, "steps": r.steps, "nodes_explored": r.nodes_explored,
            "exhausted": r.exhausted, "method": r.method}


# ---------------------------------------------------------------- simulation

@_timed
def suite_strict_simulation(cfg: GenConfig, kind: Kind = Kind.CGPS, caps=None) -> Report:
    """Every one-step reduct is simulated by at least one target beta step."""
    kind = Kind(kind)
    calculus = C.SOURCE[kind]
    name = "simulation" if kind == Kind.CGPS and cfg.level == "prop" else f"simulation[{kind.value},{cfg.level}]"
    rep = Report(name)
    steps = _source_steps(calculus)
    for ctx, t, _ in _corpus(cfg, calculus, cfg.level):
        img = C.translate(t, kind)
        for st in steps(t):
            rep.cases += 1
            img2 = C.translate(st.after, kind)
            r = T.reach(img, img2, "plus", caps)
            rep.count("rules", st.rule)
            if r.found:
                rep.count("path_length", r.steps)
                continue
            if not r.conclusive:
                rep.inconclusive += 1
            rep.fail(term=_show(calculus, t), step={"rule": st.rule, "pos": list(st.pos)},
                     images=[T.print_lam(img), T.print_lam(img2)], reach=_reach_json(r))
    return rep


@_timed
def suite_weak_simulation_cps(cfg: GenConfig, caps=None) -> Report:
    """CPS images are related by zero or more steps; eps and pi steps are identified."""
    rep = Report("weak-cps")
    for ctx, t, _ in _corpus(cfg, "ljmse"):
        img = C.cps(t)
        for st in R.all_steps(t):
            rep.cases += 1
            rule = st.rule.value
            img2 = C.cps(st.after)
            r = T.reach(img, img2, "star", caps)
            rep.count("rules", rule)
            record = dict(term=print_expr(t), step={"rule": rule, "pos": list(st.pos)},
                          images=[T.print_lam(img), T.print_lam(img2)], reach=_reach_json(r))
            if not r.found:
                if not r.conclusive:
                    rep.inconclusive += 1
                rep.fail(**record)
                continue
            if r.steps == 0:
                rep.count("zero_steps", rule)
            if st.rule in (R.Rule.EPS, R.Rule.PI):
                if st.pos == () or (len(st.pos) == 1 and isinstance(t, Coerce)):
                    rep.count("root_identified", rule)
                if not T.alpha_eq(img, img2):
                    rep.fail(reason="not identified", **record)
    return rep


# When (t:K) is x K the reduct's image (\\x.x K)u coincides with ([]:K)u, which
# is reachable; the family below avoids that degenerate shape.
NEGATIVE_FAMILY = [
    ("y", "z"), ("\\z.x", "y"), ("{x y::[]}", "w"), ("\\z.z", "y"),
    ("\\z.z", "\\w.w"), ("{y x::[]}", "z"), ("\\z.{x z::[]}", "y"),
]
DEGENERATE_FAMILY = [("x", "y"), ("x", "\\z.z"), ("{x []}", "\\w.w")]


def negative_instances(family=None) -> list:
    """Commands {(\\x.t)(u::[])} together with their root beta reduct."""
    out = []
    for t_src, u_src in NEGATIVE_FAMILY if family is None else family:
        t, u = parse_expr(t_src), parse_expr(u_src)
        redex = Coerce(Cut(Lam("x", t), Cons(u, NIL)))
        (step,) = [s for s in R.all_steps(redex) if s.rule == R.Rule.BETA]
        out.append((redex, step.after))
    return out


@_timed
def suite_negative_simple_cps(max_nodes: int = 10_000) -> Report:
    """The simplified CPS loses simulation of beta; full CPS and CGPS keep it."""
    rep = Report("negative")
    for redex, reduct in negative_instances():
        rep.cases += 1
        src, img, img2 = print_expr(redex), C.cps_simple(redex), C.cps_simple(reduct)
        graph, exhausted = T.reduction_graph(img, {"nodes": max_nodes})
        rep.count("graph_nodes", src, len(graph))
        if not exhausted:
            rep.inconclusive += 1
            rep.fail(term=src, reason="graph not exhausted", nodes=len(graph))
            continue
        if T.to_nameless(img2) in graph:
            rep.fail(term=src, reason="simple CPS image reachable",
                     images=[T.print_lam(img), T.print_lam(img2)])
        full = T.reach(C.cps(redex), C.cps(reduct), "star")
        garbage = T.reach(C.cgps(redex), C.cgps(reduct), "plus")
        if not full.found:
            rep.fail(term=src, reason="full CPS does not simulate", reach=_reach_json(full))
        if not (garbage.found and garbage.steps >= 1):
            rep.fail(term=src, reason="CGPS does not simulate", reach=_reach_json(garbage))
    return rep


# ---------------------------------------------------------------- embeddings and maps

def _ljmse_infer(ctx, t):
    return infer(ctx, t).out_type


def _ljmse_check(ctx, t, a) -> bool:
    try:
        return check_term(ctx, t, a)
    except TypingError:
        return False


def _module_of(calculus):
    if calculus == "ljmse":
        return None
    return CALCULI[calculus]


def _infer_in(calculus, ctx, t):
    mod = _module_of(calculus)
    return _ljmse_infer(ctx, t) if mod is None else mod.infer(ctx, t)


def _check_in(calculus, ctx, t, a) -> bool:
    mod = _module_of(calculus)
    return _ljmse_check(ctx, t, a) if mod is None else mod.check(ctx, t, a)


def _key_in(calculus):
    return expr_key if calculus == "ljmse" else CALCULI[calculus].key


def _same_principal(src, dst, ctx, t, ft) -> bool:
    """Mutual instance check: each principal type checks the other term."""
    return _check_in(dst, ctx, ft, _infer_in(src, ctx, t)) and _check_in(src, ctx, t, _infer_in(dst, ctx, ft))


def _coherence_image(calculus, t):
    e = t
    if calculus == "lj":
        e = embed_m(e)
    if calculus in ("lj", "ljm"):
        e = embed_s(e)
    return embed_e(e)


_COHERENCE = {"lj": Kind.CGPS_LJ, "ljm": Kind.CGPS_LJM, "ljms": Kind.CGPS_LJMS}


@_timed
def suite_embeddings(cfg: GenConfig) -> Report:
    """Embeddings preserve types and strictly simulate; subsystem CGPS is coherent."""
    rep = Report("embeddings")
    for (src, dst), embed in EMBEDDINGS.items():
        steps, key = _source_steps(dst), _key_in(dst)
        label = f"{src}->{dst}"
        for ctx, t, a in _corpus(cfg, src):
            ft = embed(t)
            rep.cases += 1
            if not (_check_in(dst, ctx, ft, a) and _same_principal(src, dst, ctx, t, ft)):
                rep.fail(embedding=label, term=_show(src, t), reason="type not preserved")
            for st in _source_steps(src)(t):
                rep.cases += 1
                rep.count(label, st.rule)
                goal = embed(st.after)
                try:
                    path = search(ft, lambda e, g=key(goal): key(e) == g, steps, key, allow_empty=False)
                except SearchCapHit:
                    rep.inconclusive += 1
                    path = None
                if path is None:
                    rep.fail(embedding=label, term=_show(src, t), step={"rule": st.rule, "pos": list(st.pos)},
                             images=[_show(dst, ft), _show(dst, goal)])
                else:
                    rep.count(f"{label} path_length", len(path))
    for calculus, kind in _COHERENCE.items():
        for ctx, t, _ in _corpus(cfg, calculus):
            rep.cases += 1
            rep.count("coherence", calculus)
            direct, via = C.translate(t, kind), C.cgps(_coherence_image(calculus, t))
            if not T.alpha_eq(direct, via):
                rep.fail(coherence=calculus, term=_show(calculus, t),
                         images=[T.print_lam(direct), T.print_lam(via)])
    return rep


def _lazy_ljm_steps(e):
    return [s for s in ljm.steps(e, "lazy") if s.rule != "pi"]


def _eager_ljm_steps(e):
    return ljm.steps(e, "eager")


def eager_pi_instance():
    """v0 = t0(u0::(x)(t1 (z)z))(u::k) with t1 an application, and its pi reduct v1."""
    t1 = ljms.Cut(ljms.Var("a"), ljms.Cons(ljms.Var("b"), ljms.Sel("w", ljms.Var("w"))))
    k = ljms.Sel("y", ljms.Var("y"))
    inner = ljms.Cut(ljms.Var("t0"), ljms.Cons(ljms.Var("u0"), ljms.Sel("x", ljms.Cut(t1, ljms.Sel("z", ljms.Var("z"))))))
    v0 = ljms.Cut(inner, ljms.Cons(ljms.Var("u"), k))
    (step,) = [s for s in ljms.steps(v0) if s.rule == "pi" and s.pos == ()]
    return v0, step.after


def eager_pi_check() -> dict:
    """Is v1# reachable from v0# under eager pi, and under lazy pi?"""
    v0, v1 = eager_pi_instance()
    a, b = map_sharp(v0), map_sharp(v1)
    goal = ljm.key(b)
    out = {}
    for label, steps in (("eager", _eager_ljm_steps), ("lazy", _lazy_ljm_steps)):
        path = search(a, lambda e: ljm.key(e) == goal, steps, ljm.key)
        out[label] = path is not None
    return out


@_timed
def suite_interpretations(cfg: GenConfig) -> Report:
    """sharp, circ and mu_nf against their reduction properties."""
    rep = Report("interpretations")
    sigma_only = {"sigma"}
    for ctx, t, _ in _corpus(cfg, "ljms"):
        rep.cases += 1
        goal = ljms.key(embed_s(map_sharp(t)))
        try:
            path = search(t, lambda e: ljms.key(e) == goal, ljms.steps, ljms.key, sigma_only)
        except SearchCapHit:
            rep.inconclusive += 1
            path = None
        if path is None:
            rep.fail(property="t ->sigma* s(t#)", term=ljms.show(t))
        else:
            rep.count("sigma_path_length", len(path))
        sharp = map_sharp(t)
        for st in ljms.steps(t):
            rep.cases += 1
            rep.count("sharp_rules", st.rule)
            goal = ljm.key(map_sharp(st.after))
            try:
                path = search(sharp, lambda e, g=goal: ljm.key(e) == g, _lazy_ljm_steps, ljm.key)
            except SearchCapHit:
                rep.inconclusive += 1
                path = None
            if path is None:
                rep.fail(property="t# ->* u# with lazy pi", term=ljms.show(t),
                         step={"rule": st.rule, "pos": list(st.pos)})
            elif not path:
                rep.count("sharp_zero_steps", st.rule)
    mu_only = {"mu"}
    for ctx, t, _ in _corpus(cfg, "ljmse"):
        rep.cases += 1
        back = embed_e(map_circ(t))
        goal = expr_key(t)
        try:
            path = search(back, lambda e: expr_key(e) == goal, _full_steps, expr_key, mu_only)
        except SearchCapHit:
            rep.inconclusive += 1
            path = None
        if path is None:
            rep.fail(property="e(t°) ->mu* t", term=print_expr(t))
        circ, mu = map_circ(t), mu_nf(t)
        for st in R.all_steps(t):
            rep.cases += 1
            rule = st.rule.value
            rep.count("circ_mu_rules", rule)
            goal = ljms.key(map_circ(st.after))
            try:
                ok = search(circ, lambda e, g=goal: ljms.key(e) == g, ljms.steps, ljms.key,
                            allow_empty=False) is not None
            except SearchCapHit:
                rep.inconclusive += 1
                ok = False
            if not ok:
                rep.fail(property="t° ->+ u°", term=print_expr(t), step={"rule": rule, "pos": list(st.pos)})
            goal = expr_key(mu_nf(st.after))
            try:
                ok = search(mu, lambda e, g=goal: expr_key(e) == g, _full_steps, expr_key) is not None
            except SearchCapHit:
                rep.inconclusive += 1
                ok = False
            if not ok:
                rep.fail(property="mu t ->* mu u", term=print_expr(t), step={"rule": rule, "pos": list(st.pos)})
    rep.cases += 1
    fn = eager_pi_check()
    rep.stats["eager_pi"] = fn
    if fn != {"eager": False, "lazy": True}:
        rep.fail(property="eager pi counterexample", result=fn)
    return rep


# ---------------------------------------------------------------- confluence

@_timed
def suite_peaks(cfg: GenConfig, depth: int = 3, per_family: int = 6, max_steps: int = 10) -> Report:
    """Instances of every critical-pair family join; mu/sigma pairs coincide."""
    rep = Report("peaks")
    for e, a, b in R.critical_peaks(depth, cfg.seed, per_family):
        rep.cases += 1
        family = R.peak_family(a, b)
        res = R.join(a.after, b.after, max_steps)
        rep.count("families", family)
        record = dict(term=print_expr(e), family=family, reducts=[print_expr(a.after), print_expr(b.after)])
        if not res.joined:
            rep.fail(**record)
        elif family == "mu/sigma" and res.method != "identical":
            rep.fail(reason="mu/sigma reducts differ", **record)
        else:
            rep.count("join_steps", res.left_steps + res.right_steps)
    return rep


@_timed
def suite_confluence(cfg: GenConfig, peaks: int = 200, max_steps: int = 50) -> Report:
    """Critical peaks plus random peaks of typable terms."""
    rep = suite_peaks(cfg)
    rep.suite = "confluence"
    rng = random.Random(f"peaks/{cfg.seed}")
    candidates = []
    for ctx, t, _ in _corpus(cfg, "ljmse"):
        distinct = {}
        for st in R.all_steps(t):
            distinct.setdefault(expr_key(st.after), st)
        if len(distinct) >= 2:
            candidates.append((t, list(distinct.values())))
    for i in range(peaks):
        if not candidates:
            break
        t, options = candidates[i % len(candidates)]
        a, b = rng.sample(options, 2)
        rep.cases += 1
        res = R.join(a.after, b.after, max_steps)
        rep.count("random_peaks", R.peak_family(a, b))
        if not res.joined:
            rep.fail(term=print_expr(t), reducts=[print_expr(a.after), print_expr(b.after)])
    return rep


# ---------------------------------------------------------------- typing

_TYPED_KINDS = (Kind.CPS, Kind.CGPS)
_SUB_KINDS = (Kind.CGPS_LJMS, Kind.CGPS_LJM, Kind.CGPS_LJ, Kind.CGPS_LJ_OPT, Kind.CGPS_LJ_SIMPLE)


def _translation_typechecks(ctx, t, a, kind) -> bool:
    try:
        return T.typecheck_lam(C.bar_ctx(ctx, kind), C.translate(t, kind), C.bar_type(a, kind))
    except TypingError:
        return False


def _spectrum_subject_reduction(mod, ctx, t, after) -> bool:
    return mod.check(ctx, after, mod.infer(ctx, t))


@_timed
def suite_typing(cfg: GenConfig) -> Report:
    """Subject reduction everywhere and type soundness of every translation."""
    rep = Report("typing")
    prop = _corpus(cfg, "ljmse")
    second = _corpus(cfg, "ljmse", "second", max(1, cfg.count // 5))
    for level, corpus in (("prop", prop), ("second", second)):
        kinds = _TYPED_KINDS if level == "prop" else (Kind.CGPS,)
        for ctx, t, a in corpus:
            for kind in kinds:
                rep.cases += 1
                rep.count("translation", f"{kind.value}/{level}")
                if not _translation_typechecks(ctx, t, a, kind):
                    rep.fail(property="translation typing", kind=kind.value, level=level, term=print_expr(t))
            for st in R.all_steps(t):
                rep.cases += 1
                rep.count("subject_reduction", f"ljmse/{level}/{st.rule.value}")
                if not subject_reduction_check(ctx, t, st):
                    rep.fail(property="subject reduction", calculus="ljmse", level=level,
                             term=print_expr(t), step={"rule": st.rule.value, "pos": list(st.pos)})
    for calculus, mod in CALCULI.items():
        for ctx, t, a in _corpus(cfg, calculus):
            for st in mod.steps(t):
                rep.cases += 1
                rep.count("subject_reduction", f"{calculus}/{st.rule}")
                if not _spectrum_subject_reduction(mod, ctx, t, st.after):
                    rep.fail(property="subject reduction", calculus=calculus, term=mod.show(t),
                             step={"rule": st.rule, "pos": list(st.pos)})
            for kind in _SUB_KINDS:
                if C.SOURCE[kind] != calculus:
                    continue
                rep.cases += 1
                rep.count("translation", kind.value)
                if not _translation_typechecks(ctx, t, a, kind):
                    rep.fail(property="translation typing", kind=kind.value, term=mod.show(t))
    return rep


# ---------------------------------------------------------------- normalisation and garbage

@_timed
def suite_sn(cfg: GenConfig, strategies: int = 5, max_steps: int = 10_000) -> Report:
    """Every corpus term normalises under leftmost and several random strategies."""
    rep = Report("sn")
    for i, (ctx, t, _) in enumerate(_corpus(cfg, "ljmse")):
        runs = [("leftmost", None)] + [("random", cfg.seed * 1_000_003 + i * 31 + k) for k in range(strategies)]
        for strategy, seed in runs:
            rep.cases += 1
            tr = R.normalize(t, strategy, seed, max_steps)
            rep.count("strategy", strategy)
            if tr.status != "normal" or not R.is_normal(tr.final, R.BPSE):
                rep.fail(term=print_expr(t), strategy=strategy, seed=seed, status=tr.status)
            else:
                rep.count("max_length", strategy, 0)
                bucket = rep.stats["max_length"]
                bucket[strategy] = max(bucket[strategy], len(tr.steps))
    return rep


def _subexpressions(e):
    out = [e]
    for _, c in children(e):
        out += _subexpressions(c)
    return out


@_timed
def suite_garbage(cfg: GenConfig, samples: int = 100) -> Report:
    """s G reduces to G in exactly two steps, and (t:sG,K) ->+ (t:G,K)."""
    rep = Report("garbage")
    g = T.Var("g")
    rep.cases += 1
    r = T.reach(T.succ(g), g, "plus")
    graph, exhausted = T.reduction_graph(T.succ(g))
    rep.stats["succ"] = {"steps": r.steps, "graph_nodes": len(graph), "exhausted": exhausted}
    normal = [n for n in graph if not T.steps_nl(n)]
    if not (r.found and r.steps == 2 and exhausted and normal == [T.to_nameless(g)]):
        rep.fail(property="s G -> G in two steps", reach=_reach_json(r), graph_nodes=len(graph))
    rng = random.Random(f"garbage/{cfg.seed}")
    pool = [sub for _, t, _ in _corpus(cfg, "ljmse") for sub in _subexpressions(t)]
    for _ in range(samples):
        e = rng.choice(pool)
        rep.cases += 1
        names = all_names(e)
        gname, kname = fresh_name("g", names), fresh_name("k", names)
        G, K = T.Var(gname), T.Var(kname)
        bigger = C.colon_cgps(e, T.succ(G), K)
        smaller = C.colon_cgps(e, G, K)
        r = T.reach(bigger, smaller, "plus")
        rep.count("path_length", r.steps)
        if not r.found:
            if not r.conclusive:
                rep.inconclusive += 1
            rep.fail(property="(t:sG,K) ->+ (t:G,K)", term=print_expr(e), reach=_reach_json(r))
    return rep


@_timed
def suite_second_order(cfg: GenConfig, triples: int = 500) -> Report:
    """Strict simulation on the second-order corpus and naturality of the type translation."""
    sim = suite_strict_simulation(replace(cfg, level="second", count=max(1, cfg.count // 5)))
    rep = Report("second-order", sim.cases, sim.failures, sim.inconclusive, dict(sim.stats))
    structural = 0
    for b, x, a in random_triples(triples, cfg.seed):
        rep.cases += 1
        if not star_naturality(b, x, a):
            rep.fail(property="star naturality", triple=[repr(b), x, repr(a)])
        if not bar_naturality(b, x, a):
            rep.fail(property="bar naturality", triple=[repr(b), x, repr(a)])
        if C.star_type(ty_subst_type(b, x, a)) == ty_subst_type(C.star_type(b), x, C.star_type(a)):
            structural += 1
    rep.stats["naturality"] = {"triples": triples, "structurally_equal": structural}
    return rep


@_timed
def suite_subsystem_simulation(cfg: GenConfig) -> Report:
    """Strict simulation for the subsystem translations."""
    rep = Report("simulation-sub")
    for kind in _SUB_KINDS:
        sub = suite_strict_simulation(cfg, kind)
        rep.cases += sub.cases
        rep.failures += sub.failures
        rep.inconclusive += sub.inconclusive
        rep.stats[kind.value] = sub.stats.get("rules", {})
    return rep


SUITES = {
    "simulation": lambda cfg: suite_strict_simulation(cfg),
    "simulation-sub": suite_subsystem_simulation,
    "weak-cps": suite_weak_simulation_cps,
    "negative": lambda cfg: suite_negative_simple_cps(),
    "embeddings": suite_embeddings,
    "interpretations": suite_interpretations,
    "confluence": suite_confluence,
    "typing": suite_typing,
    "sn": suite_sn,
    "garbage": suite_garbage,
    "second-order": suite_second_order,
}


def run_suites(names, cfg: GenConfig) -> list:
    if "all" in names:
        names = list(SUITES)
    return [SUITES[n](cfg) for n in names]
