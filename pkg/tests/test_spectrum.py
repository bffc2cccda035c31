import pytest
from hypothesis import given

from conftest import P, typed
from ljmse import cps as C
from ljmse import target as T
from ljmse.cps import Kind
from ljmse.spectrum import (
    CALCULI, EMBEDDINGS, embed_J, embed_e, embed_m, embed_s, lam, lj, ljm, ljms, map_circ,
    map_sharp, mu_nf, reaches,
)
from ljmse.syntax import NIL, Coerce, Cut, Sel, Var, alpha_eq
from ljmse.verify.suites import eager_pi_check, eager_pi_instance


def rules_and_results(mod, e):
    return [(s.rule, mod.show(s.after)) for s in mod.steps(e)]


# ---------------------------------------------------------------- reduction rules

def test_lj_beta():
    assert rules_and_results(lj, lj.parse("(\\x.x)(u, y.y)")) == [("beta", "u")]


def test_ljm_mu():
    assert rules_and_results(ljm, ljm.parse("(x) x(u, (z) z)", "coterm")) == [("mu", "u::(z) z")]


def test_ljms_sigma():
    assert rules_and_results(ljms, ljms.parse("t (x) x")) == [("sigma", "t")]


def test_lambda_beta():
    assert rules_and_results(lam, lam.parse("(\\x.x) y")) == [("beta", "y")]


def test_constructors_reject_foreign_nodes():
    with pytest.raises(TypeError):
        lj.GApp(Var("x"), lj.Var("u"), "y", lj.Var("y"))


# ---------------------------------------------------------------- append

def test_lj_append_pushes_into_value_body():
    r = lj.GenArg(lj.Var("u"), "x", lj.Var("x"))
    s = lj.GenArg(lj.Var("w"), "y", lj.Var("y"))
    assert lj.append(r, s) == lj.GenArg(lj.Var("u"), "x", lj.GApp(lj.Var("x"), lj.Var("w"), "y", lj.Var("y")))


def test_ljm_append_under_selection():
    s = ljm.GenArg(ljm.Var("w"), ljm.parse("(z) z", "coterm"))
    got = ljm.append(ljm.Sel("x", ljm.Var("x")), s)
    assert ljm.show(got) == "(x) x(w, (z) z)"


def test_ljms_append_under_selection():
    l = ljms.parse("(x) x u::(z) z", "coterm")
    got = ljms.append(l, ljms.parse("w::(y) y", "coterm"))
    assert ljms.alpha_eq(got, ljms.parse("(x) x u::(z) z w::(y) y", "coterm"))


def test_lazy_pi_only_moves_the_outer_argument():
    t = lj.parse("f(u, x.x(v, y.y))(w, z.z)")
    lazy = [lj.show(s.after) for s in lj.step_lazy_pi(t)]
    assert "f(u, x.x(v, y.y)(w, z.z))" in lazy


def test_pi_nf_matches_eager_append():
    t = lj.parse("f(u, x.x(v, y.y))(w, z.z)")
    r, s = t.fun.genarg, t.genarg
    assert lj.alpha_eq(lj.pi_nf(t), lj.pi_nf(lj.apply(t.fun.fun, lj.append(r, s))))


@given(typed("lj"))
def test_pi_nf_is_idempotent(sample):
    _, t, _ = sample
    n = lj.pi_nf(t)
    assert lj.alpha_eq(lj.pi_nf(n), n)
    assert not [s for s in lj.steps(n) if s.rule == "pi"]


# ---------------------------------------------------------------- embeddings

def test_embed_J_application():
    assert lj.show(embed_J(lam.parse("t u"))) == "t(u, x.x)"


def test_embed_e_clauses():
    assert embed_e(ljms.Sel("x", ljms.Var("y"))) == Sel("x", Cut(Var("y"), NIL))
    got = embed_e(ljms.parse("t (x) x"))
    assert got == Coerce(Cut(Var("t"), Sel("x", Cut(Var("x"), NIL))))


@pytest.mark.parametrize("pair", list(EMBEDDINGS))
def test_embeddings_simulate_one_corpus_step_each(pair):
    import random
    from ljmse.verify.gen import GenConfig, gen_one
    src, dst = pair
    embed = EMBEDDINGS[pair]
    rng = random.Random(11)
    checked = 0
    while checked < 20:
        _, t, _ = gen_one(GenConfig(calculus=src), rng)
        for s in CALCULI[src].steps(t):
            dst_steps = CALCULI[dst].steps if dst != "ljmse" else _ljmse_steps
            dst_key = CALCULI[dst].key if dst != "ljmse" else _ljmse_key
            assert reaches(embed(t), embed(s.after), dst_steps, dst_key, plus=True) is not None
            checked += 1


def _ljmse_steps(e):
    from ljmse.reduction import all_steps
    from ljmse.spectrum import SpecStep
    return [SpecStep(s.rule.value, s.pos, s.after) for s in all_steps(e)]


def _ljmse_key(e):
    from ljmse.syntax import expr_key
    return expr_key(e)


# ---------------------------------------------------------------- interpretations

def test_sharp_clauses():
    assert map_sharp(ljms.Var("x")) == ljm.Var("x")
    assert ljm.show(map_sharp(ljms.parse("(\\x.x) (y) y"))) == "\\x.x"
    got = map_sharp(ljms.parse("u (x) x w::(z) z"))
    assert ljm.alpha_eq(got, ljm.parse("u(w, (z) z)"))


def test_circ_clauses():
    assert map_circ(NIL) == ljms.Sel("x", ljms.Var("x"))
    assert ljms.show(map_circ(P("{t []}"))) == "t (x) x"
    assert ljms.show(map_circ(P("(x) {t []} l::[]", "coterm"))) == "(x) (t (x) x) l::(x) x"


def test_mu_nf_clauses():
    assert mu_nf(Sel("x", Cut(Var("x"), NIL))) == NIL
    kept = Sel("x", Cut(Var("y"), NIL))
    assert mu_nf(kept) == kept


@given(typed())
def test_mu_nf_is_a_fixpoint_on_its_image(sample):
    _, t, _ = sample
    n = mu_nf(t)
    assert alpha_eq(mu_nf(n), n)


def test_eager_pi_counterexample():
    assert eager_pi_check() == {"eager": False, "lazy": True}
    v0, v1 = eager_pi_instance()
    assert [s.rule for s in ljms.steps(v0) if s.pos == ()] == ["pi"]
    assert ljms.show(v0) == "(t0 u0::(x) (a b::(w) w) (z) z) u::(y) y"


# ---------------------------------------------------------------- typing and translations

@pytest.mark.parametrize("name", ["lambda", "lj", "ljm", "ljms"])
def test_subject_reduction_in_every_calculus(name):
    import random
    from ljmse.verify.gen import GenConfig, gen_one
    mod = CALCULI[name]
    rng = random.Random(name)
    for _ in range(40):
        ctx, t, a = gen_one(GenConfig(calculus=name), rng)
        for s in mod.steps(t):
            assert mod.check(ctx, s.after, a)


@pytest.mark.parametrize("name,kind", [
    ("lj", Kind.CGPS_LJ), ("ljm", Kind.CGPS_LJM), ("ljms", Kind.CGPS_LJMS),
])
def test_subsystem_translation_coheres_with_embedding(name, kind):
    import random
    from ljmse.verify.gen import GenConfig, gen_one
    chain = {"lj": [embed_m, embed_s, embed_e], "ljm": [embed_s, embed_e], "ljms": [embed_e]}[name]
    rng = random.Random(kind.value)
    for _ in range(40):
        _, t, _ = gen_one(GenConfig(calculus=name), rng)
        g = t
        for f in chain:
            g = f(g)
        assert T.alpha_eq(C.translate(t, kind), C.cgps(g))
