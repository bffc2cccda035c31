from hypothesis import given
from hypothesis import strategies as st

from conftest import P, typed
from ljmse import reduction as R
from ljmse.reduction import Rule
from ljmse.syntax import (
    NIL, Coerce, Cons, Cut, Lam, Sel, Var, alpha_eq, children, expr_key, subexpr,
)
from ljmse.typecheck import subject_reduction_check


def _positions_at(root, pos):
    yield pos
    for i, _ in enumerate(children(subexpr(root, pos))):
        yield from _positions_at(root, pos + (i,))


def enumerate_steps_oracle(e):
    """Independent enumeration: visit every position and ask for root contractions there."""
    out = []
    for pos in _positions_at(e, ()):
        for rule, after in R.root_step(subexpr(e, pos)):
            out.append((rule, pos))
    return sorted(out, key=lambda p: (p[1], p[0].value))


def test_beta_root_step():
    e = Cut(Lam("x", Var("x")), Cons(Var("y"), NIL))
    (s,) = R.all_steps(e)
    assert s.rule is Rule.BETA and s.after == Cut(Var("y"), Sel("x", Cut(Var("x"), NIL)))


def test_mu_root_step():
    (s,) = R.all_steps(Sel("x", Cut(Var("x"), NIL)))
    assert s.rule is Rule.MU and s.after == NIL


def test_eps_is_the_only_step_on_empty_list():
    (s,) = R.all_steps(Coerce(Cut(Var("y"), NIL)))
    assert s.rule is Rule.EPS and s.after == Var("y")


def test_steps_under_lambda():
    (s,) = R.all_steps(Lam("x", Coerce(Cut(Var("y"), NIL))))
    assert (s.rule, s.pos) == (Rule.EPS, (0,))


def test_variable_has_no_steps():
    assert R.all_steps(Var("x")) == []


def test_eps_pi_overlap_gives_two_steps():
    e = P("{{t0 []} u::[]}")
    got = sorted(((s.rule, s.pos) for s in R.all_steps(e)), key=lambda p: (p[1], p[0].value))
    assert got == enumerate_steps_oracle(e)
    assert got == [(Rule.PI, (0,)), (Rule.EPS, (0, 0))]


@given(typed())
def test_step_enumeration_matches_oracle(sample):
    _, t, _ = sample
    got = sorted(((s.rule, s.pos) for s in R.all_steps(t)), key=lambda p: (p[1], p[0].value))
    assert got == enumerate_steps_oracle(t)


def test_normalize_example_trace():
    tr = R.normalize(P("{(\\x.x) y::[]}"), "leftmost", max_steps=100)
    assert [s.rule for s in tr.steps] == [Rule.BETA, Rule.SIGMA, Rule.EPS]
    assert tr.final == Var("y") and tr.status == "normal"


def test_normalize_normal_term():
    tr = R.normalize(Var("x"), "random", seed=3, max_steps=0)
    assert tr.status == "normal" and tr.steps == []


def test_normalize_reports_exhausted_bound():
    tr = R.normalize(P("{(\\x.x) y::[]}"), max_steps=1)
    assert tr.status == "bound-exhausted"


def test_is_normal_examples():
    assert R.is_normal(Coerce(Cut(Var("x"), Cons(Var("u"), NIL))), R.BPSE)
    assert not R.is_normal(Coerce(Cut(Var("y"), NIL)), R.BPSE)
    assert R.is_normal(Cut(Lam("x", Var("x")), NIL), R.BPS)


def _all_normal_forms(e, cap=5000):
    seen, todo, normals = {expr_key(e)}, [e], {}
    while todo:
        cur = todo.pop()
        nxt = R.all_steps(cur, R.BPSE)
        if not nxt:
            normals[expr_key(cur)] = cur
        for s in nxt:
            k = expr_key(s.after)
            if k not in seen:
                seen.add(k)
                todo.append(s.after)
        assert len(seen) < cap
    return list(normals.values())


@given(typed(max_size=8))
def test_leftmost_finds_the_unique_normal_form(sample):
    _, t, _ = sample
    tr = R.normalize(t, rules=R.BPSE)
    (nf,) = _all_normal_forms(t)
    assert alpha_eq(tr.final, nf)
    assert R.normal_shape(tr.final, with_eps=True)


@given(typed(), st.integers(0, 1000))
def test_random_strategy_terminates_in_normal_shape(sample, seed):
    _, t, _ = sample
    tr = R.normalize(t, "random", seed=seed)
    assert tr.status == "normal"
    assert R.is_normal(tr.final) and R.normal_shape(tr.final, with_eps=True)


@given(typed())
def test_every_step_preserves_type(sample):
    ctx, t, _ = sample
    for s in R.all_steps(t):
        assert subject_reduction_check(ctx, t, s)


# ---------------------------------------------------------------- peaks

def test_self_pi_instance_reducts():
    (e, a, b), *_ = R.critical_peaks(1, 0, 1)
    assert R.peak_family(a, b) == "pi/pi"
    left = P("{x []} u::v::[]", "command")
    right = P("{x u::[]} v::[]", "command")
    got = {expr_key(a.after), expr_key(b.after)}
    assert got == {expr_key(left), expr_key(right)}


def test_mu_sigma_reducts_are_identical():
    e = P("t (x) x u::[]", "command")
    families = {s.rule for s in R.all_steps(e)}
    assert families == {Rule.SIGMA, Rule.MU}
    a, b = R.all_steps(e)
    assert alpha_eq(a.after, b.after)


def test_every_family_is_generated_and_joins():
    peaks = R.critical_peaks(2, seed=5, per_family=3)
    families = {R.peak_family(a, b) for _, a, b in peaks}
    assert families == {"pi/pi", "beta/pi", "pi/sigma", "eps/pi", "mu/sigma"}
    for _, a, b in peaks:
        assert R.join(a.after, b.after, 10).joined


def test_join_methods():
    assert R.join(Var("x"), Var("x")).method == "identical"
    res = R.join(P("{y []}"), Var("y"))
    assert res.joined and (res.left_steps, res.right_steps) == (1, 0)
    assert not R.join(Var("x"), Var("y")).joined
