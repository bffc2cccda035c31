import json

import pytest

from ljmse import cps as C
from ljmse import reduction as R
from ljmse import target as T
from ljmse.syntax import size
from ljmse.typecheck import check_term
from ljmse.verify import SUITES, GenConfig, gen_typed, run_suites
from ljmse.verify.suites import (
    DEGENERATE_FAMILY, NEGATIVE_FAMILY, Report, negative_instances, suite_negative_simple_cps,
)


def test_generator_is_deterministic_and_typed():
    cfg = GenConfig(seed=1, count=40)
    a, b = gen_typed(cfg), gen_typed(cfg)
    assert a == b
    for ctx, t, ty in a:
        assert size(t) <= cfg.max_size
        assert check_term(ctx, t, ty)


def test_generator_small_size_yields_variables():
    terms = gen_typed(GenConfig(seed=1, max_size=1, count=20))
    assert all(size(t) == 1 for _, t, _ in terms)


def test_generator_covers_every_rule():
    seen = set()
    for _, t, _ in gen_typed(GenConfig(seed=0, count=200)):
        seen |= {s.rule for s in R.all_steps(t)}
    assert seen == set(R.ALL_RULES) - {R.Rule.BETA2}
    seen = set()
    for _, t, _ in gen_typed(GenConfig(seed=0, count=100, level="second")):
        seen |= {s.rule for s in R.all_steps(t)}
    assert R.Rule.BETA2 in seen


def test_negative_family_is_unreachable_under_simple_cps():
    rep = suite_negative_simple_cps()
    assert rep.passed and rep.cases == len(NEGATIVE_FAMILY) >= 5
    assert all(n < 10_000 for n in rep.stats["graph_nodes"].values())


def test_degenerate_instances_are_reachable():
    # with t a variable the reduct's image appears inside the redex's graph
    for redex, reduct in negative_instances(DEGENERATE_FAMILY):
        graph, exhausted = T.reduction_graph(C.cps_simple(redex))
        assert exhausted and T.to_nameless(C.cps_simple(reduct)) in graph


def test_report_json_is_stable():
    rep = Report("x", cases=2)
    rep.count("b", 1)
    rep.count("a", "k", 2)
    assert list(rep.to_json()["stats"]) == ["a", "b"]
    assert "wall_time" not in rep.to_json()
    assert "wall_time" in rep.to_json(timing=True)


def test_inconclusive_fails_unless_allowed():
    rep = Report("x", inconclusive=1)
    assert not rep.passed
    rep.allow_inconclusive = True
    assert rep.passed


def test_every_suite_passes_on_a_small_corpus():
    reports = run_suites(["all"], GenConfig(seed=2, count=40))
    assert [r.suite for r in reports] == [
        "simulation", "simulation-sub", "weak-cps", "negative", "embeddings",
        "interpretations", "confluence", "typing", "sn", "garbage", "second-order",
    ]
    assert len(reports) == len(SUITES)
    for r in reports:
        assert r.passed, (r.suite, r.failures[:3])


def test_reports_are_byte_identical_across_runs():
    cfg = GenConfig(seed=5, count=25)
    a = json.dumps([r.to_json() for r in run_suites(["simulation", "confluence"], cfg)])
    b = json.dumps([r.to_json() for r in run_suites(["simulation", "confluence"], cfg)])
    assert a == b
