"""Acceptance run at the default corpus sizes.

Each criterion prints one PASS/FAIL line. Run directly with
`python tests/test_acceptance.py` for the summary alone.
"""
from dataclasses import replace

import pytest

from ljmse.verify import GenConfig
from ljmse.verify.suites import (
    eager_pi_check, suite_confluence, suite_embeddings, suite_garbage, suite_interpretations,
    suite_negative_simple_cps, suite_peaks, suite_second_order, suite_sn, suite_strict_simulation,
    suite_typing, suite_weak_simulation_cps,
)

CFG = GenConfig(seed=0, count=500, max_size=12)
RESULTS: dict = {}


def _total(bucket: dict) -> int:
    return sum(bucket.values())


def criterion_1():
    rep = suite_strict_simulation(CFG)
    rules = rep.stats["rules"]
    coverage = all(rules.get(r, 0) >= 50 for r in ("beta", "pi", "sigma", "mu", "eps"))
    at_least_one = "0" not in rep.stats["path_length"]
    ok = rep.passed and rep.inconclusive == 0 and coverage and at_least_one and rep.wall_time < 300
    return ok, f"{rep.cases} steps, rules {dict(sorted(rules.items()))}, {rep.wall_time:.1f}s"


def criterion_2():
    rep = suite_weak_simulation_cps(CFG)
    zero = rep.stats["zero_steps"]
    rules = rep.stats["rules"]
    identified = zero.get("eps", 0) == rules.get("eps", 0) and zero.get("pi", 0) == rules.get("pi", 0)
    return rep.passed and identified, f"{rep.cases} steps, identified {dict(sorted(zero.items()))}"


def criterion_3():
    rep = suite_negative_simple_cps()
    nodes = rep.stats["graph_nodes"].values()
    ok = rep.passed and rep.cases >= 5 and max(nodes) < 10_000
    return ok, f"{rep.cases} instances, largest graph {max(nodes)} nodes"


def _typing():
    if "typing" not in RESULTS:
        RESULTS["typing"] = suite_typing(CFG)
    return RESULTS["typing"]


def criterion_4():
    rep = _typing()
    bad = [f for f in rep.failures if f["property"] == "translation typing"]
    n = _total(rep.stats["translation"])
    return not bad and rep.stats["translation"].get("cgps/second", 0) > 0, f"{n} translations typed"


def criterion_5():
    rep = _typing()
    bad = [f for f in rep.failures if f["property"] == "subject reduction"]
    calculi = {k.split("/")[0] for k in rep.stats["subject_reduction"]}
    ok = not bad and calculi == {"ljmse", "lambda", "lj", "ljm", "ljms"}
    return ok, f"{_total(rep.stats['subject_reduction'])} steps across {sorted(calculi)}"


def criterion_6():
    rep = suite_embeddings(replace(CFG, count=300))
    coherence = rep.stats["coherence"]
    ok = rep.passed and coherence == {"lj": 300, "ljm": 300, "ljms": 300}
    return ok, f"{rep.cases} checks, coherence {coherence}"


def criterion_7():
    rep = suite_interpretations(replace(CFG, count=300))
    ok = rep.passed and eager_pi_check() == {"eager": False, "lazy": True}
    return ok, f"{rep.cases} checks, eager pi {rep.stats['eager_pi']}"


def criterion_8():
    rep = suite_peaks(CFG, max_steps=10)
    families = rep.stats["families"]
    ok = rep.passed and set(families) == {"pi/pi", "beta/pi", "pi/sigma", "eps/pi", "mu/sigma"}
    return ok, f"{rep.cases} peaks, families {families}"


def criterion_9():
    rep = suite_confluence(CFG, peaks=200, max_steps=50)
    random_peaks = _total(rep.stats.get("random_peaks", {}))
    return rep.passed and random_peaks == 200, f"{random_peaks} random peaks joined"


def criterion_10():
    rep = suite_garbage(CFG, samples=100)
    succ = rep.stats["succ"]
    ok = rep.passed and succ["steps"] == 2 and rep.cases == 101
    return ok, f"s G -> G in {succ['steps']} steps, {rep.cases - 1} colon instances"


def criterion_11():
    rep = suite_sn(CFG, strategies=5, max_steps=10_000)
    strat = rep.stats["strategy"]
    ok = rep.passed and strat == {"leftmost": 500, "random": 2500}
    return ok, f"{rep.cases} runs, longest {rep.stats['max_length']}"


def criterion_12():
    rep = suite_second_order(CFG, triples=500)
    nat = rep.stats["naturality"]
    beta2 = rep.stats["rules"].get("beta2", 0)
    ok = rep.passed and nat["structurally_equal"] == nat["triples"] == 500 and beta2 > 0
    return ok, f"{beta2} type-beta steps simulated, {nat['structurally_equal']}/500 triples exact"


CRITERIA = [
    (1, "strict simulation (CGPS)", criterion_1),
    (2, "weak simulation (CPS)", criterion_2),
    (3, "simple CPS counterexample family", criterion_3),
    (4, "type soundness of translations", criterion_4),
    (5, "subject reduction", criterion_5),
    (6, "embedding chain and coherence", criterion_6),
    (7, "interpretation maps", criterion_7),
    (8, "critical peaks", criterion_8),
    (9, "confluence smoke", criterion_9),
    (10, "garbage arithmetic", criterion_10),
    (11, "strong normalisation smoke", criterion_11),
    (12, "second order", criterion_12),
]


def _line(num, name, ok, detail):
    return f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {name}: {detail}"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(n, name, *fn()) for n, name, fn in CRITERIA]
    for r in results:
        print(_line(*r))
    raise SystemExit(0 if all(r[2] for r in results) else 1)
