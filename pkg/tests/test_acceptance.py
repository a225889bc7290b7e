"""acceptance suite: one marked group of tests per criterion

The summary printed at the end of the run lists one PASS/FAIL line per
criterion (see conftest.py).  Known-false expectations are kept verbatim as
strict xfails so that they surface as FAIL there without breaking the run.
"""

import time

import pytest

import props
from alog_lab.alog import Caps, aggregate_reduct, enumerate_answer_sets, is_minimal_model
from alog_lab.asolver import solve
from alog_lab.errors import CapExceeded
from alog_lab.flog import enumerate_answer_sets_flog
from alog_lab.parser import parse_program
from alog_lab.slog import enumerate_answer_sets_slog
from helpers import (
    DISJ,
    GRADUATE,
    P1,
    P2,
    P3,
    P4,
    P4_PRIME,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    TRACE,
    TWO_BOUNDS,
    galog,
    gflog,
    lits,
    rule_shapes,
    sets,
)
from test_asolver import EXPECTED_TRACE

INSTANCES = 500
TIME_LIMIT = 10.0


# criterion 1


def alog_sets(text, **kw):
    return enumerate_answer_sets(galog(text, **kw))


def flog_sets(text, **kw):
    return enumerate_answer_sets_flog(gflog(text, **kw))


def slog_sets(text, **kw):
    return enumerate_answer_sets_slog(galog(text, **kw))


CIRCUIT = "gate(g,and) val(w1,0) val(w0,0) output(w0,g) input(w1,g) input(w2,g)"

CORPUS = [
    ("p1_alog", lambda: alog_sets(P1), [""]),
    ("p2_alog", lambda: alog_sets(P2), ["q(b) r(a) r(b) p(a,b)"]),
    ("p3_alog", lambda: alog_sets(P3), ["p(a) p(b) q(a) r"]),
    ("p3_flog", lambda: flog_sets(P3), ["p(a) p(b) q(a)"]),
    ("p4_alog", lambda: alog_sets(P4), []),
    ("p4_prime_alog", lambda: alog_sets(P4_PRIME), ["p(a) p(b)"]),
    ("p5_alog", lambda: alog_sets(P5), [CIRCUIT]),
    ("p6_alog", lambda: alog_sets(P6, int_range=(0, 1)), []),
    ("p6_flog", lambda: flog_sets(P6, int_range=(0, 1)), ["p(0) p(1)"]),
    ("p6_slog", lambda: slog_sets(P6, int_range=(0, 1)), []),
    ("p7_alog", lambda: alog_sets(P7), ["q"]),
    ("p7_slog", lambda: slog_sets(P7), ["q", "p(a) p(b)"]),
    ("p8_alog", lambda: alog_sets(P8), []),
    ("p9_alog", lambda: alog_sets(P9), ["q(a)", "q(a) p(a)"]),
    ("two_bounds_alog", lambda: alog_sets(TWO_BOUNDS), ["q(a) q(b) r(a)", "q(a) q(b) r(a) p(a)"]),
]


@pytest.mark.criterion("1")
@pytest.mark.parametrize("name, compute, expected", CORPUS, ids=[c[0] for c in CORPUS])
def test_corpus(name, compute, expected):
    assert compute() == sets(*expected)


@pytest.mark.criterion("1")
def test_corpus_p10_synonyms():
    (a,) = alog_sets(P10)
    assert lits("carro(a) carro(b)") <= a


@pytest.mark.criterion("1")
@pytest.mark.xfail(
    strict=True,
    reason="{b, p(1)} makes the count 1, so the rule body fails and {b} is a smaller model of the reduct",
)
def test_corpus_disjunctive_flog_extra_set():
    assert flog_sets(DISJ, int_range=(0, 1)) == sets("c", "b p(1)")


@pytest.mark.criterion("1")
@pytest.mark.xfail(
    strict=True,
    reason="the set atom as written says taken is within required, which also holds for john",
)
def test_corpus_graduate_verbatim():
    (a,) = alog_sets(GRADUATE, safe=False)
    assert lits("ready_to_graduate(mike) -ready_to_graduate(john)") <= a


@pytest.mark.criterion("1")
def test_corpus_graduate_intended_direction(note):
    text = GRADUATE.replace("{C:taken(S,C)} <= {C: required(C)}", "{C: required(C)} <= {C:taken(S,C)}")
    (a,) = alog_sets(text, safe=False)
    assert lits("ready_to_graduate(mike) -ready_to_graduate(john)") <= a
    note("graduate rule checked with the set atom reversed (required within taken)")


# criterion 2


@pytest.mark.criterion("2")
def test_solver_trace():
    trace = []
    assert solve(galog(TRACE), trace=trace) == lits("p(b)")
    assert trace == EXPECTED_TRACE


# criteria 3 and 4


def run_instances(check, note, n=INSTANCES, max_seeds=50 * INSTANCES):
    """run ``check`` over seeds until ``n`` instances fall inside its hypothesis"""
    start = time.perf_counter()
    done = skipped = 0
    failures = []
    seed = 0
    while done < n and seed < max_seeds:
        result = check(seed)
        if result == "skip":
            skipped += 1
        else:
            done += 1
            if result is not None:
                failures.append(f"seed {seed}: {result}")
        seed += 1
    elapsed = time.perf_counter() - start
    note(f"{check.__name__}: {done} instances, {skipped} outside hypothesis, {len(failures)} violations, {elapsed:.1f}s")
    assert done >= n, f"only {done} instances generated"
    assert not failures, failures[:5]
    assert elapsed < TIME_LIMIT, f"{elapsed:.1f}s"


def padded_splitting(seed):
    return props.splitting(seed, padded=True)


@pytest.mark.criterion("3")
def test_oracle_solver_differential(note):
    run_instances(props.oracle_vs_solver, note)


@pytest.mark.criterion("4a")
def test_satisfaction_and_support(note):
    run_instances(props.satisfaction_and_support, note)


@pytest.mark.criterion("4b")
def test_antichain(note):
    run_instances(props.antichain, note)


@pytest.mark.criterion("4c")
@pytest.mark.parametrize("check", [props.splitting, padded_splitting], ids=["tight", "padded"])
def test_splitting(check, note):
    run_instances(check, note)


@pytest.mark.criterion("4d")
@pytest.mark.parametrize("check", [props.af_inclusion, props.af_stratified_equality], ids=["inclusion", "stratified"])
def test_alog_flog(check, note):
    run_instances(check, note)


@pytest.mark.criterion("4e")
@pytest.mark.parametrize("check", [props.slog_inclusion, props.slog_stratified_equality], ids=["inclusion", "stratified"])
def test_alog_slog(check, note):
    run_instances(check, note)


@pytest.mark.criterion("4f")
def test_three_way(note):
    run_instances(props.three_way_equality, note)


@pytest.mark.criterion("4g")
def test_k_monotone(note):
    run_instances(props.k_monotone, note)


@pytest.mark.criterion("4h")
def test_ta_fa(note):
    run_instances(props.ta_fa_lemma, note)


# criterion 5: reducts written out by hand, then checked against the oracle


def least_model(text):
    """least model of a definite program, computed independently of the library"""
    rules = [(str(r.head[0]), {str(e) for e in r.body}) for r in parse_program(text).rules]
    model = set()
    while True:
        new = {h for h, body in rules if body <= model} - model
        if not new:
            return model
        model |= new


CLAUSES = [
    # (id, program, S, hand-written reduct, answer sets)
    ("c1_undefined_min", "q :- min{X:p(X)} > 0.", "", "", [""]),
    ("c1_false_max", "q :- max{X:p(X)} > 5. p(1).", "p(1)", "p(1).", ["p(1)"]),
    ("c1_negated_true_max", "q :- not max{X:p(X)} > 0. p(1).", "p(1)", "p(1).", ["p(1)"]),
    ("c2_negated_undefined_min", "q :- not min{X:p(X)} > 0.", "q", "q.", ["q"]),
    ("c3_negated_false_max", "q :- not max{X:p(X)} > 5. p(1).", "p(1) q", "q :- p(1). p(1).", ["p(1) q"]),
    ("c3_negated_false_min", "q :- not min{X:p(X)} > 0. p(0).", "p(0) q", "q :- p(0). p(0).", ["p(0) q"]),
    ("c4_classical_min", "q :- -min{X:p(X)} > 3. p(2).", "p(2) q", "q :- p(2). p(2).", ["p(2) q"]),
    ("c4_classical_undefined_min", "q :- -min{X:p(X)} > 3.", "", "", [""]),
    ("c3_c4_double_negation", "q :- not -min{X:p(X)} > 3. p(5).", "p(5) q", "q :- p(5). p(5).", ["p(5) q"]),
    ("c1_double_negation_true", "q :- not -min{X:p(X)} > 3. p(2).", "p(2)", "p(2).", ["p(2)"]),
]


@pytest.mark.criterion("5")
@pytest.mark.parametrize("name, program, s, reduct, expected", CLAUSES, ids=[c[0] for c in CLAUSES])
def test_reduct_clauses(name, program, s, reduct, expected):
    g = galog(program)
    s = lits(s)
    assert rule_shapes(aggregate_reduct(g, s)) == rule_shapes(parse_program(reduct))
    # the hand reduct has s as its least model, so s is an answer set
    assert {str(l) for l in s} == least_model(reduct)
    assert enumerate_answer_sets(g, prune=False) == sets(*expected)


# criterion 6


@pytest.mark.criterion("6")
def test_exhaustive_search_is_capped(note):
    rules = galog(" ".join(f"p({i}) or q({i})." for i in range(6))).rules
    s = lits(" ".join(f"p({i}) q({i})" for i in range(6)))
    with pytest.raises(CapExceeded):
        is_minimal_model(s, rules, max_atoms=10)
    text = " ".join(f"p({i}) :- not q({i}). q({i}) :- not p({i})." for i in range(6))
    with pytest.raises(CapExceeded):
        enumerate_answer_sets(galog(text), Caps(max_candidates=100))
    note("hardness result not reproduced; exponential searches stop at their caps")
