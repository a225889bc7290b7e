import pytest

from alog_lab.alog import enumerate_answer_sets
from alog_lab.analysis import (
    aggregate_stratification,
    check_level_mapping,
    compare_semantics,
    is_af_compatible,
    split_solve,
    splitting_set_check,
    stratify_report,
)
from alog_lab.errors import AlogError
from alog_lab.grounder import ground_alog
from alog_lab.parser import parse_program
from alog_lab.syntax import GroundProgram
from helpers import P0, P1, P2, P3, P6, P7, P8, lits, sets


def test_stratification_p0():
    p = parse_program(P0)
    levels = aggregate_stratification(p)
    assert levels is not None
    assert levels["enrolled"] < levels["need_ta"]
    assert levels["class"] <= levels["need_ta"]
    assert check_level_mapping(p, levels)


@pytest.mark.parametrize("text", [P1, P6])
def test_unstratified(text):
    assert aggregate_stratification(parse_program(text)) is None


def test_stratification_cohead_and_negation():
    p = parse_program("a or b :- not c. c :- count{X:d(X)} > 0. d(1). e :- count{X:d(X)} > 0, not a.")
    levels = aggregate_stratification(p)
    assert levels["a"] == levels["b"]
    assert levels["d"] < levels["c"] and levels["d"] < levels["e"]
    assert check_level_mapping(p, levels)
    assert not check_level_mapping(p, {k: 0 for k in levels})


def test_af_compatible():
    assert is_af_compatible(parse_program(P2)) == (True, [])
    ok, why = is_af_compatible(parse_program("q :- min{X:p(X)} > 0. p(1)."))
    assert not ok and "min is partial" in why[0]
    ok, why = is_af_compatible(parse_program("r :- count{X:p(X)} > 1, count{X:q(X)} > 1. p(a). q(a)."))
    assert not ok and any("two aggregate terms" in w for w in why)


def test_af_sum_over_symbols_is_partial():
    assert is_af_compatible(parse_program("q :- sum{X:p(X)} > 0. p(1)."))[0]
    assert not is_af_compatible(parse_program("q :- sum{X:p(X)} > 0. p(a)."))[0]


def test_af_free_variable_conditions():
    ok, why = is_af_compatible(parse_program("q :- count{X:p(X,Y)} > 0. p(a,b)."))
    assert not ok and any("not in a regular literal" in w for w in why)
    ok, why = is_af_compatible(parse_program(P3))
    assert not ok and any("also occurs outside" in w for w in why)


def test_af_rejects_set_constructs():
    assert not is_af_compatible(parse_program(P8))[0]


def split_pair(t1, t2):
    p1 = ground_alog(parse_program(t1))
    p2 = ground_alog(parse_program(t2)) if t2 else GroundProgram((), frozenset())
    consts = p1.constants | p2.constants
    return GroundProgram(p1.rules, consts), GroundProgram(p2.rules, consts)


def test_split_solve():
    p1, p2 = split_pair("p(a).", "q :- count{X:p(X)} = 1.")
    assert splitting_set_check(p1, p2, lits("p(a)"))
    assert split_solve(p1, p2, lits("p(a)")) == sets("p(a) q")
    union = GroundProgram(p1.rules + p2.rules, p1.constants)
    assert split_solve(p1, p2, lits("p(a)")) == enumerate_answer_sets(union)
    # padding with unrelated literals keeps the split valid
    assert split_solve(p1, p2, lits("p(a) z")) == sets("p(a) q")


def test_split_implicit_occurrence():
    p1, p2 = split_pair("r :- count{X:p(X)} = 0. s(a).", "p(a).")
    assert not splitting_set_check(p1, p2, lits("r s(a)"))
    with pytest.raises(AlogError):
        split_solve(p1, p2, lits("r s(a)"))
    # the second constant makes p(c) an implicit occurrence missing from S
    p1, p2 = split_pair("r :- count{X:p(X)} = 0. p(b).", "s(c).")
    assert not splitting_set_check(p1, p2, lits("r p(b)"))


def test_split_empty_top():
    p1, p2 = split_pair("p :- not q. q :- not p.", "")
    assert split_solve(p1, p2, lits("p q")) == enumerate_answer_sets(p1) == sets("p", "q")


def test_compare_p6():
    rep = compare_semantics(parse_program(P6), int_range=(0, 1))
    assert rep.alog == set() and rep.slog == set()
    assert rep.flog == sets("p(0) p(1)")
    assert rep.inclusion_af and rep.inclusion_as and not rep.equal_af
    assert rep.witnesses() == {"flog_not_alog": [["p(0)", "p(1)"]], "flog_not_slog": [["p(0)", "p(1)"]]}


def test_compare_p7():
    rep = compare_semantics(parse_program(P7))
    assert rep.alog == sets("q")
    assert rep.slog == sets("q", "p(a) p(b)")
    assert rep.inclusion_as and not rep.equal_as
    data = rep.to_json()
    assert data["schema"] == "alog-lab/1"
    assert data["alog"] == [["q"]]
    assert data["slog"] == [["q"], ["p(a)", "p(b)"]]


def test_compare_stratified():
    rep = compare_semantics(parse_program(P0))
    assert rep.equal_all


def test_compare_skips_engines_outside_fragment():
    rep = compare_semantics(parse_program("a or b. c :- count{X:d(X)} > 0. d(1) :- a."))
    assert rep.slog is None and "slog" in rep.skipped
    assert rep.equal_as is None and rep.equal_all is None
    assert rep.equal_af


def test_stratify_report():
    rep = stratify_report(parse_program(P1))
    assert rep["stratified"] is False and rep["levels"] is None
    assert rep["af_compatible"] is True
