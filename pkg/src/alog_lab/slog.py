"""Answer sets through aggregate solutions and conditional satisfaction.

``S`` is an answer set when it is the least fixpoint of ``K_S^P`` computed
over the negation-stripped reduct.  Aggregate solutions are checked by
trying every completion of the undecided base atoms.
"""

from __future__ import annotations

import itertools

from .alog import DEFAULT_CAPS, Caps, base_literals, iter_candidates, truth_value
from .errors import CapExceeded, FragmentError
from .syntax import AggregateAtom, ELiteral, GroundProgram, Literal, Rule, SetName, TruthValue, literal_key


def check_slog_fragment(program: GroundProgram):
    """Raise :class:`FragmentError` unless every rule fits the fragment."""
    for r in program.rules:
        if r.is_subset_intro or len(r.head) > 1:
            raise FragmentError(f"rules need at most one head atom here: {r}")
        if any(l.neg for l in r.head):
            raise FragmentError(f"classical negation is outside this fragment: {r}")
        for e in r.body:
            a = e.atom
            if e.is_set_atom:
                raise FragmentError(f"set atoms are outside this fragment: {r}")
            if isinstance(a, Literal) and a.neg:
                raise FragmentError(f"classical negation is outside this fragment: {r}")
            if isinstance(a, AggregateAtom):
                if e.naf or a.neg:
                    raise FragmentError(f"negated aggregates are outside this fragment: {r}")
                if a.func in ("min", "max"):
                    raise FragmentError(f"{a.func} may be undefined and is rejected here: {r}")
                if not isinstance(a.set, SetName) or any(l.neg for l in a.set.literals):
                    raise FragmentError(f"unsupported aggregate in this fragment: {r}")


def base(agg: AggregateAtom, constants) -> frozenset:
    return frozenset(base_literals(agg.set, constants))


def ta(agg: AggregateAtom, s, constants) -> frozenset:
    return base(agg, constants) & frozenset(s)


def fa(agg: AggregateAtom, s, constants) -> frozenset:
    return base(agg, constants) - frozenset(s)


def is_aggregate_solution(agg: AggregateAtom, s1, s2, constants, max_atoms: int = 16) -> bool:
    """Every ``S`` with ``s1 <= S`` and ``S & s2 == {}`` over the base satisfies ``agg``."""
    b = base(agg, constants)
    s1, s2 = frozenset(s1), frozenset(s2)
    if not (s1 <= b and s2 <= b) or s1 & s2:
        raise ValueError("an aggregate solution is a pair of disjoint subsets of the base")
    free = sorted(b - s1 - s2, key=literal_key)
    if len(free) > max_atoms:
        raise CapExceeded("aggregate completion atoms", len(free), max_atoms)
    for k in range(len(free) + 1):
        for extra in itertools.combinations(free, k):
            if truth_value(agg, s1.union(extra)) is not TruthValue.TRUE:
                return False
    return True


def slog_reduct(program: GroundProgram, s) -> GroundProgram:
    s = frozenset(s)
    out = []
    for r in program.rules:
        if any(e.naf and e.is_regular and e.atom in s for e in r.body):
            continue
        out.append(Rule(r.head, tuple(e for e in r.body if not e.naf), r.span))
    return program.with_rules(out)


def cond_sat(i, s, e, constants, max_atoms: int = 16) -> bool:
    """``(I, S)`` conditionally satisfies the body element."""
    atom = e.atom if isinstance(e, ELiteral) else e
    if isinstance(atom, Literal):
        return atom in i
    b = base(atom, constants)
    s = frozenset(s)
    return is_aggregate_solution(atom, frozenset(i) & s & b, b - s, constants, max_atoms)


def k_operator(reduct: GroundProgram, s, i, constants, max_atoms: int = 16) -> frozenset:
    """Heads of reduct rules whose bodies ``(I, S)`` conditionally satisfies."""
    out = set()
    for r in reduct.rules:
        if r.head and all(cond_sat(i, s, e, constants, max_atoms) for e in r.body):
            out.add(r.head[0])
    return frozenset(out)


def lfp_k(program: GroundProgram, s, caps: Caps = DEFAULT_CAPS) -> frozenset:
    reduct = slog_reduct(program, s)
    i: frozenset = frozenset()
    while True:
        nxt = k_operator(reduct, s, i, program.constants, caps.max_completion_atoms)
        if nxt == i:
            return i
        i = nxt


def _violates_constraint(program: GroundProgram, s) -> bool:
    for r in slog_reduct(program, s).rules:
        if r.head:
            continue
        if all(truth_value(e.atom, s) is TruthValue.TRUE if e.is_aggregate else e.atom in s for e in r.body):
            return True
    return False


def is_answer_set_slog(program: GroundProgram, s, caps: Caps = DEFAULT_CAPS) -> bool:
    """``S = lfp(K_S^P)``; constraints must additionally have a false body in ``S``."""
    check_slog_fragment(program)
    s = frozenset(s)
    return lfp_k(program, s, caps) == s and not _violates_constraint(program, s)


def enumerate_answer_sets_slog(program: GroundProgram, caps: Caps = DEFAULT_CAPS) -> set[frozenset]:
    check_slog_fragment(program)
    universe = sorted({h for r in program.rules for h in r.head}, key=literal_key)
    return {s for s in iter_candidates(universe, frozenset(), caps.max_candidates) if is_answer_set_slog(program, s, caps)}
