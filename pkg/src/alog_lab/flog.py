"""FLP-style answer sets over explicitly grounded programs.

An interpretation ``A`` is an answer set when it is a subset-minimal model of
the rules whose bodies ``A`` satisfies.  Unlike the set-name semantics,
``not f(S) rel n`` only holds when ``f(S)`` is defined.
"""

from __future__ import annotations

from typing import Iterable

from .alog import DEFAULT_CAPS, Caps, apply_aggregate, ground_set_extent, iter_candidates
from .errors import CapExceeded, FragmentError
from .syntax import AggregateAtom, ELiteral, GroundProgram, GroundSet, Literal, Rule, compare, literal_key


def flog_extent(gs: GroundSet, a) -> frozenset:
    return ground_set_extent(gs, frozenset(a))


def _check_rule(r: Rule):
    if r.is_subset_intro or any(l.neg for l in r.head):
        raise FragmentError(f"not an FLP rule: {r}")
    for e in r.body:
        if e.is_set_atom:
            raise FragmentError(f"not an FLP rule: {r}")
        if e.is_aggregate and (e.atom.neg or not isinstance(e.atom.set, GroundSet)):
            raise FragmentError(f"FLP aggregates must range over ground sets: {r}")
        if e.is_regular and e.atom.neg:
            raise FragmentError(f"not an FLP rule: {r}")


def flog_sat(e: ELiteral, a) -> bool:
    atom = e.atom
    if isinstance(atom, Literal):
        return (atom in a) != e.naf
    if not isinstance(atom, AggregateAtom) or not isinstance(atom.set, GroundSet):
        raise FragmentError(f"not an FLP body element: {e}")
    value = apply_aggregate(atom.func, flog_extent(atom.set, a))
    if value is None:
        return False
    return compare(value, atom.rel, atom.guard) != e.naf


def flog_model(rules: Iterable[Rule], a) -> bool:
    return all(any(h in a for h in r.head) or not all(flog_sat(e, a) for e in r.body) for r in rules)


def flog_reduct(program: GroundProgram, a) -> GroundProgram:
    a = frozenset(a)
    return program.with_rules(r for r in program.rules if all(flog_sat(e, a) for e in r.body))


def is_answer_set_flog(program: GroundProgram, a, caps: Caps = DEFAULT_CAPS) -> bool:
    a = frozenset(a)
    for r in program.rules:
        _check_rule(r)
    if any(l.neg for l in a):
        return False
    reduct = flog_reduct(program, a).rules
    if not flog_model(reduct, a):
        return False
    if len(a) > caps.max_minimality_atoms:
        raise CapExceeded("minimality check atoms", len(a), caps.max_minimality_atoms)
    atoms = sorted(a, key=literal_key)
    # every proper subset, smallest first
    for mask in range(2 ** len(atoms) - 1):
        sub = frozenset(x for i, x in enumerate(atoms) if mask >> i & 1)
        if flog_model(reduct, sub):
            return False
    return True


def enumerate_answer_sets_flog(program: GroundProgram, caps: Caps = DEFAULT_CAPS) -> set[frozenset]:
    for r in program.rules:
        _check_rule(r)
    universe = sorted({h for r in program.rules for h in r.head}, key=literal_key)
    found = set()
    for a in iter_candidates(universe, frozenset(), caps.max_candidates):
        if flog_model(program.rules, a) and is_answer_set_flog(program, a, caps):
            found.add(a)
    return found
