"""Answer sets of ground programs under the vicious-circle semantics.

The pipeline for checking a candidate ``S`` is::

    subset_intro_reduct -> set_atom_reduct -> aggregate_reduct -> gl_reduct
        -> is_minimal_model

Each stage removes one construct.  :func:`enumerate_answer_sets` is the
brute-force oracle used to validate everything else.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .errors import CapExceeded, FragmentError, GroundingError
from .syntax import (
    AggregateAtom,
    ELiteral,
    GroundProgram,
    GroundSet,
    Literal,
    Rule,
    SetAtom,
    SetName,
    SubsetHead,
    TruthValue,
    compare,
    constant_key,
    literal_key,
    match,
    positive_form,
)

T, F, U = TruthValue.TRUE, TruthValue.FALSE, TruthValue.UNDEFINED


@dataclass(frozen=True)
class Caps:
    """Size limits for the exhaustive searches."""

    max_minimality_atoms: int = 20
    max_completion_atoms: int = 16
    max_candidates: int = 2**20

    def __post_init__(self):
        if min(self.max_minimality_atoms, self.max_completion_atoms, self.max_candidates) <= 0:
            raise ValueError("caps must be positive")


DEFAULT_CAPS = Caps()


# aggregate functions


def apply_aggregate(func: str, elements: Iterable) -> Optional[int]:
    """Value of ``func`` on a finite set of tuples, or None where undefined.

    ``count`` is total; ``sum`` needs integer elements (sum of the empty set
    is 0); ``min``/``max`` need a nonempty set of integers.
    """
    values = {e if isinstance(e, tuple) else (e,) for e in elements}
    if func == "count":
        return len(values)
    if func not in ("sum", "min", "max"):
        raise ValueError(f"unknown aggregate function {func!r}")
    ints = []
    for tup in values:
        if len(tup) != 1 or not isinstance(tup[0], int):
            return None
        ints.append(tup[0])
    if func == "sum":
        return sum(ints)
    if not ints:
        return None
    return min(ints) if func == "min" else max(ints)


# extents


@lru_cache(maxsize=512)
def _index(s: frozenset) -> dict:
    idx: dict = {}
    for lit in s:
        idx.setdefault((lit.pred, lit.neg, len(lit.args)), []).append(lit)
    for v in idx.values():
        v.sort(key=literal_key)
    return idx


def set_name_bindings(sn: SetName, s: frozenset) -> Iterator[dict]:
    """Bindings of the bound variables whose condition instance holds in ``s``."""
    lits = sn.literals
    comps = sn.comparisons
    idx = _index(frozenset(s))

    def rec(i: int, binding: dict):
        if i == len(lits):
            if all(c.holds(binding) for c in comps):
                yield binding
            return
        pat = lits[i]
        for cand in idx.get((pat.pred, pat.neg, len(pat.args)), ()):
            nb = match(pat, cand, binding)
            if nb is not None:
                yield from rec(i + 1, nb)

    yield from rec(0, {})


def extent(sn: SetName, s: frozenset) -> frozenset:
    """``{c : cond|c holds in s}`` as a set of constant tuples."""
    return frozenset(tuple(b[v] for v in sn.bound) for b in set_name_bindings(sn, s))


def ground_set_extent(gs: GroundSet, s) -> frozenset:
    return frozenset(tup for tup, conj in gs.elements if all(l in s for l in conj))


def reduct_literals(sn: SetName, s: frozenset) -> list[Literal]:
    """Instances of the condition whose every literal is in ``s``."""
    out = set()
    for b in set_name_bindings(sn, s):
        for lit in sn.literals:
            out.add(lit.substitute(b))
    return sorted(out, key=literal_key)


def base_literals(sn: SetName, constants) -> set[Literal]:
    """Every ground instance (over ``constants``) of the condition's literals."""
    ordered = sorted(constants, key=constant_key)
    variables = sorted(sn.variables())
    out = set()
    for values in itertools.product(ordered, repeat=len(variables)):
        b = dict(zip(variables, values))
        if all(c.holds(b) for c in sn.comparisons):
            out.update(lit.substitute(b) for lit in sn.literals)
    return out


# truth


def truth_value(a: AggregateAtom, s) -> TruthValue:
    if a.neg:
        return truth_value(positive_form(a), s)
    s = frozenset(s)
    if isinstance(a.set, GroundSet):
        ext = ground_set_extent(a.set, s)
    else:
        if not a.set.is_ground():
            raise GroundingError(f"aggregate atom {a} is not ground")
        ext = extent(a.set, s)
    value = apply_aggregate(a.func, ext)
    if value is None:
        return U
    return T if compare(value, a.rel, a.guard) else F


def set_atom_truth(a: SetAtom, s) -> bool:
    s = frozenset(s)
    return _set_relation(extent(a.lhs, s), a.rel, extent(a.rhs, s))


def _set_relation(lhs: frozenset, rel: str, rhs: frozenset) -> bool:
    if rel == "=":
        return lhs == rhs
    if rel == "<=":
        return lhs <= rhs
    if rel == "<":
        return lhs < rhs
    raise ValueError(f"unknown set relation {rel!r}")


def subset_head_extent(h: SubsetHead, s) -> frozenset:
    return frozenset(
        l.args for l in s if l.pred == h.pred and not l.neg and len(l.args) == h.arity
    )


def subset_head_truth(h: SubsetHead, s) -> bool:
    s = frozenset(s)
    return _set_relation(subset_head_extent(h, s), h.rel, extent(h.rhs, s))


def eliteral_truth(e: ELiteral, s) -> TruthValue:
    a = e.atom
    if isinstance(a, Literal):
        held = a in s
        return T if held != e.naf else F
    if isinstance(a, AggregateAtom):
        tv = truth_value(a, s)
        if not e.naf:
            return tv
        return F if tv is T else T
    if e.naf:
        raise FragmentError("set atoms cannot be default-negated")
    return T if set_atom_truth(a, s) else F


def body_true(r: Rule, s) -> bool:
    return all(eliteral_truth(e, s) is T for e in r.body)


def head_true(r: Rule, s) -> bool:
    if isinstance(r.head, SubsetHead):
        return subset_head_truth(r.head, s)
    return any(l in s for l in r.head)


def satisfies(program: Iterable[Rule], s) -> bool:
    """``s`` satisfies every rule: head true or body not true."""
    s = frozenset(s)
    return all(head_true(r, s) or not body_true(r, s) for r in program)


def is_consistent(s) -> bool:
    return not any(l.neg and l.complement() in s for l in s)


# reducts


def _require_ground(r: Rule):
    if not r.is_ground():
        raise GroundingError(f"rule is not ground: {r}")


def _append_unique(body: list, lits: Iterable[Literal]):
    for l in lits:
        e = ELiteral(l)
        if e not in body:
            body.append(e)


def aggregate_reduct(program: GroundProgram, s) -> GroundProgram:
    """Remove aggregates relative to ``s``, following the five reduct clauses."""
    s = frozenset(s)
    out = []
    for r in program.rules:
        _require_ground(r)
        if isinstance(r.head, SubsetHead) or any(e.is_set_atom for e in r.body):
            raise FragmentError(f"aggregate_reduct expects no set constructs: {r}")
        body: list[ELiteral] = []
        dropped = False
        for e in r.body:
            if not e.is_aggregate:
                if e not in body:
                    body.append(e)
                continue
            a = e.atom
            tv = truth_value(a, s)
            if not e.naf:
                # clause 1
                if tv is not T:
                    dropped = True
                    break
                atom = positive_form(a) if a.neg else a  # clause 4
            else:
                if tv is T:  # clause 1: `not A` is false
                    dropped = True
                    break
                if tv is U:  # clause 2
                    continue
                # clause 3, with double negation removed, then clause 4
                negated = AggregateAtom(a.func, a.set, a.rel, a.guard, not a.neg)
                atom = positive_form(negated) if negated.neg else negated
            _append_unique(body, reduct_literals(atom.set, s))  # clause 5
        if not dropped:
            out.append(Rule(r.head, tuple(body), r.span))
    return program.with_rules(out)


def set_atom_reduct(program: GroundProgram, s) -> GroundProgram:
    """Drop rules with an untrue set atom, expand the others to literal sets."""
    s = frozenset(s)
    out = []
    for r in program.rules:
        _require_ground(r)
        if not any(e.is_set_atom for e in r.body):
            out.append(r)
            continue
        body: list[ELiteral] = []
        keep = True
        for e in r.body:
            if not e.is_set_atom:
                if e not in body:
                    body.append(e)
                continue
            if e.naf:
                raise FragmentError("set atoms cannot be default-negated")
            if not set_atom_truth(e.atom, s):
                keep = False
                break
            for side in (e.atom.lhs, e.atom.rhs):
                lits = base_literals(side, program.constants) & s
                _append_unique(body, sorted(lits, key=literal_key))
        if keep:
            out.append(Rule(r.head, tuple(body), r.span))
    return program.with_rules(out)


def subset_intro_reduct(program: GroundProgram, s) -> GroundProgram:
    """Turn each subset introduction into a constraint or into plain rules."""
    s = frozenset(s)
    out = []
    for r in program.rules:
        _require_ground(r)
        if not isinstance(r.head, SubsetHead):
            out.append(r)
            continue
        h = r.head
        if not subset_head_truth(h, s):
            out.append(Rule((), r.body, r.span))
            continue
        for args in sorted(subset_head_extent(h, s), key=lambda t: [constant_key(c) for c in t]):
            out.append(Rule((Literal(h.pred, args),), r.body, r.span))
    return program.with_rules(out)


def gl_reduct(program: GroundProgram, s) -> GroundProgram:
    """Classical reduct of an aggregate-free program."""
    s = frozenset(s)
    out = []
    for r in program.rules:
        if isinstance(r.head, SubsetHead) or not all(e.is_regular for e in r.body):
            raise FragmentError(f"gl_reduct expects an aggregate-free program: {r}")
        if any(e.naf and e.atom in s for e in r.body):
            continue
        out.append(Rule(r.head, tuple(e for e in r.body if not e.naf), r.span))
    return program.with_rules(out)


# minimality


def is_minimal_model(s, program: Iterable[Rule], max_atoms: int = 20) -> bool:
    """``s`` is a consistent model of the positive program and no proper subset is."""
    s = frozenset(s)
    rules = list(program)
    for r in rules:
        if not all(e.is_regular and not e.naf for e in r.body) or isinstance(r.head, SubsetHead):
            raise FragmentError(f"is_minimal_model expects a positive program: {r}")
    if not is_consistent(s):
        return False
    relevant = []
    for r in rules:
        body = frozenset(e.atom for e in r.body)
        if body <= s:
            if not any(h in s for h in r.head):
                return False
            relevant.append((tuple(h for h in r.head if h in s), body))
    if all(len(h) <= 1 for h, _ in relevant):
        return _least_model(relevant) == s
    if len(s) > max_atoms:
        raise CapExceeded("minimality check atoms", len(s), max_atoms)
    return not _has_smaller_model(sorted(s, key=literal_key), relevant)


def _least_model(rules) -> frozenset:
    model: set = set()
    changed = True
    while changed:
        changed = False
        for head, body in rules:
            if head and head[0] not in model and body <= model:
                model.add(head[0])
                changed = True
    return frozenset(model)


def _has_smaller_model(atoms: list, rules) -> bool:
    """Backtracking search for a model that omits at least one atom."""
    position = {a: i for i, a in enumerate(atoms)}
    # a rule is decided once every atom it mentions is assigned
    watch = [max((position[x] for x in body | set(head)), default=-1) for head, body in rules]
    by_last: dict[int, list] = {}
    for (head, body), last in zip(rules, watch):
        by_last.setdefault(last, []).append((head, body))
    if any(not head for head, _ in by_last.get(-1, ())):
        return False
    chosen: set = set()

    def ok(i: int) -> bool:
        for head, body in by_last.get(i, ()):
            if body <= chosen and not any(h in chosen for h in head):
                return False
        return True

    def rec(i: int, dropped: bool) -> bool:
        if i == len(atoms):
            return dropped
        a = atoms[i]
        if ok(i) and rec(i + 1, True):
            return True
        chosen.add(a)
        try:
            return ok(i) and rec(i + 1, dropped)
        finally:
            chosen.discard(a)

    return rec(0, False)


# answer sets


def is_answer_set(program: GroundProgram, s, caps: Caps = DEFAULT_CAPS) -> bool:
    s = frozenset(s)
    if not is_consistent(s):
        return False
    reduct = subset_intro_reduct(program, s)
    reduct = set_atom_reduct(reduct, s)
    reduct = aggregate_reduct(reduct, s)
    reduct = gl_reduct(reduct, s)
    return is_minimal_model(s, reduct.rules, caps.max_minimality_atoms)


def candidate_universe(program: GroundProgram) -> list[Literal]:
    """Head literals, closed under subset introductions over their right-hand sides."""
    universe: set = set()
    for r in program.rules:
        universe.update(r.head_literals)
    intros = [r.head for r in program.rules if isinstance(r.head, SubsetHead)]
    changed = bool(intros)
    while changed:
        changed = False
        frozen = frozenset(universe)
        for h in intros:
            for b in set_name_bindings(h.rhs, frozen):
                lit = Literal(h.pred, tuple(b[v] for v in h.rhs.bound))
                if lit not in universe:
                    universe.add(lit)
                    changed = True
    return sorted(universe, key=literal_key)


def forced_literals(program: GroundProgram) -> frozenset:
    """Facts: every answer set satisfies them, so they are in every answer set."""
    return frozenset(
        r.head[0]
        for r in program.rules
        if not r.body and not isinstance(r.head, SubsetHead) and len(r.head) == 1
    )


def iter_candidates(universe: list, forced: frozenset, max_candidates: int):
    free = [l for l in universe if l not in forced]
    total = 2 ** len(free)
    if total > max_candidates:
        raise CapExceeded("candidate answer sets", total, max_candidates)
    for k in range(len(free) + 1):
        for combo in itertools.combinations(free, k):
            yield forced | frozenset(combo)


def enumerate_answer_sets(
    program: GroundProgram, caps: Caps = DEFAULT_CAPS, prune: bool = True
) -> set[frozenset]:
    """All answer sets, by checking every subset of the candidate universe.

    ``prune`` skips candidates that miss a fact or violate a rule before running
    the reduct pipeline.  Property tests that check rule satisfaction itself
    turn it off.
    """
    universe = candidate_universe(program)
    forced = forced_literals(program) if prune else frozenset()
    rules = program.rules
    found = set()
    for s in iter_candidates(universe, forced, caps.max_candidates):
        if not is_consistent(s):
            continue
        if prune and not satisfies(rules, s):
            continue
        if is_answer_set(program, s, caps):
            found.add(s)
    return found


def supports(r: Rule, lit: Literal, s) -> bool:
    """``r`` supports ``lit`` in ``s`` (subset introductions included)."""
    if not body_true(r, s):
        return False
    if isinstance(r.head, SubsetHead):
        h = r.head
        if lit.pred != h.pred or lit.neg or lit.arity != h.arity:
            return False
        return lit.args in extent(h.rhs, frozenset(s))
    return lit in r.head and [h for h in r.head if h in s] == [lit]
