"""Backtracking solver with aggregate-aware propagation.

Partial interpretations are frozensets of regular e-atoms (``ELiteral`` over
plain atoms, ``naf=True`` meaning ``not p``).  ``TA`` and ``FA`` hold aggregate
e-atoms that must end up true and false.  Propagation applies four inference
rules until nothing changes; the search guesses the first undecided atom in
program-occurrence order, true before false.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .alog import DEFAULT_CAPS, Caps, base_literals, is_answer_set, truth_value
from .errors import CapExceeded, FragmentError
from .syntax import AggregateAtom, ELiteral, GroundProgram, Literal, Rule, SetName, TruthValue, literal_key

PartialInterpretation = frozenset  # of ELiteral over regular atoms


def check_asolver_fragment(program: GroundProgram):
    for r in program.rules:
        if r.is_subset_intro:
            raise FragmentError(f"subset introduction is not handled by the solver: {r}")
        if any(l.neg for l in r.head):
            raise FragmentError(f"classical negation is not handled by the solver: {r}")
        for e in r.body:
            a = e.atom
            if e.is_set_atom:
                raise FragmentError(f"set atoms are not handled by the solver: {r}")
            if isinstance(a, Literal) and a.neg:
                raise FragmentError(f"classical negation is not handled by the solver: {r}")
            if isinstance(a, AggregateAtom):
                if a.neg or not isinstance(a.set, SetName) or any(l.neg for l in a.set.literals):
                    raise FragmentError(f"classical negation is not handled by the solver: {r}")
        if not r.is_ground():
            raise FragmentError(f"rule is not ground: {r}")


def contrary(e: ELiteral) -> ELiteral:
    return ELiteral(e.atom, not e.naf)


def atoms_of(i) -> frozenset:
    return frozenset(e.atom for e in i if not e.naf)


def is_consistent_partial(i) -> bool:
    return not any(contrary(e) in i for e in i if e.is_regular)


class Context:
    """Per-program data: atom universe in occurrence order, head index, bases."""

    def __init__(self, program: GroundProgram, caps: Caps = DEFAULT_CAPS):
        check_asolver_fragment(program)
        self.program = program
        self.caps = caps
        self._bases: dict = {}
        order: dict = {}
        self.heads: dict = {}
        for r in program.rules:
            for h in r.head:
                order.setdefault(h, None)
                self.heads.setdefault(h, []).append(r)
            for e in r.body:
                if e.is_regular:
                    order.setdefault(e.atom, None)
                else:
                    for l in sorted(self.base(e.atom), key=literal_key):
                        order.setdefault(l, None)
        self.atoms = list(order)

    def base(self, agg: AggregateAtom) -> frozenset:
        b = self._bases.get(agg)
        if b is None:
            b = frozenset(base_literals(agg.set, self.program.constants))
            self._bases[agg] = b
        return b

    def relevant(self, e: ELiteral) -> frozenset:
        return frozenset([e.atom]) if e.is_regular else self.base(e.atom)


def _true_in_total(e: ELiteral, s) -> bool:
    if e.is_regular:
        held = e.atom in s
    else:
        held = truth_value(e.atom, s) is TruthValue.TRUE
    return held != e.naf


def _completions(ctx: Context, es: Iterable[ELiteral], i) -> Iterator[frozenset]:
    """Every total extension of ``i`` over the atoms the e-atoms depend on."""
    true_atoms = atoms_of(i)
    decided = {e.atom for e in i}
    undecided = set()
    for e in es:
        undecided |= ctx.relevant(e) - decided
    undecided = sorted(undecided, key=literal_key)
    if len(undecided) > ctx.caps.max_completion_atoms:
        raise CapExceeded("completion atoms", len(undecided), ctx.caps.max_completion_atoms)
    for k in range(len(undecided) + 1):
        for extra in itertools.combinations(undecided, k):
            yield true_atoms.union(extra)


def strongly_satisfied(ctx: Context, e: ELiteral, i) -> bool:
    if e.is_regular:
        return e in i
    return all(_true_in_total(e, s) for s in _completions(ctx, [e], i))


def strongly_refuted(ctx: Context, e: ELiteral, i) -> bool:
    if e.is_regular:
        return contrary(e) in i
    return not any(_true_in_total(e, s) for s in _completions(ctx, [e], i))


def set_strongly_satisfied(ctx: Context, es, i) -> bool:
    return all(strongly_satisfied(ctx, e, i) for e in es)


def set_strongly_refuted(ctx: Context, es, i) -> bool:
    """No extension of ``i`` makes every e-atom of ``es`` true at once."""
    es = list(es)
    if any(e.is_regular and contrary(e) in i for e in es):
        return True
    return not any(all(_true_in_total(e, s) for e in es) for s in _completions(ctx, es, i))


def _is_true(e: ELiteral, i) -> bool:
    return e in i


def _is_false(e: ELiteral, i) -> bool:
    return contrary(e) in i


def _undecided(e: ELiteral, i) -> bool:
    return not _is_true(e, i) and not _is_false(e, i)


def icons(rule_no: int, i, ctx: Context, r: Optional[Rule], fa=frozenset()):
    """Additions ``(dI, dTA, dFA)`` licensed by inference rule ``rule_no`` on ``r``.

    Each addition is returned in derivation order as a list.
    """
    d_i: list = []
    d_ta: list = []
    d_fa: list = []
    if rule_no == 1:
        if set_strongly_satisfied(ctx, r.body, i):
            for p in r.head:
                pos = ELiteral(p)
                if pos not in i and all(_is_false(ELiteral(q), i) for q in r.head if q != p):
                    d_i.append(pos)
    elif rule_no == 2:
        for p in r.head:
            if ELiteral(p) in i and len(ctx.heads.get(p, ())) == 1:
                for q in r.head:
                    if q != p:
                        d_i.append(ELiteral(q, True))
                for e in r.body:
                    (d_i if e.is_regular else d_ta).append(e)
    elif rule_no == 3:
        if all(_is_false(ELiteral(h), i) for h in r.head):
            open_ = [
                e
                for e in r.body
                if (e.is_regular and _undecided(e, i)) or (e.is_aggregate and e not in fa)
            ]
            if len(open_) == 1:
                l = open_[0]
                rest = [e for e in r.body if e != l]
                if set_strongly_satisfied(ctx, rest, i):
                    (d_i if l.is_regular else d_fa).append(contrary(l) if l.is_regular else l)
    elif rule_no == 4:
        for p in ctx.atoms:
            neg = ELiteral(p, True)
            if neg in i:
                continue
            if all(set_strongly_refuted(ctx, q.body, i) for q in ctx.heads.get(p, ())):
                d_i.append(neg)
    else:
        raise ValueError(f"no inference rule {rule_no}")
    return d_i, d_ta, d_fa


@dataclass(frozen=True)
class ConsResult:
    i: frozenset
    ta: frozenset
    fa: frozenset
    ok: bool
    reasons: tuple = ()


def compatible_ta(ctx: Context, i, ta) -> bool:
    return not ta or not set_strongly_refuted(ctx, ta, i)


def compatible_fa(ctx: Context, i, fa) -> bool:
    return not any(strongly_satisfied(ctx, e, i) for e in fa)


def cons(i0, ta0, fa0, ctx: Context, rng: Optional[random.Random] = None, trace: Optional[list] = None) -> ConsResult:
    """Apply the inference rules in rounds until a whole round adds nothing.

    A round visits rules 1 to 4 (shuffled when ``rng`` is given) and, for each,
    every program rule; rule 4 ignores the program rule and runs once.
    """
    i, ta, fa = set(i0), set(ta0), set(fa0)
    rules = list(ctx.program.rules)
    changed = True
    while changed:
        changed = False
        order = [1, 2, 3, 4]
        if rng is not None:
            rng.shuffle(order)
            rules = rules[:]
            rng.shuffle(rules)
        for n in order:
            targets = [None] if n == 4 else rules
            for r in targets:
                d_i, d_ta, d_fa = icons(n, frozenset(i), ctx, r, frozenset(fa))
                for e in d_i:
                    if e not in i:
                        i.add(e)
                        changed = True
                        _log(trace, f"cons: {e} [rule {n}]")
                for e in d_ta:
                    if e not in ta:
                        ta.add(e)
                        changed = True
                        _log(trace, f"cons: TA += {e} [rule {n}]")
                for e in d_fa:
                    if e not in fa:
                        fa.add(e)
                        changed = True
                        _log(trace, f"cons: FA += {e} [rule {n}]")
    i, ta, fa = frozenset(i), frozenset(ta), frozenset(fa)
    reasons = []
    if not is_consistent_partial(i):
        reasons.append("inconsistent")
    if not compatible_ta(ctx, i, ta):
        reasons.append("TA incompatible")
    if not compatible_fa(ctx, i, fa):
        reasons.append("FA incompatible")
    if not reasons and _violated_rule(ctx, i):
        reasons.append("rule violated")
    if reasons:
        _log(trace, f"cons: fail ({'; '.join(reasons)})")
        return ConsResult(frozenset(i0), frozenset(ta0), frozenset(fa0), False, tuple(reasons))
    return ConsResult(i, ta, fa, True)


def _violated_rule(ctx: Context, i) -> bool:
    """Some rule has a false head and a strongly satisfied body.

    The four inference rules stay silent on such a rule once its last premise
    is decided, which would make success depend on the order they fire in.
    """
    for r in ctx.program.rules:
        if all(_is_false(ELiteral(h), i) for h in r.head) and set_strongly_satisfied(ctx, r.body, i):
            return True
    return False


def _log(trace, line: str):
    if trace is not None:
        trace.append(line)


def is_answer_set_check(i, program: GroundProgram, caps: Caps = DEFAULT_CAPS) -> bool:
    return is_answer_set(program, atoms_of(i), caps)


def _first_undecided(ctx: Context, i):
    decided = {e.atom for e in i}
    for p in ctx.atoms:
        if p not in decided:
            return p
    return None


def iter_solutions(
    program: GroundProgram,
    i0=frozenset(),
    ta0=frozenset(),
    fa0=frozenset(),
    caps: Caps = DEFAULT_CAPS,
    trace: Optional[list] = None,
    rng: Optional[random.Random] = None,
) -> Iterator[frozenset]:
    """Answer sets compatible with the seeds, in search order."""
    ctx = Context(program, caps)

    def search(i, ta, fa):
        res = cons(i, ta, fa, ctx, rng, trace)
        if not res.ok:
            return
        p = _first_undecided(ctx, res.i)
        if p is None:
            ok = is_answer_set_check(res.i, program, caps)
            atoms = sorted(atoms_of(res.i), key=literal_key)
            _log(trace, f"is_answer_set {{{', '.join(map(str, atoms))}}}: {str(ok).lower()}")
            if ok:
                yield atoms_of(res.i)
            return
        _log(trace, f"guess {p}")
        yield from search(res.i | {ELiteral(p)}, res.ta, res.fa)
        _log(trace, f"backtrack not {p}")
        yield from search(res.i | {ELiteral(p, True)}, res.ta, res.fa)

    yield from search(frozenset(i0), frozenset(ta0), frozenset(fa0))


def solve(program: GroundProgram, i0=frozenset(), ta0=frozenset(), fa0=frozenset(), caps: Caps = DEFAULT_CAPS, trace=None, rng=None):
    """First answer set found by the search, or None."""
    return next(iter_solutions(program, i0, ta0, fa0, caps, trace, rng), None)


def compatible(a, i, ta, fa) -> bool:
    """Atom set ``a`` agrees with ``i`` and makes ``ta`` true and ``fa`` false."""
    a = frozenset(a)
    for e in i:
        if (e.atom in a) == e.naf:
            return False
    return all(_true_in_total(e, a) for e in ta) and not any(_true_in_total(e, a) for e in fa)
