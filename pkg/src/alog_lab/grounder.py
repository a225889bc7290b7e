"""Grounding under the set-name discipline and under the FLP ground-set discipline.

Both grounders substitute variables by every constant of the program (plus an
optional integer range).  The set-name grounder replaces only free variables
and keeps set names intact.  The FLP grounder first replaces global variables
and then expands each remaining set name into an explicit :class:`GroundSet`.
"""

from __future__ import annotations

import itertools
import logging
from typing import Iterable, Optional

from .errors import FragmentError, GroundingError, UnsafeRuleError
from .syntax import (
    AggregateAtom,
    Arith,
    ELiteral,
    GroundProgram,
    GroundSet,
    Literal,
    Program,
    Rule,
    SetAtom,
    SetName,
    SubsetHead,
    Var,
    constant_key,
    subst_term,
    term_vars,
)

log = logging.getLogger(__name__)

IntRange = Optional[tuple]


def herbrand_constants(program: Program, int_range: IntRange = None) -> frozenset:
    """Object constants of the program plus the declared integer interval.

    Only bare constant arguments count; integers that appear inside arithmetic
    or as aggregate guards are numbers, not objects.
    """
    out: set = set()

    def visit(t):
        if isinstance(t, (int, str)):
            out.add(t)

    for r in program.rules:
        for lit in _all_literals(r):
            for a in lit.args:
                visit(a)
        for s in r.set_names():
            for c in s.comparisons:
                visit(c.left)
                visit(c.right)
    if int_range is not None:
        lo, hi = int_range
        if lo > hi:
            raise ValueError(f"empty integer range {lo}..{hi}")
        out.update(range(lo, hi + 1))
    return frozenset(out)


def _all_literals(r: Rule):
    yield from r.head_literals
    for e in r.body:
        if isinstance(e.atom, Literal):
            yield e.atom
    for s in r.set_names():
        yield from s.literals


def _safe_vars(r: Rule) -> set[str]:
    out: set[str] = set()
    for e in r.body:
        if isinstance(e.atom, Literal) and not e.naf:
            out |= {a.name for a in e.atom.args if isinstance(a, Var)}
    return out


def _check_safe(r: Rule, variables: Iterable[str]):
    safe = _safe_vars(r)
    for v in sorted(variables):
        if v not in safe:
            raise UnsafeRuleError(v, str(r), r.span)


def _bindings(variables: list[str], constants: list):
    for values in itertools.product(constants, repeat=len(variables)):
        yield dict(zip(variables, values))


def _sorted_constants(constants) -> list:
    return sorted(constants, key=constant_key)


class _OutOfRange(Exception):
    pass


def _ground_literal(lit: Literal, binding, constants) -> Literal:
    out = lit.substitute(binding)
    if not out.is_ground():
        raise GroundingError(f"literal {out} is not ground")
    for before, after in zip(lit.args, out.args):
        if isinstance(before, Arith) and after not in constants:
            raise _OutOfRange(str(out))
    return out


def _ground_set_name(s: SetName, binding) -> SetName:
    out = s.substitute_free(binding)
    for c in out.cond:
        terms = c.args if isinstance(c, Literal) else (c.left, c.right)
        for t in terms:
            if isinstance(t, Arith):
                raise GroundingError(
                    f"arithmetic over bound variables is not supported: {t} in {s}"
                )
    return out


def _ground_guard(guard, binding) -> int:
    g = subst_term(guard, binding)
    if not isinstance(g, int):
        raise GroundingError(f"aggregate guard {guard} does not evaluate to an integer")
    return g


def _instantiate_alog(r: Rule, binding, constants) -> Rule:
    if isinstance(r.head, SubsetHead):
        head: object = SubsetHead(r.head.pred, r.head.rel, _ground_set_name(r.head.rhs, binding))
    else:
        head = tuple(_ground_literal(l, binding, constants) for l in r.head)
    body = []
    for e in r.body:
        a = e.atom
        if isinstance(a, Literal):
            body.append(ELiteral(_ground_literal(a, binding, constants), e.naf))
        elif isinstance(a, AggregateAtom):
            g = AggregateAtom(
                a.func, _ground_set_name(a.set, binding), a.rel, _ground_guard(a.guard, binding), a.neg
            )
            body.append(ELiteral(g, e.naf))
        else:
            s = SetAtom(_ground_set_name(a.lhs, binding), a.rel, _ground_set_name(a.rhs, binding))
            body.append(ELiteral(s, e.naf))
    return Rule(head, tuple(body), r.span)


def ground_alog(program: Program, int_range: IntRange = None, safe: bool = True) -> GroundProgram:
    """Substitute free variables, keep bound ones.

    With ``safe=True`` every free variable must occur in a positive regular
    body literal; with ``safe=False`` unsafe variables simply range over all
    constants.  Rule instances are emitted in source order, substitutions in
    sorted constant order; duplicates are dropped.
    """
    constants = herbrand_constants(program, int_range)
    ordered = _sorted_constants(constants)
    out: list[Rule] = []
    seen: set[Rule] = set()
    for r in program.rules:
        variables = sorted(r.free_vars())
        if safe:
            _check_safe(r, variables)
        for binding in _bindings(variables, ordered):
            try:
                g = _instantiate_alog(r, binding, constants)
            except _OutOfRange as exc:
                log.warning("dropping rule instance: %s leaves the constant range", exc)
                continue
            if g not in seen:
                seen.add(g)
                out.append(g)
    return GroundProgram(tuple(out), constants)


def flog_global_vars(r: Rule) -> set[str]:
    """Variables occurring outside aggregate terms or in more than one of them."""
    outside: set[str] = set()
    for l in r.head_literals:
        outside |= l.variables()
    counts: dict[str, int] = {}
    for e in r.body:
        if isinstance(e.atom, Literal):
            outside |= e.atom.variables()
        elif isinstance(e.atom, AggregateAtom):
            outside |= set(term_vars(e.atom.guard))
            for v in e.atom.set.variables():
                counts[v] = counts.get(v, 0) + 1
    return outside | {v for v, n in counts.items() if n > 1}


def _check_flog_fragment(r: Rule):
    if isinstance(r.head, SubsetHead):
        raise FragmentError(f"subset introduction is not part of the FLP fragment: {r}")
    for l in r.head:
        if l.neg:
            raise FragmentError(f"classical negation is not part of the FLP fragment: {r}")
    for e in r.body:
        a = e.atom
        if isinstance(a, SetAtom):
            raise FragmentError(f"set atoms are not part of the FLP fragment: {r}")
        if isinstance(a, Literal) and a.neg:
            raise FragmentError(f"classical negation is not part of the FLP fragment: {r}")
        if isinstance(a, AggregateAtom):
            if a.neg:
                raise FragmentError(f"classical negation is not part of the FLP fragment: {r}")
            if any(l.neg for l in a.set.literals):
                raise FragmentError(f"classical negation is not part of the FLP fragment: {r}")


def ground_set(s: SetName, binding, ordered_constants) -> GroundSet:
    """Expand ``s`` over every local substitution; ``binding`` fixes the globals."""
    local = sorted(s.variables() - set(binding))
    elements = []
    seen = set()
    for extra in _bindings(local, ordered_constants):
        full = {**binding, **extra}
        if not all(c.holds(full) for c in s.comparisons):
            continue
        tup = tuple(full[v] for v in s.bound)
        conj = tuple(l.substitute(full) for l in s.literals)
        if any(not l.is_ground() for l in conj):
            raise GroundingError(f"arithmetic over local variables is not supported: {s}")
        if (tup, conj) not in seen:
            seen.add((tup, conj))
            elements.append((tup, conj))
    return GroundSet(tuple(elements))


def ground_flog(program: Program, int_range: IntRange = None, safe: bool = True) -> GroundProgram:
    """Two-step FLP grounding: globals first, then each set name to a ground set."""
    constants = herbrand_constants(program, int_range)
    ordered = _sorted_constants(constants)
    out: list[Rule] = []
    seen: set[Rule] = set()
    for r in program.rules:
        _check_flog_fragment(r)
        glob = sorted(flog_global_vars(r))
        if safe:
            _check_safe(r, glob)
        for binding in _bindings(glob, ordered):
            try:
                head = tuple(_ground_literal(l, binding, constants) for l in r.head)
                body = []
                for e in r.body:
                    a = e.atom
                    if isinstance(a, Literal):
                        body.append(ELiteral(_ground_literal(a, binding, constants), e.naf))
                    else:
                        gs = ground_set(a.set, binding, ordered)
                        guard = _ground_guard(a.guard, binding)
                        body.append(ELiteral(AggregateAtom(a.func, gs, a.rel, guard), e.naf))
            except _OutOfRange as exc:
                log.warning("dropping rule instance: %s leaves the constant range", exc)
                continue
            g = Rule(head, tuple(body), r.span)
            if g not in seen:
                seen.add(g)
                out.append(g)
    return GroundProgram(tuple(out), constants)


def as_ground_program(rules: Iterable[Rule], constants: Iterable = ()) -> GroundProgram:
    """Wrap already-ground rules, collecting their constants."""
    rules = tuple(rules)
    consts = set(constants) | herbrand_constants(Program(rules))
    for r in rules:
        if not r.is_ground():
            raise GroundingError(f"rule is not ground: {r}")
    return GroundProgram(rules, frozenset(consts))
