"""Program analyses: aggregate stratification, AF-compatibility, splitting,
and side-by-side comparison of the three semantics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from .alog import DEFAULT_CAPS, Caps, base_literals, enumerate_answer_sets
from .errors import AlogError, CapExceeded, FragmentError
from .flog import enumerate_answer_sets_flog
from .grounder import flog_global_vars, ground_alog, ground_flog, herbrand_constants
from .slog import check_slog_fragment, enumerate_answer_sets_slog
from .syntax import (
    AggregateAtom,
    GroundProgram,
    Literal,
    Occurrence,
    Program,
    Rule,
    SetAtom,
    SubsetHead,
    constant_key,
    literal_occurs_in_rule,
    sorted_literals,
    term_vars,
)

SCHEMA = "alog-lab/1"


# stratification


def _rule_predicates(r: Rule):
    """(head predicates, plain body predicates, predicates under an aggregate or set construct)."""
    heads = {l.pred for l in r.head_literals}
    strict: set = set()
    if isinstance(r.head, SubsetHead):
        heads.add(r.head.pred)
        strict |= {l.pred for l in r.head.rhs.literals}
    body: set = set()
    for e in r.body:
        a = e.atom
        if isinstance(a, Literal):
            body.add(a.pred)
        elif isinstance(a, AggregateAtom):
            if hasattr(a.set, "literals"):
                strict |= {l.pred for l in a.set.literals}
            else:
                strict |= {l.pred for _, conj in a.set.elements for l in conj}
        elif isinstance(a, SetAtom):
            strict |= {l.pred for l in a.lhs.literals + a.rhs.literals}
    return heads, body, strict


def _constraint_graph(program) -> nx.DiGraph:
    """Edge u -> v means level(u) <= level(v); attribute ``strict`` marks <."""
    g = nx.DiGraph()
    for r in program.rules:
        heads, body, strict = _rule_predicates(r)
        g.add_nodes_from(heads | body | strict)
        for h in heads:
            for b in body:
                if not g.has_edge(b, h):
                    g.add_edge(b, h, strict=False)
            for b in strict:
                g.add_edge(b, h, strict=True)
            for h2 in heads:
                if h2 != h and not g.has_edge(h2, h):
                    g.add_edge(h2, h, strict=False)
    return g


def aggregate_stratification(program) -> Optional[dict]:
    """A level mapping witnessing aggregate stratification, or None.

    A strict edge inside a strongly connected component forces level(x) < level(x),
    so no mapping exists; otherwise longest strict-path depth over the
    condensation gives one.
    """
    g = _constraint_graph(program)
    sccs = list(nx.strongly_connected_components(g))
    comp = {n: i for i, c in enumerate(sccs) for n in c}
    for u, v, d in g.edges(data=True):
        if d["strict"] and comp[u] == comp[v]:
            return None
    dag = nx.condensation(g, sccs)
    level = {c: 0 for c in dag.nodes}
    for c in nx.topological_sort(dag):
        for u in dag.nodes[c]["members"]:
            for _, v, d in g.out_edges(u, data=True):
                cv = comp[v]
                if cv != c:
                    level[cv] = max(level[cv], level[c] + (1 if d["strict"] else 0))
    return {p: level[comp[p]] for p in sorted(g.nodes)}


def check_level_mapping(program, mapping: dict) -> bool:
    for r in program.rules:
        heads, body, strict = _rule_predicates(r)
        for h in heads:
            if any(mapping[b] > mapping[h] for b in body):
                return False
            if any(mapping[b] >= mapping[h] for b in strict):
                return False
            if any(mapping[h2] != mapping[h] for h2 in heads):
                return False
    return True


# AF-compatibility


def _aggregates(r: Rule) -> list[AggregateAtom]:
    return [e.atom for e in r.body if isinstance(e.atom, AggregateAtom)]


def _outside_vars(r: Rule) -> set:
    out: set = set()
    for l in r.head_literals:
        out |= l.variables()
    for e in r.body:
        if isinstance(e.atom, Literal):
            out |= e.atom.variables()
    return out


def is_af_compatible(program: Program, int_range=None) -> tuple[bool, list[str]]:
    """Check the compatibility conditions; returns (ok, violation messages).

    Beyond the four listed conditions a bound variable of an aggregate term may
    not occur anywhere else in the rule: the two groundings treat such a
    variable differently, and without this condition the inclusion between the
    semantics fails (``r :- count{X:p(X)} >= 2, q(X).`` is a counterexample).
    """
    violations = []
    all_ints = all(isinstance(c, int) for c in herbrand_constants(program, int_range))
    for n, r in enumerate(program.rules, 1):
        if isinstance(r.head, SubsetHead) or any(isinstance(e.atom, SetAtom) for e in r.body):
            violations.append(f"rule {n}: set constructs are outside both languages")
            continue
        aggs = _aggregates(r)
        glob = flog_global_vars(r)
        outside = _outside_vars(r)
        for a, b in itertools.combinations(aggs, 2):
            shared = set(a.set.bound) & set(b.set.bound)
            if shared:
                violations.append(f"rule {n}: bound variable {sorted(shared)[0]} used in two aggregate terms")
        for a in aggs:
            free = a.set.free_vars()
            for v in sorted(free - glob):
                violations.append(f"rule {n}: local variable {v} is free")
            for v in sorted(free - outside):
                violations.append(f"rule {n}: free variable {v} of an aggregate term is not in a regular literal")
            if a.func in ("min", "max"):
                violations.append(f"rule {n}: {a.func} is partial")
            elif a.func == "sum" and not all_ints:
                violations.append(f"rule {n}: sum is partial over non-integer constants")
            others = set(term_vars(a.guard)) | outside
            for b in aggs:
                if b is not a:
                    others |= b.set.variables()
            for v in sorted(set(a.set.bound) & others):
                violations.append(f"rule {n}: bound variable {v} also occurs outside its aggregate term")
    return (not violations, violations)


# splitting


def occurring_literals(r: Rule, constants) -> set:
    """Literals occurring in a ground rule, explicitly or through a set name."""
    out = set(r.head_literals)
    for e in r.body:
        if isinstance(e.atom, Literal):
            out.add(e.atom)
    for s in r.set_names():
        out |= base_literals(s, constants)
    return out


def _head_literals(rules, constants) -> set:
    out = set()
    ordered = sorted(constants, key=constant_key)
    for r in rules:
        if isinstance(r.head, SubsetHead):
            for args in itertools.product(ordered, repeat=r.head.arity):
                out.add(Literal(r.head.pred, args))
        else:
            out.update(r.head)
    return out


def splitting_set_check(p1: GroundProgram, p2: GroundProgram, s) -> bool:
    constants = p1.constants | p2.constants
    s = frozenset(s)
    heads2 = _head_literals(p2.rules, constants)
    for r in p1.rules:
        if any(literal_occurs_in_rule(h, r) is not Occurrence.NONE for h in heads2):
            return False
        if not occurring_literals(r, constants) <= s:
            return False
    return not (heads2 & s)


def split_solve(p1: GroundProgram, p2: GroundProgram, s, caps: Caps = DEFAULT_CAPS) -> set[frozenset]:
    """Answer sets of the union, built bottom-up from those of ``p1``."""
    if not splitting_set_check(p1, p2, s):
        raise AlogError("not a splitting set for these programs")
    s = frozenset(s)
    constants = p1.constants | p2.constants
    found = set()
    for bottom in enumerate_answer_sets(p1, caps):
        facts = [Rule((l,)) for l in sorted_literals(bottom)]
        top = GroundProgram(tuple(facts) + p2.rules, constants)
        for a in enumerate_answer_sets(top, caps):
            if a & s == bottom:
                found.add(a)
    return found


# comparison


def _as_json_sets(sets) -> Optional[list]:
    if sets is None:
        return None
    rows = [[str(l) for l in sorted_literals(a)] for a in sets]
    return sorted(rows, key=lambda row: (len(row), row))


@dataclass
class ComparisonReport:
    alog: Optional[set]
    flog: Optional[set]
    slog: Optional[set]
    skipped: dict = field(default_factory=dict)

    @staticmethod
    def _incl(a, b):
        return None if a is None or b is None else a <= b

    @staticmethod
    def _eq(a, b):
        return None if a is None or b is None else a == b

    @property
    def inclusion_af(self):
        return self._incl(self.alog, self.flog)

    @property
    def inclusion_as(self):
        return self._incl(self.alog, self.slog)

    @property
    def equal_af(self):
        return self._eq(self.alog, self.flog)

    @property
    def equal_as(self):
        return self._eq(self.alog, self.slog)

    @property
    def equal_all(self):
        if None in (self.alog, self.flog, self.slog):
            return None
        return self.alog == self.flog == self.slog

    def witnesses(self) -> dict:
        out = {}
        named = {"alog": self.alog, "flog": self.flog, "slog": self.slog}
        for x, y in itertools.permutations(named, 2):
            if named[x] is None or named[y] is None:
                continue
            only = named[x] - named[y]
            if only:
                out[f"{x}_not_{y}"] = _as_json_sets(only)
        return out

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "alog": _as_json_sets(self.alog),
            "flog": _as_json_sets(self.flog),
            "slog": _as_json_sets(self.slog),
            "inclusion_af": self.inclusion_af,
            "inclusion_as": self.inclusion_as,
            "equal_af": self.equal_af,
            "equal_as": self.equal_as,
            "equal_all": self.equal_all,
            "witnesses": self.witnesses(),
            "skipped": dict(self.skipped),
        }


def compare_semantics(program: Program, caps: Caps = DEFAULT_CAPS, int_range=None, safe: bool = True) -> ComparisonReport:
    skipped = {}
    ground = ground_alog(program, int_range, safe)
    try:
        a = enumerate_answer_sets(ground, caps)
    except CapExceeded as exc:
        a, skipped["alog"] = None, str(exc)
    try:
        f = enumerate_answer_sets_flog(ground_flog(program, int_range, safe), caps)
    except (FragmentError, CapExceeded) as exc:
        f, skipped["flog"] = None, str(exc)
    try:
        check_slog_fragment(ground)
        s = enumerate_answer_sets_slog(ground, caps)
    except (FragmentError, CapExceeded) as exc:
        s, skipped["slog"] = None, str(exc)
    return ComparisonReport(a, f, s, skipped)


def stratify_report(program: Program, int_range=None) -> dict:
    mapping = aggregate_stratification(program)
    ok, violations = is_af_compatible(program, int_range)
    return {
        "schema": SCHEMA,
        "stratified": mapping is not None,
        "levels": mapping,
        "af_compatible": ok,
        "af_violations": violations,
    }
