"""Abstract syntax shared by the parser, the grounders and every semantics.

Constants are plain Python values: ``int`` for integers and ``str`` for
symbolic constants.  Variables and arithmetic expressions get their own node
types.  Every node is an immutable, hashable dataclass and prints in the
concrete ``.alog`` syntax via ``str()``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Union

from .errors import AlogError, GroundingError

Constant = Union[int, str]

AGGREGATE_FUNCTIONS = ("count", "sum", "min", "max")
RELATIONS = (">", ">=", "<", "<=", "=", "!=")
SET_RELATIONS = ("=", "<=", "<")

COMPLEMENT = {">": "<=", ">=": "<", "<": ">=", "<=": ">", "=": "!=", "!=": "="}


@dataclass(frozen=True)
class SourceSpan:
    begin: int
    end: int
    line: int
    column: int

    def __post_init__(self):
        if self.begin > self.end:
            raise ValueError("span begin after end")


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Arith:
    op: str  # one of + - *
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        prec = _PREC[self.op]
        left = _term_str(self.left)
        right = _term_str(self.right)
        if isinstance(self.left, Arith) and _PREC[self.left.op] < prec:
            left = f"({left})"
        if isinstance(self.right, Arith) and _PREC[self.right.op] <= prec:
            right = f"({right})"
        elif self.op == "-" and isinstance(self.right, int) and self.right < 0:
            right = f"({right})"
        return f"{left}{self.op}{right}"


Term = Union[Var, Arith, int, str]

_PREC = {"+": 1, "-": 1, "*": 2}


def _term_str(t: Term) -> str:
    return str(t)


def constant_key(c) -> tuple:
    """Total order on terms: integers, then symbols, then variables."""
    if isinstance(c, bool):
        raise TypeError("booleans are not constants")
    if isinstance(c, int):
        return (0, c, "")
    if isinstance(c, str):
        return (1, 0, c)
    if isinstance(c, Var):
        return (2, 0, c.name)
    return (3, 0, str(c))


def term_vars(t: Term) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, Arith):
        yield from term_vars(t.left)
        yield from term_vars(t.right)


def is_ground_term(t: Term) -> bool:
    return isinstance(t, (int, str))


def eval_arith(op: str, left: Constant, right: Constant) -> int:
    if not (isinstance(left, int) and isinstance(right, int)):
        raise GroundingError(f"arithmetic on non-integer operands: {left}{op}{right}")
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    return left * right


def subst_term(t: Term, binding: Mapping[str, Constant]) -> Term:
    """Replace variables from ``binding`` and fold arithmetic that became ground."""
    if isinstance(t, Var):
        return binding.get(t.name, t)
    if isinstance(t, Arith):
        left = subst_term(t.left, binding)
        right = subst_term(t.right, binding)
        if is_ground_term(left) and is_ground_term(right):
            return eval_arith(t.op, left, right)
        return Arith(t.op, left, right)
    return t


def compare(left: Constant, rel: str, right: Constant) -> bool:
    if rel == "=":
        return left == right
    if rel == "!=":
        return left != right
    a, b = constant_key(left), constant_key(right)
    if rel == "<":
        return a < b
    if rel == "<=":
        return a <= b
    if rel == ">":
        return a > b
    if rel == ">=":
        return a >= b
    raise ValueError(f"unknown relation {rel!r}")


@dataclass(frozen=True)
class Literal:
    """A regular literal ``p(t1,...,tn)`` or its classical negation ``-p(...)``."""

    pred: str
    args: tuple = ()
    neg: bool = False

    def __str__(self) -> str:
        sign = "-" if self.neg else ""
        if not self.args:
            return f"{sign}{self.pred}"
        return f"{sign}{self.pred}({','.join(str(a) for a in self.args)})"

    @property
    def arity(self) -> int:
        return len(self.args)

    def is_ground(self) -> bool:
        return all(is_ground_term(a) for a in self.args)

    def variables(self) -> set[str]:
        return {v for a in self.args for v in term_vars(a)}

    def substitute(self, binding: Mapping[str, Constant]) -> "Literal":
        return Literal(self.pred, tuple(subst_term(a, binding) for a in self.args), self.neg)

    def complement(self) -> "Literal":
        return Literal(self.pred, self.args, not self.neg)


def literal_key(lit: Literal) -> tuple:
    return (lit.pred, lit.neg, len(lit.args), tuple(constant_key(a) for a in lit.args))


def sorted_literals(lits: Iterable[Literal]) -> list[Literal]:
    return sorted(lits, key=literal_key)


@dataclass(frozen=True)
class Comparison:
    """Built-in comparison allowed inside set-name conditions, e.g. ``X != b``."""

    left: Term
    rel: str
    right: Term

    def __str__(self) -> str:
        return f"{self.left} {self.rel} {self.right}"

    def variables(self) -> set[str]:
        return set(term_vars(self.left)) | set(term_vars(self.right))

    def substitute(self, binding: Mapping[str, Constant]) -> "Comparison":
        return Comparison(subst_term(self.left, binding), self.rel, subst_term(self.right, binding))

    def holds(self, binding: Mapping[str, Constant] = {}) -> bool:
        left = subst_term(self.left, binding)
        right = subst_term(self.right, binding)
        if not (is_ground_term(left) and is_ground_term(right)):
            raise GroundingError(f"comparison {self} is not ground")
        return compare(left, self.rel, right)


CondItem = Union[Literal, Comparison]


@dataclass(frozen=True)
class SetName:
    """``{X1,...,Xk : cond}``; ``bound`` holds the variable names X1..Xk."""

    bound: tuple
    cond: tuple

    def __str__(self) -> str:
        return "{" + ",".join(self.bound) + ":" + ",".join(str(c) for c in self.cond) + "}"

    @property
    def literals(self) -> tuple:
        return tuple(c for c in self.cond if isinstance(c, Literal))

    @property
    def comparisons(self) -> tuple:
        return tuple(c for c in self.cond if isinstance(c, Comparison))

    def variables(self) -> set[str]:
        out: set[str] = set(self.bound)
        for c in self.cond:
            out |= c.variables()
        return out

    def free_vars(self) -> set[str]:
        return self.variables() - set(self.bound)

    def substitute_free(self, binding: Mapping[str, Constant]) -> "SetName":
        inner = {k: v for k, v in binding.items() if k not in self.bound}
        return SetName(self.bound, tuple(c.substitute(inner) for c in self.cond))

    def is_ground(self) -> bool:
        return not self.free_vars()


@dataclass(frozen=True)
class GroundSet:
    """Explicit set ``{c1:conj1, ..., ck:conjk}`` produced by the FLP-style grounder."""

    elements: tuple  # of (tuple of constants, tuple of Literal)

    def __str__(self) -> str:
        parts = []
        for tup, conj in self.elements:
            head = str(tup[0]) if len(tup) == 1 else "(" + ",".join(str(c) for c in tup) + ")"
            parts.append(head + ":" + " & ".join(str(l) for l in conj))
        return "{" + ", ".join(parts) + "}"

    def is_ground(self) -> bool:
        return True


@dataclass(frozen=True)
class AggregateAtom:
    """``f{X:cond} rel guard``; ``neg`` marks the classically negated literal."""

    func: str
    set: Union[SetName, GroundSet]
    rel: str
    guard: Term
    neg: bool = False

    def __str__(self) -> str:
        sign = "-" if self.neg else ""
        return f"{sign}{self.func}{self.set} {self.rel} {self.guard}"

    def is_ground(self) -> bool:
        return self.set.is_ground() and isinstance(self.guard, int)


@dataclass(frozen=True)
class SetAtom:
    lhs: SetName
    rel: str
    rhs: SetName

    def __str__(self) -> str:
        return f"{self.lhs} {self.rel} {self.rhs}"

    def is_ground(self) -> bool:
        return self.lhs.is_ground() and self.rhs.is_ground()


Atom = Union[Literal, AggregateAtom, SetAtom]


@dataclass(frozen=True)
class ELiteral:
    atom: Atom
    naf: bool = False

    def __str__(self) -> str:
        return ("not " if self.naf else "") + str(self.atom)

    @property
    def is_regular(self) -> bool:
        return isinstance(self.atom, Literal)

    @property
    def is_aggregate(self) -> bool:
        return isinstance(self.atom, AggregateAtom)

    @property
    def is_set_atom(self) -> bool:
        return isinstance(self.atom, SetAtom)


@dataclass(frozen=True)
class SubsetHead:
    """Subset introduction ``p <= {X:q(X)}`` (also ``<`` and ``=``)."""

    pred: str
    rel: str
    rhs: SetName

    def __str__(self) -> str:
        return f"{self.pred} {self.rel} {self.rhs}"

    @property
    def arity(self) -> int:
        return len(self.rhs.bound)


@dataclass(frozen=True)
class Rule:
    head: Union[tuple, SubsetHead]
    body: tuple = ()
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        if isinstance(self.head, SubsetHead):
            head = str(self.head)
        else:
            head = " or ".join(str(l) for l in self.head)
        if not self.body:
            return f"{head}." if head else ":-."
        body = ", ".join(str(e) for e in self.body)
        return f"{head} :- {body}." if head else f":- {body}."

    @property
    def is_subset_intro(self) -> bool:
        return isinstance(self.head, SubsetHead)

    @property
    def head_literals(self) -> tuple:
        return () if self.is_subset_intro else self.head

    def set_names(self) -> Iterator[SetName]:
        """Every set name in the rule (aggregates, set atoms, subset head)."""
        if isinstance(self.head, SubsetHead):
            yield self.head.rhs
        for e in self.body:
            if isinstance(e.atom, AggregateAtom) and isinstance(e.atom.set, SetName):
                yield e.atom.set
            elif isinstance(e.atom, SetAtom):
                yield e.atom.lhs
                yield e.atom.rhs

    def free_vars(self) -> set[str]:
        out: set[str] = set()
        for l in self.head_literals:
            out |= l.variables()
        for s in self.set_names():
            out |= s.free_vars()
        for e in self.body:
            if isinstance(e.atom, Literal):
                out |= e.atom.variables()
            elif isinstance(e.atom, AggregateAtom):
                out |= set(term_vars(e.atom.guard))
        return out

    def is_ground(self) -> bool:
        if self.free_vars():
            return False
        for l in self.head_literals:
            if not l.is_ground():
                return False
        for e in self.body:
            if isinstance(e.atom, Literal) and not e.atom.is_ground():
                return False
            if isinstance(e.atom, AggregateAtom) and not isinstance(e.atom.guard, int):
                return False
        return True


@dataclass(frozen=True)
class Program:
    rules: tuple = ()

    def __str__(self) -> str:
        return "".join(f"{r}\n" for r in self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def signature(self) -> dict[str, int]:
        return predicate_arities(self.rules)

    def is_ground(self) -> bool:
        return all(r.is_ground() for r in self.rules)


@dataclass(frozen=True)
class GroundProgram:
    """Ground rules plus the constants they were instantiated over."""

    rules: tuple = ()
    constants: frozenset = frozenset()

    def __str__(self) -> str:
        return "".join(f"{r}\n" for r in self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def with_rules(self, rules: Iterable[Rule]) -> "GroundProgram":
        return GroundProgram(tuple(rules), self.constants)


def iter_literals(rules: Iterable[Rule]) -> Iterator[Literal]:
    """All regular literals of the rules, including those inside set names."""
    for r in rules:
        yield from r.head_literals
        if isinstance(r.head, SubsetHead):
            yield Literal(r.head.pred, tuple(Var(v) for v in r.head.rhs.bound))
        for e in r.body:
            if isinstance(e.atom, Literal):
                yield e.atom
            elif isinstance(e.atom, AggregateAtom) and isinstance(e.atom.set, GroundSet):
                for _, conj in e.atom.set.elements:
                    yield from conj
        for s in r.set_names():
            yield from s.literals


def predicate_arities(rules: Iterable[Rule]) -> dict[str, int]:
    out: dict[str, int] = {}
    for lit in iter_literals(rules):
        known = out.setdefault(lit.pred, lit.arity)
        if known != lit.arity:
            raise AlogError(f"predicate {lit.pred} used with arities {known} and {lit.arity}")
    return out


class TruthValue(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDEFINED = "undefined"

    def __bool__(self) -> bool:
        return self is TruthValue.TRUE


class Occurrence(enum.Enum):
    EXPLICIT = "explicit"
    IMPLICIT = "implicit"
    NONE = "none"


def positive_form(a: AggregateAtom) -> AggregateAtom:
    """``-f{..} rel n`` becomes ``f{..} rel' n`` with the complementary relation."""
    if not a.neg:
        raise ValueError(f"{a} is not classically negated")
    return AggregateAtom(a.func, a.set, COMPLEMENT[a.rel], a.guard)


def match(pattern: Literal, lit: Literal, binding: Optional[dict] = None) -> Optional[dict]:
    """Extend ``binding`` so that ``pattern`` instantiates to ``lit``, or None."""
    if pattern.pred != lit.pred or pattern.neg != lit.neg or len(pattern.args) != len(lit.args):
        return None
    out = dict(binding) if binding else {}
    for p, c in zip(pattern.args, lit.args):
        if isinstance(p, Var):
            seen = out.get(p.name)
            if seen is None:
                out[p.name] = c
            elif seen != c:
                return None
        elif isinstance(p, Arith):
            raise GroundingError(f"arithmetic over bound variables is not supported: {p}")
        elif p != c:
            return None
    return out


def literal_occurs_in_rule(lit: Literal, rule: Rule) -> Occurrence:
    for h in rule.head_literals:
        if h == lit:
            return Occurrence.EXPLICIT
    if isinstance(rule.head, SubsetHead):
        h = rule.head
        if lit.pred == h.pred and not lit.neg and lit.arity == h.arity:
            return Occurrence.EXPLICIT
    for e in rule.body:
        if e.atom == lit:
            return Occurrence.EXPLICIT
    for s in rule.set_names():
        for c in s.literals:
            if match(c, lit) is not None:
                return Occurrence.IMPLICIT
    for e in rule.body:
        if isinstance(e.atom, AggregateAtom) and isinstance(e.atom.set, GroundSet):
            if any(lit in conj for _, conj in e.atom.set.elements):
                return Occurrence.IMPLICIT
    return Occurrence.NONE
