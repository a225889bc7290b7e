"""Recursive-descent parser for the ``.alog`` text syntax, plus the formatter.

Concrete syntax::

    need_ta(C) :- card{X : enrolled(C,X)} > 20.
    q(a) or p(b).
    :- p(a).
    -ready(S) :- not ready(S), student(S).
    ok(S) :- {C : taken(S,C)} <= {C : required(C)}, student(S).
    p(a) :- p <= {X : q(X)}.        % abbreviates {X:p(X)} <= {X:q(X)}
    p <= {X : q(X)}.                % subset introduction

``%`` starts a comment.  ``card`` is read as ``count``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import AlogError, ParseError
from .syntax import (
    AggregateAtom,
    Arith,
    Comparison,
    ELiteral,
    Literal,
    Program,
    Rule,
    SetAtom,
    SetName,
    SourceSpan,
    SubsetHead,
    Var,
    predicate_arities,
)

_FUNCS = {"count": "count", "card": "count", "sum": "sum", "min": "min", "max": "max"}
_RELS = {">", ">=", "<", "<=", "=", "!="}
_SET_RELS = {"=", "<=", "<"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<int>[0-9]+)
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<punct>:-|<=|>=|!=|[<>=(){},:.\-+*|])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # int, var, ident, punct, eof
    text: str
    span: SourceSpan


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            span = SourceSpan(pos, pos + 1, line, pos - line_start + 1)
            raise ParseError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        if kind != "ws":
            span = SourceSpan(pos, m.end(), line, pos - line_start + 1)
            tokens.append(Token(kind, m.group(), span))
        chunk = m.group()
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", SourceSpan(pos, pos, line, pos - line_start + 1)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers

    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, text: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok.kind in ("punct", "ident") and tok.text == text

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.span)

    # grammar

    def program(self) -> Program:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.rule())
        return Program(tuple(rules))

    def rule(self) -> Rule:
        first = self.peek()
        if self.at(":-"):
            self.advance()
            head: object = ()
            body = self.body()
        else:
            head = self.head()
            body = ()
            if self.at(":-"):
                self.advance()
                body = self.body()
        last = self.expect(".")
        span = SourceSpan(first.span.begin, last.span.end, first.span.line, first.span.column)
        return Rule(head, body, span)

    def head(self):
        if self.at("not"):
            self.error("default negation is not allowed in rule heads")
        if self.peek().kind == "ident" and self.peek(1).text in _SET_RELS and self.at("{", 2):
            pred = self.advance().text
            rel = self.advance().text
            return SubsetHead(pred, rel, self.set_name())
        lits = [self.literal()]
        while self.at("or") or self.at("|"):
            self.advance()
            if self.at("not"):
                self.error("default negation is not allowed in rule heads")
            lits.append(self.literal())
        return tuple(lits)

    def body(self) -> tuple:
        if self.at("."):
            self.error("empty rule body after ':-'")
        items = [self.body_item()]
        while self.at(","):
            self.advance()
            items.append(self.body_item())
        return tuple(items)

    def body_item(self) -> ELiteral:
        naf_tok = None
        if self.at("not"):
            naf_tok = self.advance()
        tok = self.peek()
        if self.at("-") and self.peek(1).text in _FUNCS and self.at("{", 2):
            self.advance()
            atom: object = self.aggregate(neg=True)
        elif tok.kind == "ident" and tok.text in _FUNCS and self.at("{", 1):
            atom = self.aggregate(neg=False)
        elif self.at("{"):
            lhs = self.set_name()
            atom = self.set_atom_rest(lhs)
        elif tok.kind == "ident" and self.peek(1).text in _SET_RELS and self.at("{", 2):
            pred = self.advance().text
            rel = self.advance().text
            rhs = self.set_name()
            lhs = SetName(rhs.bound, (Literal(pred, tuple(Var(v) for v in rhs.bound)),))
            atom = SetAtom(lhs, rel, rhs)
        else:
            atom = self.literal()
        if naf_tok is not None and isinstance(atom, SetAtom):
            self.error("set atoms cannot be default-negated", naf_tok)
        return ELiteral(atom, naf_tok is not None)

    def set_atom_rest(self, lhs: SetName) -> SetAtom:
        tok = self.peek()
        if tok.text not in _SET_RELS or tok.kind != "punct":
            self.error("expected one of =, <=, < after a set name")
        rel = self.advance().text
        if not self.at("{"):
            self.error("expected a set name")
        rhs = self.set_name()
        if len(lhs.bound) != len(rhs.bound):
            self.error("set atom compares set names of different tuple length", tok)
        return SetAtom(lhs, rel, rhs)

    def aggregate(self, neg: bool) -> AggregateAtom:
        func_tok = self.advance()
        func = _FUNCS[func_tok.text]
        sn = self.set_name()
        if func != "count" and len(sn.bound) != 1:
            self.error(f"{func} needs exactly one bound variable", func_tok)
        tok = self.peek()
        if tok.kind != "punct" or tok.text not in _RELS:
            self.error("expected an arithmetic relation after the aggregate term")
        rel = self.advance().text
        guard = self.term()
        return AggregateAtom(func, sn, rel, guard, neg)

    def set_name(self) -> SetName:
        open_tok = self.expect("{")
        bound = []
        while True:
            tok = self.peek()
            if tok.kind != "var":
                self.error("expected a bound variable in set name")
            if tok.text in bound:
                self.error(f"bound variable {tok.text} listed twice")
            bound.append(self.advance().text)
            if self.at(","):
                self.advance()
                continue
            break
        self.expect(":")
        cond = [self.cond_item()]
        while self.at(","):
            self.advance()
            cond.append(self.cond_item())
        self.expect("}")
        sn = SetName(tuple(bound), tuple(cond))
        in_literals = set()
        for lit in sn.literals:
            in_literals |= lit.variables()
        for v in bound:
            if v not in in_literals:
                raise ParseError(
                    f"bound variable {v} does not occur in a literal of the set condition",
                    open_tok.span,
                )
        return sn

    def cond_item(self):
        tok, nxt = self.peek(), self.peek(1)
        comparison = (
            tok.kind in ("var", "int")
            or self.at("(")
            or (tok.kind == "ident" and nxt.kind == "punct" and nxt.text in _RELS)
            or (self.at("-") and nxt.kind in ("int", "var"))
        )
        if not comparison:
            return self.literal()
        left = self.term()
        rel_tok = self.peek()
        if rel_tok.kind != "punct" or rel_tok.text not in _RELS:
            self.error("expected a comparison relation")
        self.advance()
        return Comparison(left, rel_tok.text, self.term())

    def literal(self) -> Literal:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        tok = self.peek()
        if tok.kind != "ident" or tok.text in ("not", "or"):
            self.error("expected a literal")
        pred = self.advance().text
        args = []
        if self.at("("):
            self.advance()
            args.append(self.term())
            while self.at(","):
                self.advance()
                args.append(self.term())
            self.expect(")")
        return Literal(pred, tuple(args), neg)

    def term(self):
        left = self.product()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            left = Arith(op, left, self.product())
        return left

    def product(self):
        left = self.unary()
        while self.at("*"):
            self.advance()
            left = Arith("*", left, self.unary())
        return left

    def unary(self):
        if self.at("-"):
            self.advance()
            if self.peek().kind == "int":
                return -int(self.advance().text)
            return Arith("-", 0, self.unary())
        tok = self.peek()
        if tok.kind == "int":
            return int(self.advance().text)
        if tok.kind == "var":
            return Var(self.advance().text)
        if tok.kind == "ident" and tok.text not in ("not", "or"):
            return self.advance().text
        if self.at("("):
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        self.error("expected a term")


def parse_program(text: str) -> Program:
    """Parse ``.alog`` source into a :class:`Program`."""
    parser = _Parser(text)
    program = parser.program()
    seen: dict[str, int] = {}
    for r in program.rules:
        try:
            arities = predicate_arities([r])
        except AlogError as exc:
            raise ParseError(str(exc), r.span) from None
        for pred, n in arities.items():
            if seen.setdefault(pred, n) != n:
                raise ParseError(
                    f"predicate {pred} used with arities {seen[pred]} and {n}", r.span
                )
    return program


def parse_literals(text: str) -> list[Literal]:
    """Parse a comma separated list of literals such as ``p(0),p(1)``."""
    parser = _Parser(text)
    out: list[Literal] = []
    if parser.peek().kind == "eof":
        return out
    out.append(parser.literal())
    while parser.at(","):
        parser.advance()
        out.append(parser.literal())
    if parser.at("."):
        parser.advance()
    if parser.peek().kind != "eof":
        parser.error("expected ',' or end of input")
    return out


def format_program(program) -> str:
    """Canonical text: one rule per line, each ending with a newline."""
    return "".join(f"{r}\n" for r in program.rules)
