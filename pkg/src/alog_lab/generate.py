"""Seeded random programs for differential and property testing.

Programs are small by construction (a handful of constants, predicates of
arity at most one, a few rules) so that every brute-force engine stays fast.
Rules are ground except for the bound variables of set names.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .syntax import AggregateAtom, ELiteral, Literal, Program, Rule, SetAtom, SetName, SubsetHead, Var

SYMBOLS = ("a", "b", "c", "d")
PREDICATES = ("p", "q", "r")
BOUND = ("X", "Y", "Z")


@dataclass(frozen=True)
class GenConfig:
    max_constants: int = 4
    max_predicates: int = 3
    max_rules: int = 6
    max_body: int = 3
    aggregate_freq: float = 0.4
    naf_freq: float = 0.3
    funcs: tuple = ("count", "sum", "min", "max")
    disjunction: bool = True
    constraints: bool = True
    naf_aggregates: bool = True
    classical_negation: bool = False
    set_constructs: bool = False
    stratified: bool = False
    integer_constants: float = 0.5  # chance that constants are 0..n-1

    def __post_init__(self):
        if not (1 <= self.max_constants <= 4 and 1 <= self.max_predicates <= 3 and self.max_rules >= 1):
            raise ValueError("generator bounds out of range")


ASOLVER = GenConfig()
FULL = GenConfig(classical_negation=True, set_constructs=True)
AF_COMPATIBLE = GenConfig(funcs=("count", "sum"))
STRATIFIED_AF = replace(AF_COMPATIBLE, stratified=True)
SLOG = GenConfig(funcs=("count", "sum"), disjunction=False, naf_aggregates=False)
STRATIFIED_SLOG = replace(SLOG, stratified=True)


class _Builder:
    def __init__(self, rng: random.Random, cfg: GenConfig, preds=None, constants=None):
        self.rng = rng
        self.cfg = cfg
        n = rng.randint(1, cfg.max_constants)
        if constants is not None:
            self.constants = list(constants)
        elif rng.random() < cfg.integer_constants:
            self.constants = list(range(n))
        else:
            self.constants = list(SYMBOLS[:n])
        if preds is None:
            k = rng.randint(1, cfg.max_predicates)
            names = PREDICATES[:k]
            preds = {name: rng.choice((0, 1, 1)) for name in names}
        self.preds = dict(preds)
        if cfg.stratified:
            self.level = {p: rng.randint(0, 2) for p in self.preds}
        else:
            self.level = {p: 0 for p in self.preds}
        self.ints = all(isinstance(c, int) for c in self.constants)

    def literal(self, pred: str) -> Literal:
        args = (self.rng.choice(self.constants),) if self.preds[pred] else ()
        neg = self.cfg.classical_negation and self.rng.random() < 0.15
        return Literal(pred, args, neg)

    def unary(self, below=None, upto=None) -> list:
        out = [p for p, n in self.preds.items() if n == 1]
        if below is not None:
            out = [p for p in out if self.level[p] < below]
        if upto is not None:
            out = [p for p in out if self.level[p] <= upto]
        return out

    def set_name(self, var: str, preds: list) -> SetName:
        first = self.rng.choice(preds)
        cond = [Literal(first, (Var(var),))]
        if len(preds) > 1 and self.rng.random() < 0.25:
            second = self.rng.choice([p for p in preds if p != first])
            cond.append(Literal(second, (Var(var),)))
        return SetName((var,), tuple(cond))

    def aggregate(self, var: str, preds: list):
        funcs = [f for f in self.cfg.funcs if f == "count" or self.ints]
        func = self.rng.choice(funcs)
        rel = self.rng.choice((">", ">=", "<", "<=", "=", "!="))
        top = sum(c for c in self.constants if isinstance(c, int)) + 1 if func == "sum" else len(self.constants) + 1
        guard = self.rng.randint(0, max(1, top))
        return AggregateAtom(func, self.set_name(var, preds), rel, guard)

    def rule(self) -> Rule:
        rng, cfg = self.rng, self.cfg
        names = list(self.preds)
        if cfg.constraints and rng.random() < 0.15:
            head: object = ()
            level = max(self.level.values()) + 1
        elif cfg.set_constructs and rng.random() < 0.1 and len(self.unary()) >= 1:
            pred = rng.choice(self.unary())
            others = [p for p in self.unary() if p != pred] or [pred]
            head = SubsetHead(pred, rng.choice(("<=", "=", "<")), self.set_name("X", others))
            level = self.level[pred]
        else:
            first = rng.choice(names)
            level = self.level[first]
            heads = [self.literal(first)]
            if cfg.disjunction and rng.random() < 0.25:
                same = [p for p in names if self.level[p] == level]
                extra = self.literal(rng.choice(same))
                if extra not in heads:
                    heads.append(extra)
            head = tuple(heads)
        body = []
        vars_left = list(BOUND)
        for _ in range(rng.randint(0, cfg.max_body)):
            agg_preds = self.unary(below=level if cfg.stratified else None)
            if agg_preds and vars_left and rng.random() < cfg.aggregate_freq:
                if cfg.set_constructs and rng.random() < 0.2 and len(agg_preds) >= 1:
                    v = vars_left.pop(0)
                    atom = SetAtom(self.set_name(v, agg_preds), rng.choice(("=", "<=", "<")), self.set_name(v, agg_preds))
                    body.append(ELiteral(atom))
                    continue
                atom = self.aggregate(vars_left.pop(0), agg_preds)
                if cfg.classical_negation and rng.random() < 0.15:
                    atom = replace(atom, neg=True)
                naf = cfg.naf_aggregates and rng.random() < 0.2
                body.append(ELiteral(atom, naf))
            else:
                plain = [p for p in names if not cfg.stratified or self.level[p] <= level]
                if not plain:
                    continue
                body.append(ELiteral(self.literal(rng.choice(plain)), rng.random() < cfg.naf_freq))
        if head == () and not body:
            return self.rule()
        return Rule(head, tuple(dict.fromkeys(body)))

    def program(self, n_rules=None) -> Program:
        n = n_rules if n_rules is not None else self.rng.randint(1, self.cfg.max_rules)
        rules = []
        for _ in range(n):
            r = self.rule()
            if r not in rules:
                rules.append(r)
        return Program(tuple(rules))


def random_program(seed: int, cfg: GenConfig = ASOLVER) -> Program:
    return _Builder(random.Random(seed), cfg).program()


def random_split(seed: int, cfg: GenConfig = FULL):
    """Two programs where the second never defines what the first mentions.

    Returns (bottom, top, bottom predicates).
    """
    rng = random.Random(seed)
    k = rng.randint(2, cfg.max_predicates)
    names = PREDICATES[:k]
    arities = {p: rng.choice((0, 1, 1)) for p in names}
    cut = rng.randint(1, k - 1)
    low = {p: arities[p] for p in names[:cut]}
    bottom_cfg = replace(cfg, max_rules=max(1, cfg.max_rules // 2))
    b1 = _Builder(rng, bottom_cfg, preds=low)
    p1 = b1.program()
    b2 = _Builder(rng, bottom_cfg, preds=arities, constants=b1.constants)
    rules = []
    for _ in range(rng.randint(1, bottom_cfg.max_rules)):
        r = b2.rule()
        heads = {r.head.pred} if isinstance(r.head, SubsetHead) else {l.pred for l in r.head}
        if heads and heads <= set(names[cut:]) and r not in rules:
            rules.append(r)
    return p1, Program(tuple(rules)), set(low)
