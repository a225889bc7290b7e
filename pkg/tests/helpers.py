"""shared fixtures: reference programs and small conversion helpers"""

from alog_lab.grounder import ground_alog, ground_flog
from alog_lab.parser import parse_literals, parse_program

P0 = "need_ta(C) :- card{X : enrolled(C,X)} > 20, class(C). class(c). enrolled(c,mike). enrolled(c,john)."
P1 = "p(a) :- card{X : p(X)} = 1."
P2 = "q(Y) :- card{X:p(X,Y)} = 1, r(Y). r(a). r(b). p(a,b)."
P3 = "r :- card{X:p(X)} >= 2, q(X). p(a). p(b). q(a)."
P4 = "p(a). p(b) :- card{X:p(X)} > 0."
P4_PRIME = "p(a). p(b) :- card{X:p(X), X != b} > 0."
P5 = """
val(W,0) :- gate(G, and), output(W, G), card{W: val(W,0), input(W, G)} > 0.
gate(g, and). output(w0, g). input(w1, g). input(w2, g). val(w1,0).
"""
P6 = "p(1) :- p(0). p(0) :- p(1). p(1) :- count{X: p(X)} != 1."
P7 = "p(a) :- count{X:p(X)} > 0. p(b) :- not q. q :- not p(b)."
DISJ = "p(1) :- count{X:p(X)} != 1, b. b or c."
GRADUATE = """
taken(mike,cs1). required(cs1).
taken(mike,cs2). required(cs2).
taken(john,cs1).
ready_to_graduate(S) :- {C:taken(S,C)} <= {C: required(C)}.
-ready_to_graduate(S) :- not ready_to_graduate(S).
"""
GRADUATE_SAFE = """
student(mike). student(john).
taken(mike,cs1). required(cs1).
taken(mike,cs2). required(cs2).
taken(john,cs1).
ready_to_graduate(S) :- {C:taken(S,C)} <= {C: required(C)}, student(S).
-ready_to_graduate(S) :- not ready_to_graduate(S), student(S).
"""
P8 = "p(a) :- p <= {X : q(X)}. q(a)."
P9 = "q(a). p <= {X:q(X)}."
P10 = "car(a). car(b). carro = {X:car(X)} :- spanish. spanish."
TWO_BOUNDS = "q(a). q(b). r(a). p <= {X : q(X)}. p <= {X : r(X)}."
TRACE = ":- p(a). p(a) :- card{X:q(X)} > 0. q(a) or p(b)."


def lits(text):
    """'p(a) q(b,c) r' -> frozenset of literals (space separated)"""
    return frozenset(l for tok in text.split() for l in parse_literals(tok))


def sets(*texts):
    return {lits(t) for t in texts}


def galog(text, **kw):
    return ground_alog(parse_program(text), **kw)


def gflog(text, **kw):
    return ground_flog(parse_program(text), **kw)


def rule_shapes(program):
    """order-insensitive view of a ground program: {(head, frozenset(body))}"""
    return {(str(r.head) if r.is_subset_intro else tuple(sorted(map(str, r.head))), frozenset(map(str, r.body))) for r in program.rules}
