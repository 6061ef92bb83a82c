"""Small grammars shared by the tests: seeded random grammars and the hand-written div grammars."""

import random
from typing import Dict, List

from hyperprod.frontend.ast import IntLit, Unary, Var
from hyperprod.frontend.semantics import AssumeStmt
from hyperprod.vpl.alphabet import Letter, VPAlphabet, make_alphabet
from hyperprod.vpl.vpg import Production, Vpg

FIRST = make_alphabet("c", "r", "a", component=1)
SECOND = make_alphabet("d", "s", "x", component=2)
THIRD = make_alphabet("e", "t", "y", component=3)


def random_grammar(rng: random.Random, alphabet: VPAlphabet, size: int = 3) -> Vpg:
    """Up to two random productions per nonterminal N0..N<size-1>, start N0.

    Nonterminals may end up without productions, so the language can be empty.
    """
    names = [f"N{i}" for i in range(size)]
    productions: List[Production] = []
    for lhs in names:
        for _ in range(rng.randint(0, 2)):
            shape = rng.choice(("epsilon", "internal", "call"))
            if shape == "epsilon":
                productions.append(Production.epsilon(lhs))
            elif shape == "internal":
                productions.append(Production.internal(lhs, rng.choice(alphabet.internals), rng.choice(names)))
            else:
                productions.append(
                    Production.call(
                        lhs,
                        rng.choice(alphabet.calls),
                        rng.choice(names),
                        rng.choice(alphabet.returns),
                        rng.choice(names),
                    )
                )
    return Vpg.build(alphabet, productions, [names[0]])


def div_letters(alphabet: VPAlphabet) -> Dict[str, Letter]:
    """The letters of one compiled, wrapped div copy by role.

    call: entry call with the parameters passed through; recurse: call on n - d; ret: both returns;
    less / not_less: the branch assumes; zero: q := 0; inc: q := q + 1.
    """
    roles: Dict[str, Letter] = {}
    for a in alphabet:
        payload = a.payload
        if a.is_call:
            role = "call" if all(isinstance(arg, Var) for arg in payload.args) else "recurse"
        elif a.is_return:
            role = "ret"
        elif isinstance(payload, AssumeStmt):
            role = "not_less" if isinstance(payload.cond, Unary) else "less"
        else:
            role = "zero" if isinstance(payload.values[0], IntLit) else "inc"
        roles[role] = a
    return roles


def div_productions(roles: Dict[str, Letter], body: str, done: str) -> List[Production]:
    """D -> assume n < d; q := 0  |  assume !(n < d); call div; D; ret; q := q + 1"""
    return [
        Production.internal(body, roles["less"], f"{body}.zero"),
        Production.internal(f"{body}.zero", roles["zero"], done),
        Production.internal(body, roles["not_less"], f"{body}.rec"),
        Production.call(f"{body}.rec", roles["recurse"], body, roles["ret"], f"{body}.inc"),
        Production.internal(f"{body}.inc", roles["inc"], done),
    ]


def div_grammar(alphabet: VPAlphabet) -> Vpg:
    """Hand-written runs of a wrapped div copy: call div; D; ret."""
    roles = div_letters(alphabet)
    productions = div_productions(roles, "D", "E")
    productions += [Production.call("S", roles["call"], "D", roles["ret"], "E"), Production.epsilon("E")]
    return Vpg.build(alphabet, productions, ["S"])


def div_lockstep_grammar(first: VPAlphabet, second: VPAlphabet) -> Vpg:
    """Hand-written (1,1)-lockstep of two wrapped div copies.

    X runs the first body against the second copy's entry block, X' against its recursive block,
    and Y the second body against the first copy's recursive block followed by q := q + 1.
    Internals run eagerly, the first copy's before the second's.
    """
    one, two = div_letters(first), div_letters(second)
    productions = div_productions(one, "D1", "E") + div_productions(two, "D2", "E")
    productions += [
        Production.epsilon("E"),
        Production.call("S", one["call"], "X", one["ret"], "E"),
        # first body ends: the second copy runs alone inside
        Production.internal("X", one["less"], "X.zero"),
        Production.internal("X.zero", one["zero"], "X.alone"),
        Production.call("X.alone", two["call"], "D2", two["ret"], "E"),
        Production.internal("X", one["not_less"], "X.call"),
        Production.call("X.call", two["call"], "Y", two["ret"], "E"),
        Production.internal("X'", one["less"], "X'.zero"),
        Production.internal("X'.zero", one["zero"], "X'.alone"),
        Production.call("X'.alone", two["recurse"], "D2", two["ret"], "E"),
        Production.internal("X'", one["not_less"], "X'.call"),
        Production.call("X'.call", two["recurse"], "Y", two["ret"], "E"),
        # second body against the first copy's pending recursion
        Production.internal("Y", two["less"], "Y.zero"),
        Production.internal("Y.zero", two["zero"], "Y.alone"),
        Production.call("Y.alone", one["recurse"], "D1", one["ret"], "Y.inc1"),
        Production.internal("Y.inc1", one["inc"], "E"),
        Production.internal("Y", two["not_less"], "Y.call"),
        Production.call("Y.call", one["recurse"], "X'", one["ret"], "Y.both"),
        Production.internal("Y.both", one["inc"], "Y.inc2"),
        Production.internal("Y.inc2", two["inc"], "E"),
    ]
    return Vpg.build(first.union(second), productions, ["S"])
