"""Unit tests for the brute-force oracles."""

import random

import pytest

from hyperprod.core.exceptions import OracleCapExceeded, ProgramError
from hyperprod.frontend.compile import to_vpg
from hyperprod.frontend.parser import parse
from hyperprod.oracle import (
    ProductInterpreter,
    StackMode,
    classes,
    enumerate_shuffle,
    interleaving_count,
    interpret,
    is_reduction_of,
    minimal_members,
    ref_reduction,
    shuffle_languages,
    swap_closure,
)
from hyperprod.orders import make_roundrobin_order
from hyperprod.reductions.evaluate import Mode, evaluate
from hyperprod.reductions.expr import ReductionExpr
from hyperprod.services.verification import compile_grammars
from hyperprod.vpl.alphabet import Letter, LetterKind, VPAlphabet, make_alphabet
from hyperprod.vpl.vpg import vpg_enumerate
from tests.fixtures.programs import DIV_SOURCE

ROUND_ROBIN_ALPHABET = VPAlphabet(
    [
        Letter("(", LetterKind.CALL, 1),
        Letter(")", LetterKind.RETURN, 1),
        Letter("x", LetterKind.INTERNAL, 1),
        Letter("[", LetterKind.CALL, 2),
        Letter("]", LetterKind.RETURN, 2),
    ]
)

FIRST = make_alphabet(internals="ab", component=1)
SECOND = make_alphabet(internals="x", component=2)


class TestShuffle:
    """Unit tests for interleavings and commutativity classes."""

    def test_interleaving_count(self):
        assert interleaving_count([2, 1]) == 3
        assert interleaving_count([4, 2]) == 15
        assert interleaving_count([]) == 1

    def test_enumerate_shuffle(self):
        """Each component keeps its own letter order."""
        words = enumerate_shuffle(FIRST.word("ab"), SECOND.word("x"), cap=10)
        assert {"".join(a.id for a in w) for w in words} == {"abx", "axb", "xab"}

    def test_cap(self):
        """Too many interleavings is refused, not sampled."""
        with pytest.raises(OracleCapExceeded):
            enumerate_shuffle(FIRST.word("ab"), SECOND.word("x"), cap=2)

    def test_shuffle_languages(self):
        """One word per language, every interleaving of the choice."""
        words = shuffle_languages([FIRST.word("a"), FIRST.word("ab")], [SECOND.word("x")], max_len=2, cap=10)
        assert {"".join(a.id for a in w) for w in words} == {"ax", "xa"}

    def test_swap_closure(self):
        """Swapping adjacent letters of different components stays in the class."""
        alpha = ROUND_ROBIN_ALPHABET.word("([()])")
        closure = swap_closure(alpha)
        assert len(closure) == 15
        assert ROUND_ROBIN_ALPHABET.word("(([]))") in closure

    def test_classes(self):
        """Words are grouped by their projections."""
        words = swap_closure(ROUND_ROBIN_ALPHABET.word("([()])")) | {ROUND_ROBIN_ALPHABET.word("()")}
        found = classes(words, maxlen=6)
        assert sorted(len(c) for c in found) == [1, 15]
        assert len(classes(words, maxlen=2)) == 1


class TestReference:
    """Unit tests for the reference lex reduction."""

    def setup_method(self):
        self.order = make_roundrobin_order(2, ROUND_ROBIN_ALPHABET)
        self.alpha = ROUND_ROBIN_ALPHABET.word("([()])")

    def test_round_robin_minimum(self):
        """The round-robin order picks one word of the class."""
        assert ref_reduction(self.order, swap_closure(self.alpha)) == {self.alpha}

    def test_minimal_members(self):
        members = [self.alpha, ROUND_ROBIN_ALPHABET.word("(([]))")]
        assert minimal_members(self.order, members) == {self.alpha}

    def test_well_nested_only(self):
        """Words that are not well-nested are dropped first."""
        reduced = ref_reduction(self.order, swap_closure(self.alpha), wn_only=True)
        assert reduced == {self.alpha}

    def test_is_reduction_of(self):
        """A reduction meets every class and stays in the language."""
        language = swap_closure(self.alpha)
        assert is_reduction_of({self.alpha}, language)
        assert not is_reduction_of(set(), language)
        assert not is_reduction_of({ROUND_ROBIN_ALPHABET.word("()")}, language)


class TestInterpreter:
    """Unit tests for the concrete product interpreters."""

    def setup_method(self):
        self.program = parse(DIV_SOURCE)
        self.runs = vpg_enumerate(to_vpg(self.program, "div", wrap_entry=True), 12)
        self.interpreter = ProductInterpreter.for_programs([self.program])

    @pytest.mark.parametrize("mode", list(StackMode))
    def test_div(self, mode):
        """Only the run recursing twice is feasible for 5 / 2."""
        results = [interpret(run, self.interpreter, {"n": 5, "d": 2}, mode) for run in self.runs]
        feasible = [r for r in results if r]
        assert feasible == [frozenset({(("d", 2), ("n", 5), ("q", 2))})]

    def test_modes_agree(self):
        """Both stack disciplines end in the same valuation."""
        for run in self.runs:
            for values in ({"n": 0, "d": 1}, {"n": 4, "d": 2}, {"n": 7, "d": 3}):
                single = interpret(run, self.interpreter, values, StackMode.SINGLE)
                multi = interpret(run, self.interpreter, values, StackMode.MULTI)
                assert single == multi

    def test_modes_agree_on_lockstep_product(self):
        """Seeded runs of two div copies in lockstep: both stack disciplines end alike."""
        copies, grammars = compile_grammars(self.program, 2, {})
        expr = ReductionExpr.lockstep((1, 1), ReductionExpr.leaf(1), ReductionExpr.leaf(2))
        product = evaluate(expr, dict(enumerate(grammars, start=1)), Mode.DIRECT)
        runs = sorted(vpg_enumerate(product, 24), key=lambda run: [a.id for a in run])
        interpreter = ProductInterpreter.for_programs(copies)
        rng = random.Random(2024)
        for _ in range(1000):
            run = rng.choice(runs)
            values = {f"n_{i}": rng.randint(-2, 9) for i in (1, 2)}
            values.update({f"d_{i}": rng.randint(1, 3) for i in (1, 2)})
            single = interpret(run, interpreter, values, StackMode.SINGLE)
            multi = interpret(run, interpreter, values, StackMode.MULTI)
            assert single == multi, [a.id for a in run]

        shortest = min(runs, key=len)
        values = {"n_1": 0, "d_1": 1, "n_2": 0, "d_2": 1}
        assert interpret(shortest, interpreter, values, StackMode.SINGLE)
        assert interpret(shortest, interpreter, values, StackMode.MULTI)

    def test_unknown_variable(self):
        with pytest.raises(ProgramError):
            self.interpreter.initial({"x": 1})

    def test_shared_ownership_rejected(self):
        """Two components cannot own the same variable."""
        with pytest.raises(ProgramError):
            ProductInterpreter.for_programs([self.program, self.program])

    def test_unmatched_return_blocks(self):
        """A return with nothing to return to is infeasible."""
        run = [letter for letter in min(self.runs, key=len) if letter.is_return]
        assert interpret(run, self.interpreter, {"n": 1, "d": 2}) == frozenset()
