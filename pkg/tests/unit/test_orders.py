"""Unit tests for linear orders and order automata."""

import random

import pytest

from hyperprod.core.exceptions import OrderError
from hyperprod.oracle import ref_reduction, shuffle_languages
from hyperprod.orders import (
    Comparison,
    LinearOrder,
    PartialOrder,
    check_speeds,
    clo_compare,
    coherence_repair,
    concat_order,
    constant_order,
    dec,
    exclude_letters,
    image_alphabet,
    is_uniform,
    last_pending_component,
    lockstep_order,
    make_roundrobin_order,
    nested_concat_order,
    resolve_groups,
)
from hyperprod.vpl.alphabet import Letter, LetterKind, VPAlphabet, make_alphabet
from hyperprod.vpl.vpa import Vpa
from hyperprod.vpl.vpg import vpg_enumerate
from tests.fixtures.grammars import FIRST, SECOND, random_grammar

ROUND_ROBIN_ALPHABET = VPAlphabet(
    [
        Letter("(", LetterKind.CALL, 1),
        Letter(")", LetterKind.RETURN, 1),
        Letter("x", LetterKind.INTERNAL, 1),
        Letter("[", LetterKind.CALL, 2),
        Letter("]", LetterKind.RETURN, 2),
    ]
)

TWO_COMPONENTS = VPAlphabet(
    [
        Letter("(", LetterKind.CALL, 1),
        Letter(")", LetterKind.RETURN, 1),
        Letter("[", LetterKind.CALL, 2),
        Letter("]", LetterKind.RETURN, 2),
    ]
)


def w(text: str, alphabet: VPAlphabet = ROUND_ROBIN_ALPHABET):
    return alphabet.word(text)


class TestDec:
    """Unit tests for the modulo decrement of helper vectors."""

    def test_examples(self):
        """Decrement from zero restarts at the first speed."""
        assert dec((2, 1), (0, 0)) == (1, 1)
        assert dec((2, 1), (1, 1)) == (0, 1)
        assert dec((2, 1), (0, 1)) == (0, 0)

    def test_length_mismatch(self):
        """Speeds and helper must have the same length."""
        with pytest.raises(OrderError):
            dec((1, 1), (0,))

    def test_helper_out_of_range(self):
        """Helper entries may not exceed the speeds."""
        with pytest.raises(OrderError):
            dec((1, 1), (2, 0))

    def test_check_speeds(self):
        """Speeds must be positive."""
        assert check_speeds([2, 1]) == (2, 1)
        with pytest.raises(OrderError):
            check_speeds((0, 1))
        with pytest.raises(OrderError):
            check_speeds(())


class TestLinearOrders:
    """Unit tests for linear and partial orders."""

    def test_duplicates_rejected(self):
        """A letter may appear only once."""
        a = ROUND_ROBIN_ALPHABET["x"]
        with pytest.raises(OrderError):
            LinearOrder((a, a))

    def test_compare_and_demote(self):
        """Demoted letters move behind the others."""
        order = LinearOrder(w("x([])"))
        assert order.compare(w("x")[0], w("(")[0]) is Comparison.LESS
        assert str(order.demote(w("x"))) == "( < [ < ] < ) < x"

    def test_partial_order_extension(self):
        """Incomparable letters are placed by the tiebreak."""
        x, call = w("x")[0], w("(")[0]
        bracket = w("[")[0]
        order = PartialOrder(frozenset([x, call, bracket]), frozenset([(bracket, x)]))
        assert order.compare(x, call) is Comparison.INCOMPARABLE
        assert [a.id for a in order.linear_extension().sequence] == ["(", "[", "x"]

    def test_partial_order_cycle(self):
        """A cyclic relation has no linear extension."""
        a, b, c = make_alphabet(internals="abc").letters
        with pytest.raises(OrderError):
            PartialOrder(frozenset([a, b, c]), frozenset([(a, b), (b, c), (c, a)])).linear_extension()

    def test_partial_order_antisymmetry(self):
        """Both (a, b) and (b, a) cannot be present."""
        a, b = make_alphabet(internals="ab").letters
        with pytest.raises(OrderError):
            PartialOrder(frozenset([a, b]), frozenset([(a, b), (b, a)]))


class TestRoundRobin:
    """Unit tests for the two-component round-robin order."""

    @pytest.fixture
    def order(self):
        return make_roundrobin_order(2, ROUND_ROBIN_ALPHABET)

    def test_initial_order(self, order):
        """Without context, component 1 calls first and returns last."""
        assert str(order.order_at(w(""))) == "x < ( < [ < ] < )"

    def test_after_call_of_first_component(self, order):
        """Right after a call of component 1 the other component calls first."""
        assert str(order.order_at(w("x("))) == "x < [ < ( < ) < ]"

    def test_after_returns(self, order):
        """After a return the returning component keeps priority."""
        assert str(order.order_at(w("x(()"))) == "x < ) < ( < [ < ]"
        assert str(order.order_at(w("x[[]"))) == "x < ] < [ < ( < )"

    def test_clo_compare(self, order):
        """The contextual lexicographic order compares at the first difference."""
        alpha = w("([()])")
        assert clo_compare(order, alpha, w("(([]))")) is Comparison.LESS
        assert clo_compare(order, alpha, w("([(]))")) is Comparison.LESS
        assert clo_compare(order, w("(([]))"), alpha) is Comparison.GREATER
        assert clo_compare(order, alpha, alpha) is Comparison.EQUAL

    def test_prefix_is_smaller(self, order):
        """A proper prefix precedes its extensions."""
        assert clo_compare(order, w("("), w("()")) is Comparison.LESS
        assert clo_compare(order, w("()"), w("(")) is Comparison.GREATER

    def test_wrong_arity(self):
        """The number of groups must match."""
        with pytest.raises(OrderError):
            make_roundrobin_order(3, ROUND_ROBIN_ALPHABET)

    def test_coherence_repair_keeps_coherent_order(self, order):
        """Repairing an already coherent order changes no context's order."""
        repaired = coherence_repair(order)
        for context in ["", "x", "(", "([", "(()", "[[]", "([]", "[(", "[()"]:
            assert str(repaired.order_at(w(context))) == str(order.order_at(w(context)))


class TestCanonicalOrders:
    """Unit tests for concatenation, nested concatenation and lockstep orders."""

    def test_concat_order(self):
        """Every letter of the first component is smaller."""
        assert str(concat_order(TWO_COMPONENTS).order_at(())) == "( < ) < [ < ]"

    def test_nested_concat_order(self):
        """Calls group by group, then the returns."""
        assert str(nested_concat_order(TWO_COMPONENTS).order_at(())) == "( < [ < ) < ]"

    def test_lockstep_order(self):
        """After a call of component 1, component 2 calls next."""
        order = lockstep_order((1, 1), TWO_COMPONENTS)
        assert str(order.order_at(())) == "( < [ < ) < ]"
        assert str(order.order_at(w("(", TWO_COMPONENTS))) == "[ < ( < ) < ]"

    def test_lockstep_speeds_must_match_groups(self):
        """One speed per group."""
        with pytest.raises(OrderError):
            lockstep_order((1, 1, 1), TWO_COMPONENTS)

    def test_lockstep_with_groups(self):
        """Components can be grouped under one speed."""
        order = lockstep_order((1,), TWO_COMPONENTS, groups=[{1, 2}])
        assert order.order_at(()).covers(TWO_COMPONENTS)

    def test_overlapping_groups(self):
        """Groups must partition the components."""
        with pytest.raises(OrderError):
            resolve_groups(TWO_COMPONENTS, [{1, 2}, {2}])
        with pytest.raises(OrderError):
            resolve_groups(TWO_COMPONENTS, [{1}])

    def test_constant_order_single_state(self):
        """A constant order has one state."""
        order = constant_order(TWO_COMPONENTS, LinearOrder(w("([)]", TWO_COMPONENTS)))
        assert len(order.states) == 1
        assert order.as_vpa().complete

    def test_last_pending_component(self):
        """The innermost open call decides."""
        assert last_pending_component(w("([")) == 2
        assert last_pending_component(w("(")) == 1
        assert last_pending_component(w("()")) is None


class TestExclusion:
    """Unit tests for excluded letters."""

    def test_nothing_excluded_keeps_order(self):
        """Lifting with an empty exclusion set changes nothing."""
        order = make_roundrobin_order(2, ROUND_ROBIN_ALPHABET)
        lifted = exclude_letters(order, [], ROUND_ROBIN_ALPHABET)
        for context in ["", "x(", "x(()", "x[[]"]:
            assert str(lifted.order_at(w(context))) == str(order.order_at(w(context)))

    def test_excluded_letters_ranked_as_internals(self):
        """Excluded calls and returns are scheduled with the internals of their component."""
        excluded = [TWO_COMPONENTS["("], TWO_COMPONENTS[")"]]
        base = nested_concat_order(image_alphabet(TWO_COMPONENTS, excluded))
        lifted = exclude_letters(base, excluded, TWO_COMPONENTS)
        assert str(lifted.order_at(())) == "( < ) < [ < ]"
        assert str(lifted.order_at(w("(", TWO_COMPONENTS))) == "( < ) < [ < ]"

    def test_call_without_return_rejected(self):
        """A component may not exclude calls but keep its returns."""
        with pytest.raises(OrderError):
            exclude_letters(concat_order(TWO_COMPONENTS), [TWO_COMPONENTS["("]], TWO_COMPONENTS)

    def test_internal_rejected(self):
        """Only calls and returns can be excluded."""
        order = make_roundrobin_order(2, ROUND_ROBIN_ALPHABET)
        with pytest.raises(OrderError):
            exclude_letters(order, [ROUND_ROBIN_ALPHABET["x"]], ROUND_ROBIN_ALPHABET)


class TestUniformity:
    """Unit tests for the uniformity check."""

    def setup_method(self):
        first = make_alphabet(internals="ab")
        second = make_alphabet(internals="x", component=2)
        self.alphabet = first.disjoint_union(second)
        self.components = [
            Vpa.build(first, initial=["p"], finals=["p"], internals=[("p", "a", "p"), ("p", "b", "p")]),
            Vpa.build(second, initial=["s"], finals=["s"], internals=[("s", "x", "s")]),
        ]

    def test_uniform(self):
        """Separated rank intervals are uniform."""
        order = constant_order(self.alphabet, LinearOrder(self.alphabet.word("abx")))
        assert is_uniform(order, *self.components)

    def test_not_uniform(self):
        """Interleaved rank intervals are not."""
        order = constant_order(self.alphabet, LinearOrder(self.alphabet.word("axb")))
        assert not is_uniform(order, *self.components)


class TestCoherenceRepair:
    """Reducing the full shuffle under the repaired order equals reducing its well-nested part."""

    ALPHABET = FIRST.disjoint_union(SECOND)
    ORDERS = {
        "round-robin": lambda alphabet: make_roundrobin_order(2, alphabet),
        "(1,1)": lambda alphabet: lockstep_order((1, 1), alphabet),
        "(2,1)": lambda alphabet: lockstep_order((2, 1), alphabet),
        "concat": concat_order,
    }

    @pytest.mark.parametrize("seed", range(25))
    @pytest.mark.parametrize("name", list(ORDERS))
    def test_repair_reduces_the_full_shuffle(self, name, seed):
        rng = random.Random(seed)
        languages = [vpg_enumerate(random_grammar(rng, alphabet), 6) for alphabet in (FIRST, SECOND)]
        shuffle = shuffle_languages(*languages, max_len=6, cap=100_000)
        order = self.ORDERS[name](self.ALPHABET)
        repaired = ref_reduction(coherence_repair(order), shuffle, maxlen=6)
        assert repaired == ref_reduction(order, shuffle, wn_only=True, maxlen=6)

    def test_crossing_return_is_demoted(self):
        """After ( [ the return ) would cross the pending [ and ranks last."""
        order = lockstep_order((1, 1), TWO_COMPONENTS)
        repaired = coherence_repair(order)
        assert repaired.order_at(w("([", TWO_COMPONENTS)).compare(
            TWO_COMPONENTS[")"], TWO_COMPONENTS["]"]
        ) is Comparison.GREATER
