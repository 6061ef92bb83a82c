"""Unit tests for alphabets, words, automata and grammars."""

import pytest

from hyperprod.core.exceptions import AlphabetError, AutomatonError, GrammarError
from hyperprod.vpl.alphabet import BOTTOM, Letter, LetterKind, VPAlphabet, make_alphabet
from hyperprod.vpl.dump import dump_vpa, dump_vpg, label
from hyperprod.vpl.emptiness import vpa_is_empty, vpa_witness
from hyperprod.vpl.vpa import (
    Vpa,
    reverse_vpa,
    vpa_accepts,
    vpa_complement,
    vpa_complete,
    vpa_intersect,
    well_matched_vpa,
    wn_shuffle,
)
from hyperprod.vpl.vpg import (
    Production,
    Vpg,
    concat_vpg,
    reverse_vpg,
    vpa_to_vpg,
    vpg_enumerate,
    vpg_to_vpa,
    vpg_trim,
    vpg_uniformize,
)
from hyperprod.vpl.words import (
    is_well_matched,
    is_well_nested,
    matching_of,
    project,
    reverse_word,
    word_str,
)

# "(" and ")" belong to component 1, "[" and "]" to component 2
TWO_COMPONENTS = VPAlphabet(
    [
        Letter("(", LetterKind.CALL, 1),
        Letter(")", LetterKind.RETURN, 1),
        Letter("[", LetterKind.CALL, 2),
        Letter("]", LetterKind.RETURN, 2),
    ]
)

PARENS = make_alphabet("(", ")", "a")


def balanced_parens() -> Vpa:
    """Deterministic VPA for (^n )^n, with linear acceptance."""
    return Vpa.build(
        PARENS,
        initial=[0],
        finals=[0, 1],
        calls=[(0, "(", 0, "g")],
        returns=[(0, ")", "g", 1), (1, ")", "g", 1)],
    )


def a_then_pair() -> Vpa:
    """VPA accepting exactly the word a()."""
    return Vpa.build(
        PARENS,
        initial=["s0"],
        finals=["s3"],
        internals=[("s0", "a", "s1")],
        calls=[("s1", "(", "s2", "g")],
        returns=[("s2", ")", "g", "s3")],
    )


def words(alphabet: VPAlphabet, *texts: str):
    return {alphabet.word(text) for text in texts}


class TestAlphabet:
    """Unit tests for letters and alphabets."""

    def test_payload_does_not_affect_equality(self):
        """Letters with different payloads but the same id, kind and component are equal."""
        assert Letter("a", LetterKind.INTERNAL, payload="x") == Letter("a", LetterKind.INTERNAL, payload="y")

    def test_conflicting_ids_rejected(self):
        """The same id may not be used with two different kinds."""
        with pytest.raises(AlphabetError):
            VPAlphabet([Letter("a", LetterKind.CALL), Letter("a", LetterKind.RETURN)])

    def test_partitions(self):
        """Calls, returns and internals are separated."""
        alphabet = make_alphabet("c", "r", "ab")
        assert [l.id for l in alphabet.calls] == ["c"]
        assert [l.id for l in alphabet.returns] == ["r"]
        assert [l.id for l in alphabet.internals] == ["a", "b"]

    def test_unknown_letter(self):
        """Looking up an unknown id raises AlphabetError; get returns None."""
        with pytest.raises(AlphabetError):
            PARENS["z"]
        assert PARENS.get("z") is None

    def test_disjoint_union_rejects_shared_component(self):
        """Alphabets of the same component cannot be joined disjointly."""
        with pytest.raises(AlphabetError):
            make_alphabet("c", "r").disjoint_union(make_alphabet("d", "s"))

    def test_disjoint_union(self):
        """Alphabets of distinct components are joined."""
        joined = make_alphabet("c", "r").disjoint_union(make_alphabet("d", "s", component=2))
        assert joined.components == (1, 2)
        assert len(joined) == 4

    def test_mirrored_swaps_calls_and_returns(self):
        """Mirroring turns calls into returns and keeps internals."""
        mirrored = PARENS.mirrored()
        assert mirrored["("].is_return
        assert mirrored[")"].is_call
        assert mirrored["a"].is_internal

    def test_word_parsing(self):
        """Words are parsed per character, or split on whitespace."""
        assert [l.id for l in PARENS.word("(a)")] == ["(", "a", ")"]
        assert [l.id for l in PARENS.word("( a )")] == ["(", "a", ")"]


class TestWords:
    """Unit tests for matching and well-nestedness."""

    def test_matching_is_stack_based(self):
        """Calls and returns are matched by a stack, whatever their component."""
        relation = matching_of(TWO_COMPONENTS.word("([(]))"))
        assert relation.matched() == ((1, 6), (2, 5), (3, 4))

    def test_pending_positions(self):
        """Unmatched calls and returns are reported as pending."""
        relation = matching_of(TWO_COMPONENTS.word(")(("))
        assert relation.pending_returns == (1,)
        assert relation.pending_calls == (2, 3)

    def test_syntactic_rejects_pending_return(self):
        """Syntactic runs never pop an empty stack."""
        with pytest.raises(AlphabetError):
            matching_of(TWO_COMPONENTS.word(")"), syntactic=True)

    def test_well_matched(self):
        """Well-matched words have no pending call or return."""
        assert is_well_matched(TWO_COMPONENTS.word("([])"))
        assert not is_well_matched(TWO_COMPONENTS.word("(["))
        assert not is_well_matched(TWO_COMPONENTS.word(")("))
        assert is_well_matched(())

    def test_well_nested(self):
        """Crossing components in a matched pair breaks well-nestedness."""
        assert is_well_nested(TWO_COMPONENTS.word("([()])"))
        assert not is_well_nested(TWO_COMPONENTS.word("([(]))"))

    def test_projection(self):
        """Projection keeps the letters of one component in order."""
        word = TWO_COMPONENTS.word("([()])")
        assert word_str(project(word, 1)) == "(())"
        assert word_str(project(word, 2)) == "[]"

    def test_reverse_word(self):
        """Reversal mirrors every letter."""
        reversed_ = reverse_word(PARENS.word("a()"))
        assert [l.id for l in reversed_] == [")", "(", "a"]
        assert reversed_[0].is_call and reversed_[1].is_return

    def test_word_str_multi_character_ids(self):
        """Multi-character ids are joined with a separator."""
        word = (Letter("q := 0", LetterKind.INTERNAL), Letter("a", LetterKind.INTERNAL))
        assert word_str(word) == "q := 0 · a"


class TestVpa:
    """Unit tests for automata and their operations."""

    def test_accepts(self):
        """Acceptance is linear unless well-matched acceptance is requested."""
        automaton = balanced_parens()
        assert vpa_accepts(automaton, PARENS.word("(())"))
        assert vpa_accepts(automaton, PARENS.word("(("))
        assert not vpa_accepts(automaton, PARENS.word("(("), well_matched=True)
        assert not vpa_accepts(automaton, PARENS.word("())"))

    def test_build_rejects_wrong_letter_kind(self):
        """A call letter cannot label an internal transition."""
        with pytest.raises(AutomatonError):
            Vpa.build(PARENS, initial=[0], finals=[0], internals=[(0, "(", 0)])

    def test_properties(self):
        """Size, transition count, determinism and completeness."""
        automaton = balanced_parens()
        assert automaton.size == 2
        assert automaton.transition_count == 3
        assert automaton.deterministic
        assert not automaton.complete

    def test_complete_keeps_language(self):
        """Completion adds a sink without changing the language."""
        completed = vpa_complete(balanced_parens())
        assert completed.complete
        assert vpa_complete(completed) is completed
        assert vpa_accepts(completed, PARENS.word("(())"))
        assert not vpa_accepts(completed, PARENS.word("a"))

    def test_complement(self):
        """The complement accepts exactly the rejected words."""
        complement = vpa_complement(balanced_parens())
        assert not vpa_accepts(complement, PARENS.word("("))
        assert vpa_accepts(complement, PARENS.word(")"))
        assert vpa_accepts(complement, PARENS.word("a"))

    def test_complement_requires_determinism(self):
        """Nondeterministic automata cannot be complemented directly."""
        nondeterministic = Vpa.build(PARENS, initial=[0], finals=[1], internals=[(0, "a", 0), (0, "a", 1)])
        with pytest.raises(AutomatonError):
            vpa_complement(nondeterministic)

    def test_intersect(self):
        """Intersection with the well-matched words drops pending calls."""
        product = vpa_intersect(balanced_parens(), well_matched_vpa(PARENS))
        assert vpa_accepts(product, PARENS.word("(())"))
        assert not vpa_accepts(product, PARENS.word("(("))

    def test_intersect_requires_same_alphabet(self):
        """Automata over different alphabets cannot be intersected."""
        with pytest.raises(AlphabetError):
            vpa_intersect(balanced_parens(), well_matched_vpa(make_alphabet("(", ")")))

    def test_return_on_empty_stack_pops_bottom(self):
        """A return read on an empty stack uses ⊥ transitions."""
        automaton = Vpa.build(PARENS, initial=[0], finals=[1], returns=[(0, ")", BOTTOM, 1)])
        assert vpa_accepts(automaton, PARENS.word(")"))

    def test_wn_shuffle(self):
        """The well-nested shuffle interleaves the components."""
        first = Vpa.build(make_alphabet(internals="a"), initial=[0], finals=[1], internals=[(0, "a", 1)])
        second = Vpa.build(make_alphabet(internals="x", component=2), initial=[0], finals=[1], internals=[(0, "x", 1)])
        shuffle = wn_shuffle(first, second)
        assert {word_str(w) for w in vpg_enumerate(vpa_to_vpg(shuffle), 4)} == {"ax", "xa"}

    def test_wn_shuffle_forbids_crossing(self):
        """A return cannot pop a call of another component."""
        first = Vpa.build(make_alphabet("(", ")", component=1), initial=[0], finals=[0], calls=[(0, "(", 0, "g")], returns=[(0, ")", "g", 0)])
        second = Vpa.build(make_alphabet("[", "]", component=2), initial=[0], finals=[0], calls=[(0, "[", 0, "h")], returns=[(0, "]", "h", 0)])
        shuffle = wn_shuffle(first, second)
        assert vpa_accepts(shuffle, TWO_COMPONENTS.word("([])"), well_matched=True)
        assert not vpa_accepts(shuffle, TWO_COMPONENTS.word("([)]"))

    def test_witness(self):
        """The witness is a shortest accepted word."""
        assert word_str(vpa_witness(a_then_pair())) == "a()"
        assert vpa_witness(balanced_parens(), well_matched=True) == ()

    def test_empty(self):
        """An automaton without reachable final states is empty."""
        automaton = Vpa.build(PARENS, initial=[0], finals=[], internals=[(0, "a", 0)])
        assert vpa_witness(automaton) is None
        assert vpa_is_empty(automaton)

    def test_reverse(self):
        """The reversed automaton accepts the reversed words."""
        word = PARENS.word("a()")
        assert vpa_accepts(reverse_vpa(a_then_pair()), reverse_word(word), well_matched=True)


def paren_grammar() -> Vpg:
    """S → ε | ( S ) E, E → ε."""
    return Vpg.build(
        PARENS,
        [
            Production.epsilon("S"),
            Production.call("S", PARENS["("], "S", PARENS[")"], "E"),
            Production.epsilon("E"),
        ],
        ["S"],
    )


class TestVpg:
    """Unit tests for grammars."""

    def test_enumerate(self):
        """Enumeration returns every word up to the length bound."""
        assert {word_str(w) for w in vpg_enumerate(paren_grammar(), 4)} == {"", "()", "(())"}

    def test_production_may_not_start_with_return(self):
        """Return-headed productions are malformed."""
        with pytest.raises(GrammarError):
            Vpg.build(PARENS, [Production.internal("S", PARENS[")"], "S")], ["S"])

    def test_vpa_to_vpg(self):
        """The grammar of an automaton derives its well-matched words."""
        grammar = vpa_to_vpg(a_then_pair())
        assert vpg_enumerate(grammar, 6) == {PARENS.word("a()")}

    def test_vpg_to_vpa(self):
        """The automaton of a grammar accepts the grammar's words."""
        automaton = vpg_to_vpa(paren_grammar())
        assert vpa_accepts(automaton, PARENS.word("(())"), well_matched=True)
        assert not vpa_accepts(automaton, PARENS.word("()("), well_matched=True)

    def test_trim_drops_unreachable(self):
        """Unreachable and non-generating nonterminals are removed."""
        grammar = Vpg.build(
            PARENS,
            [
                Production.epsilon("S"),
                Production.epsilon("Unused"),
                Production.internal("S", PARENS["a"], "Dead"),
            ],
            ["S"],
        )
        trimmed = vpg_trim(grammar)
        assert trimmed.productions == frozenset([Production.epsilon("S")])

    def test_uniformize(self):
        """Mixed nonterminals are split by shape, keeping the language."""
        grammar = Vpg.build(
            PARENS,
            [Production.epsilon("S"), Production.internal("S", PARENS["a"], "S")],
            ["S"],
        )
        assert not grammar.is_uniform
        uniform = vpg_uniformize(grammar)
        assert uniform.is_uniform
        assert {word_str(w) for w in vpg_enumerate(uniform, 3)} == {"", "a", "aa", "aaa"}

    def test_concat(self):
        """Concatenation appends the second language to the first."""
        first = Vpg.build(PARENS, [Production.internal("S", PARENS["a"], "E"), Production.epsilon("E")], ["S"])
        assert {word_str(w) for w in vpg_enumerate(concat_vpg(first, paren_grammar()), 5)} == {"a", "a()", "a(())"}

    def test_reverse(self):
        """The reversed grammar derives the mirrored reversals."""
        reversed_ = reverse_vpg(vpa_to_vpg(a_then_pair()))
        assert vpg_enumerate(reversed_, 6) == {reverse_word(PARENS.word("a()"))}


class TestDump:
    """Unit tests for the debug format."""

    def test_dump_vpa_is_sorted_and_stable(self):
        """Dumps start with a header and are identical across calls."""
        text = dump_vpa(balanced_parens())
        assert text.startswith("# vpa\n")
        assert "letter ( call 1" in text
        assert "call 0 ( 0 g" in text
        assert text == dump_vpa(balanced_parens())

    def test_dump_vpg(self):
        """Grammar dumps list the start symbols and productions."""
        text = dump_vpg(paren_grammar())
        assert text.startswith("# vpg\n")
        assert "start S" in text
        assert "S -> ( S ) E" in text
        assert "E -> ε" in text

    def test_label(self):
        """Labels are compact and whitespace-free."""
        assert label((1, True)) == "(1,T)"
        assert label("a b") == "a_b"
        assert label(frozenset({"b", "a"})) == "{a,b}"
