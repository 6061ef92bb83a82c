"""Visibly pushdown automata with linear acceptance, and their closure constructions."""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from hyperprod.core.exceptions import AlphabetError, AutomatonError
from hyperprod.core.logging import logger
from hyperprod.vpl.alphabet import BOTTOM, Letter, VPAlphabet, stable_key

State = Hashable
StackSymbol = Hashable
LetterRef = Union[Letter, str]


class Sentinel(Enum):
    """Names reserved for states and stack symbols introduced by constructions."""

    SINK = "sink"
    SINK_SYMBOL = "sink-γ"
    TOP = "top"
    NESTED = "nested"

    def __repr__(self) -> str:
        return self.value


@dataclass(frozen=True)
class InternalTransition:
    source: State
    letter: Letter
    target: State


@dataclass(frozen=True)
class CallTransition:
    source: State
    letter: Letter
    target: State
    push: StackSymbol


@dataclass(frozen=True)
class ReturnTransition:
    source: State
    letter: Letter
    pop: StackSymbol
    target: State


@dataclass(frozen=True, eq=False)
class Vpa:
    """A visibly pushdown automaton. Calls push, returns pop (⊥ on an empty stack), internals keep the stack.

    Acceptance is linear: a run accepts when it ends in a final state, whatever the stack holds.
    """

    alphabet: VPAlphabet
    states: FrozenSet[State]
    initial: FrozenSet[State]
    finals: FrozenSet[State]
    internals: FrozenSet[InternalTransition]
    calls: FrozenSet[CallTransition]
    returns: FrozenSet[ReturnTransition]
    stack_symbols: FrozenSet[StackSymbol]

    def __post_init__(self):
        if not self.initial <= self.states:
            raise AutomatonError("Initial states must be states")
        if not self.finals <= self.states:
            raise AutomatonError("Final states must be states")
        if BOTTOM in self.stack_symbols:
            raise AutomatonError("⊥ is implicit and may not be declared as a stack symbol")
        for t in self.internals:
            self._check(t.source, t.target, t.letter, "internal")
        for t in self.calls:
            self._check(t.source, t.target, t.letter, "call")
            if t.push is BOTTOM:
                raise AutomatonError(f"Call transition on {t.letter.id!r} pushes ⊥")
            if t.push not in self.stack_symbols:
                raise AutomatonError(f"Undeclared stack symbol {t.push!r}")
        for t in self.returns:
            self._check(t.source, t.target, t.letter, "return")
            if t.pop is not BOTTOM and t.pop not in self.stack_symbols:
                raise AutomatonError(f"Undeclared stack symbol {t.pop!r}")

    def _check(self, source: State, target: State, letter: Letter, kind: str) -> None:
        if source not in self.states or target not in self.states:
            raise AutomatonError(f"Transition on {letter.id!r} leaves the state set")
        if letter not in self.alphabet:
            raise AutomatonError(f"Letter {letter.id!r} is not in the alphabet")
        if letter.kind.value != kind:
            raise AutomatonError(f"Letter {letter.id!r} is a {letter.kind.value}, used as {kind}")

    # -- construction ----------------------------------------------------------
    @classmethod
    def build(
        cls,
        alphabet: VPAlphabet,
        initial: Iterable[State],
        finals: Iterable[State],
        internals: Iterable[Union[InternalTransition, Tuple[State, LetterRef, State]]] = (),
        calls: Iterable[Union[CallTransition, Tuple[State, LetterRef, State, StackSymbol]]] = (),
        returns: Iterable[Union[ReturnTransition, Tuple[State, LetterRef, StackSymbol, State]]] = (),
        states: Optional[Iterable[State]] = None,
    ) -> "Vpa":
        """Build a VPA, deriving the state set and stack alphabet from the transitions.

        Transitions may be given as tuples with letters referenced by id.
        """

        def letter(ref: LetterRef) -> Letter:
            return ref if isinstance(ref, Letter) else alphabet[ref]

        internal_set = frozenset(
            t if isinstance(t, InternalTransition) else InternalTransition(t[0], letter(t[1]), t[2])
            for t in internals
        )
        call_set = frozenset(
            t if isinstance(t, CallTransition) else CallTransition(t[0], letter(t[1]), t[2], t[3])
            for t in calls
        )
        return_set = frozenset(
            t if isinstance(t, ReturnTransition) else ReturnTransition(t[0], letter(t[1]), t[2], t[3])
            for t in returns
        )
        initial_set = frozenset(initial)
        final_set = frozenset(finals)
        all_states: Set[State] = set(states or ()) | initial_set | final_set
        for t in internal_set:
            all_states.update((t.source, t.target))
        for t in call_set:
            all_states.update((t.source, t.target))
        for t in return_set:
            all_states.update((t.source, t.target))
        symbols = {t.push for t in call_set} | {t.pop for t in return_set if t.pop is not BOTTOM}
        return cls(
            alphabet=alphabet,
            states=frozenset(all_states),
            initial=initial_set,
            finals=final_set,
            internals=internal_set,
            calls=call_set,
            returns=return_set,
            stack_symbols=frozenset(symbols),
        )

    # -- indexes ---------------------------------------------------------------
    @cached_property
    def internal_index(self) -> Dict[Tuple[State, Letter], Tuple[State, ...]]:
        index: Dict[Tuple[State, Letter], List[State]] = {}
        for t in self.internals:
            index.setdefault((t.source, t.letter), []).append(t.target)
        return {k: tuple(sorted(v, key=stable_key)) for k, v in index.items()}

    @cached_property
    def call_index(self) -> Dict[Tuple[State, Letter], Tuple[Tuple[State, StackSymbol], ...]]:
        index: Dict[Tuple[State, Letter], List[Tuple[State, StackSymbol]]] = {}
        for t in self.calls:
            index.setdefault((t.source, t.letter), []).append((t.target, t.push))
        return {k: tuple(sorted(v, key=stable_key)) for k, v in index.items()}

    @cached_property
    def return_index(self) -> Dict[Tuple[State, Letter, StackSymbol], Tuple[State, ...]]:
        index: Dict[Tuple[State, Letter, StackSymbol], List[State]] = {}
        for t in self.returns:
            index.setdefault((t.source, t.letter, t.pop), []).append(t.target)
        return {k: tuple(sorted(v, key=stable_key)) for k, v in index.items()}

    @cached_property
    def outgoing(self) -> Dict[State, FrozenSet[Letter]]:
        """Letters with at least one transition out of each state."""
        out: Dict[State, Set[Letter]] = {q: set() for q in self.states}
        for t in self.internals:
            out[t.source].add(t.letter)
        for t in self.calls:
            out[t.source].add(t.letter)
        for t in self.returns:
            out[t.source].add(t.letter)
        return {q: frozenset(v) for q, v in out.items()}

    def step_internal(self, state: State, letter: Letter) -> Tuple[State, ...]:
        return self.internal_index.get((state, letter), ())

    def step_call(self, state: State, letter: Letter) -> Tuple[Tuple[State, StackSymbol], ...]:
        return self.call_index.get((state, letter), ())

    def step_return(self, state: State, letter: Letter, top: StackSymbol) -> Tuple[State, ...]:
        return self.return_index.get((state, letter, top), ())

    # -- properties ------------------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def transition_count(self) -> int:
        return len(self.internals) + len(self.calls) + len(self.returns)

    @cached_property
    def complete(self) -> bool:
        """Every state has a successor on every letter, and on every (return, stack top) pair."""
        tops = [BOTTOM, *self.stack_symbols]
        for q in self.states:
            for a in self.alphabet:
                if a.is_internal and not self.step_internal(q, a):
                    return False
                if a.is_call and not self.step_call(q, a):
                    return False
                if a.is_return and any(not self.step_return(q, a, g) for g in tops):
                    return False
        return True

    @cached_property
    def deterministic(self) -> bool:
        if len(self.initial) > 1:
            return False
        return all(len(v) <= 1 for v in self.internal_index.values()) and all(
            len(v) <= 1 for v in self.call_index.values()
        ) and all(len(v) <= 1 for v in self.return_index.values())

    def sorted_states(self) -> List[State]:
        return sorted(self.states, key=stable_key)

    def __repr__(self) -> str:
        return (
            f"Vpa(states={len(self.states)}, stack_symbols={len(self.stack_symbols)}, "
            f"transitions={self.transition_count})"
        )


def explore_vpa(
    alphabet: VPAlphabet,
    initial: Iterable[State],
    is_final: Callable[[State], bool],
    internal_moves: Callable[[State], Iterable[Tuple[Letter, State]]],
    call_moves: Callable[[State], Iterable[Tuple[Letter, State, StackSymbol]]],
    return_moves: Callable[[State, StackSymbol], Iterable[Tuple[Letter, State]]],
    state_limit: Optional[int] = None,
) -> Vpa:
    """Build the reachable part of an implicitly given VPA.

    Return moves are queried for every reached state against ⊥ and every stack symbol pushed so
    far, until neither the state set nor the pushed symbols grow.
    """
    seen: Set[State] = set()
    queue: deque = deque()
    symbols: Set[StackSymbol] = set()
    internals: Set[InternalTransition] = set()
    calls: Set[CallTransition] = set()
    returns: Set[ReturnTransition] = set()
    popped: Set[Tuple[State, StackSymbol]] = set()

    def reach(state: State) -> None:
        if state not in seen:
            seen.add(state)
            queue.append(state)
            if state_limit is not None and len(seen) > state_limit:
                raise AutomatonError(f"State limit {state_limit} exceeded while exploring")

    initial = list(initial)
    for q in initial:
        reach(q)

    while True:
        while queue:
            q = queue.popleft()
            for letter, target in internal_moves(q):
                internals.add(InternalTransition(q, letter, target))
                reach(target)
            for letter, target, push in call_moves(q):
                calls.add(CallTransition(q, letter, target, push))
                symbols.add(push)
                reach(target)
        pending = [
            (q, g) for q in list(seen) for g in (BOTTOM, *symbols) if (q, g) not in popped
        ]
        if not pending:
            break
        for q, g in pending:
            popped.add((q, g))
            for letter, target in return_moves(q, g):
                returns.add(ReturnTransition(q, letter, g, target))
                reach(target)

    return Vpa(
        alphabet=alphabet,
        states=frozenset(seen),
        initial=frozenset(initial) & frozenset(seen),
        finals=frozenset(q for q in seen if is_final(q)),
        internals=frozenset(internals),
        calls=frozenset(calls),
        returns=frozenset(returns),
        stack_symbols=frozenset(symbols),
    )


# -- semantics -----------------------------------------------------------------


def vpa_accepts(automaton: Vpa, word: Sequence[Letter], well_matched: bool = False) -> bool:
    """Simulate the set of configurations reached on ``word``.

    A return read on an empty stack pops ⊥ and leaves the stack empty. With ``well_matched``
    the final stack must also be empty.
    """
    configs: Set[Tuple[State, Tuple[StackSymbol, ...]]] = {(q, ()) for q in automaton.initial}
    for letter in word:
        if letter not in automaton.alphabet:
            return False
        following: Set[Tuple[State, Tuple[StackSymbol, ...]]] = set()
        for state, stack in configs:
            if letter.is_internal:
                following.update((t, stack) for t in automaton.step_internal(state, letter))
            elif letter.is_call:
                following.update((t, stack + (g,)) for t, g in automaton.step_call(state, letter))
            else:
                top = stack[-1] if stack else BOTTOM
                following.update((t, stack[:-1]) for t in automaton.step_return(state, letter, top))
        configs = following
        if not configs:
            return False
    return any(q in automaton.finals and (not well_matched or not stack) for q, stack in configs)


def _fresh(base: Hashable, taken: FrozenSet) -> Hashable:
    name = base
    while name in taken:
        name = (base, name)
    return name


def vpa_complete(automaton: Vpa) -> Vpa:
    """Add a non-final sink state receiving every missing transition."""
    if automaton.complete:
        return automaton
    sink = _fresh(Sentinel.SINK, automaton.states)
    sink_symbol = _fresh(Sentinel.SINK_SYMBOL, automaton.stack_symbols)
    states = automaton.states | {sink}
    symbols = automaton.stack_symbols | {sink_symbol}
    internals = set(automaton.internals)
    calls = set(automaton.calls)
    returns = set(automaton.returns)
    for q in states:
        for a in automaton.alphabet:
            if a.is_internal and not automaton.step_internal(q, a):
                internals.add(InternalTransition(q, a, sink))
            elif a.is_call and not automaton.step_call(q, a):
                calls.add(CallTransition(q, a, sink, sink_symbol))
            elif a.is_return:
                for g in (BOTTOM, *symbols):
                    if not automaton.step_return(q, a, g):
                        returns.add(ReturnTransition(q, a, g, sink))
    logger.debug(f"Completed VPA with sink state ({len(states)} states)")
    return Vpa(
        alphabet=automaton.alphabet,
        states=frozenset(states),
        initial=automaton.initial,
        finals=automaton.finals,
        internals=frozenset(internals),
        calls=frozenset(calls),
        returns=frozenset(returns),
        stack_symbols=frozenset(symbols),
    )


def vpa_complement(automaton: Vpa) -> Vpa:
    """Complement of a deterministic VPA: complete it, then flip the final states."""
    if not automaton.deterministic:
        raise AutomatonError("Complementation requires a deterministic VPA")
    complete = vpa_complete(automaton)
    return Vpa(
        alphabet=complete.alphabet,
        states=complete.states,
        initial=complete.initial,
        finals=complete.states - complete.finals,
        internals=complete.internals,
        calls=complete.calls,
        returns=complete.returns,
        stack_symbols=complete.stack_symbols,
    )


def vpa_intersect(left: Vpa, right: Vpa) -> Vpa:
    """Synchronous product over paired states and paired stack symbols."""
    if left.alphabet != right.alphabet:
        raise AlphabetError("Intersection requires identical alphabets")
    letters = left.alphabet.letters

    def internal_moves(state):
        p, q = state
        for a in letters:
            if a.is_internal:
                for p2 in left.step_internal(p, a):
                    for q2 in right.step_internal(q, a):
                        yield a, (p2, q2)

    def call_moves(state):
        p, q = state
        for c in letters:
            if c.is_call:
                for p2, g in left.step_call(p, c):
                    for q2, h in right.step_call(q, c):
                        yield c, (p2, q2), (g, h)

    def return_moves(state, top):
        p, q = state
        g, h = (BOTTOM, BOTTOM) if top is BOTTOM else top
        for r in letters:
            if r.is_return:
                for p2 in left.step_return(p, r, g):
                    for q2 in right.step_return(q, r, h):
                        yield r, (p2, q2)

    product = explore_vpa(
        left.alphabet,
        [(p, q) for p in sorted(left.initial, key=stable_key) for q in sorted(right.initial, key=stable_key)],
        lambda s: s[0] in left.finals and s[1] in right.finals,
        internal_moves,
        call_moves,
        return_moves,
    )
    logger.debug(f"Intersection: {left.size} x {right.size} -> {product.size} reachable states")
    return product


def wn_shuffle(*automata: Vpa) -> Vpa:
    """Well-nested shuffle of automata over disjoint alphabets.

    Each automaton moves on its own letters; a call of automaton i pushes (i, γ) and only a return
    of the same automaton can pop it, which rules out crossing call/return pairs.
    """
    if not automata:
        raise AutomatonError("wn_shuffle needs at least one automaton")
    alphabet = automata[0].alphabet.disjoint_union(*(a.alphabet for a in automata[1:]))
    owner: Dict[Letter, int] = {}
    for index, automaton in enumerate(automata):
        for letter in automaton.alphabet:
            owner[letter] = index

    def internal_moves(state):
        for index, automaton in enumerate(automata):
            for a in automaton.alphabet.internals:
                for target in automaton.step_internal(state[index], a):
                    yield a, state[:index] + (target,) + state[index + 1 :]

    def call_moves(state):
        for index, automaton in enumerate(automata):
            for c in automaton.alphabet.calls:
                for target, g in automaton.step_call(state[index], c):
                    yield c, state[:index] + (target,) + state[index + 1 :], (index, g)

    def return_moves(state, top):
        for index, automaton in enumerate(automata):
            if top is BOTTOM:
                pop = BOTTOM
            elif top[0] == index:
                pop = top[1]
            else:
                continue
            for r in automaton.alphabet.returns:
                for target in automaton.step_return(state[index], r, pop):
                    yield r, state[:index] + (target,) + state[index + 1 :]

    initial = [()]
    for automaton in automata:
        initial = [s + (q,) for s in initial for q in sorted(automaton.initial, key=stable_key)]
    product = explore_vpa(
        alphabet,
        initial,
        lambda s: all(q in a.finals for q, a in zip(s, automata)),
        internal_moves,
        call_moves,
        return_moves,
    )
    logger.debug(f"Well-nested shuffle of {len(automata)} automata: {product.size} states")
    return product


def well_matched_vpa(alphabet: VPAlphabet) -> Vpa:
    """Deterministic VPA accepting exactly the well-matched words over ``alphabet``."""
    top, nested = Sentinel.TOP, Sentinel.NESTED
    internals = [(q, a, q) for q in (top, nested) for a in alphabet.internals]
    calls = [(q, c, nested, q) for q in (top, nested) for c in alphabet.calls]
    returns = [(nested, r, q, q) for q in (top, nested) for r in alphabet.returns]
    return Vpa.build(
        alphabet,
        initial=[top],
        finals=[top],
        internals=internals,
        calls=calls,
        returns=returns,
        states=[top, nested],
    )


def restrict_well_matched(automaton: Vpa) -> Vpa:
    """Intersect with the well-matched words, so that linear acceptance becomes exact."""
    return vpa_intersect(automaton, well_matched_vpa(automaton.alphabet))


def reverse_vpa(automaton: Vpa, well_matched: bool = True) -> Vpa:
    """Automaton over the mirrored alphabet whose well-matched words are the reversals of L(A)'s.

    Transitions are flipped, calls become returns and vice versa, ⊥-pops are dropped. With
    ``well_matched`` the result is restricted to well-matched words.
    """
    alphabet = automaton.alphabet.mirrored()
    internals = [(t.target, t.letter.mirrored(), t.source) for t in automaton.internals]
    returns = [(t.target, t.letter.mirrored(), t.push, t.source) for t in automaton.calls]
    calls = [
        (t.target, t.letter.mirrored(), t.source, t.pop)
        for t in automaton.returns
        if t.pop is not BOTTOM
    ]
    reversed_automaton = Vpa.build(
        alphabet,
        initial=automaton.finals,
        finals=automaton.initial,
        internals=internals,
        calls=calls,
        returns=returns,
        states=automaton.states,
    )
    if well_matched:
        return restrict_well_matched(reversed_automaton)
    return reversed_automaton
