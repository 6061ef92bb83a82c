"""Greedy product of component automata under a uniform order.

At every product state only the component owning the smallest enabled letter may move. With a
uniform order this is enough to keep exactly the minimal interleavings, and the product never
needs the sleep sets of the generic construction.
"""

from dataclasses import dataclass
from math import prod
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Tuple

from hyperprod.core.exceptions import ReductionError
from hyperprod.core.logging import logger
from hyperprod.orders.automaton import OrderAutomaton
from hyperprod.orders.uniform import is_uniform
from hyperprod.vpl.alphabet import BOTTOM, Letter, LetterKind, stable_key
from hyperprod.vpl.vpa import Vpa, explore_vpa


@dataclass(frozen=True)
class Copy:
    """A state split off from ``state`` during normalization."""

    state: Hashable
    role: str

    def __repr__(self) -> str:
        return f"{self.state!r}#{self.role}"


@dataclass(frozen=True)
class ProductBuild:
    automaton: Vpa
    state_bound: int
    normalized: Tuple[Vpa, ...]


def letter_class(letter: Letter, excluded: FrozenSet[Letter] = frozenset()) -> LetterKind:
    """Excluded calls and returns are scheduled like internals, so they share the internal class."""
    return LetterKind.INTERNAL if letter in excluded else letter.kind


def _rebuild(automaton: Vpa, images, source, initial: Iterable, finals: Iterable) -> Vpa:
    return Vpa.build(
        automaton.alphabet,
        initial=initial,
        finals=finals,
        internals=[
            (source(t.source, t.letter), t.letter, target)
            for t in automaton.internals
            for target in images(t.target)
        ],
        calls=[
            (source(t.source, t.letter), t.letter, target, t.push)
            for t in automaton.calls
            for target in images(t.target)
        ],
        returns=[
            (source(t.source, t.letter), t.letter, t.pop, target)
            for t in automaton.returns
            for target in images(t.target)
        ],
        states=[q for state in automaton.states for q in images(state)],
    )


def separate_final_states(automaton: Vpa) -> Vpa:
    """Give every final state with outgoing transitions a final twin without any."""
    split = {q for q in automaton.finals if automaton.outgoing.get(q)}
    if not split:
        return automaton

    def images(q):
        return [q, Copy(q, "end")] if q in split else [q]

    return _rebuild(
        automaton,
        images,
        lambda q, letter: q,
        [i for q in automaton.initial for i in images(q)],
        [Copy(q, "end") if q in split else q for q in automaton.finals],
    )


def separate_letter_classes(automaton: Vpa, excluded: FrozenSet[Letter] = frozenset()) -> Vpa:
    """Split states so that all outgoing letters of a state have the same class."""
    classes: Dict[Hashable, List[LetterKind]] = {}
    for q, letters in automaton.outgoing.items():
        kinds = sorted({letter_class(a, excluded) for a in letters}, key=lambda k: k.value)
        if len(kinds) > 1:
            classes[q] = kinds
    if not classes:
        return automaton

    def images(q):
        return [Copy(q, kind.value) for kind in classes[q]] if q in classes else [q]

    def source(q, letter: Letter):
        return Copy(q, letter_class(letter, excluded).value) if q in classes else q

    return _rebuild(
        automaton,
        images,
        source,
        [i for q in automaton.initial for i in images(q)],
        [i for q in automaton.finals for i in images(q)],
    )


def normalize_component(automaton: Vpa, excluded: Iterable[Letter] = ()) -> Vpa:
    excluded = frozenset(excluded)
    normalized = separate_letter_classes(separate_final_states(automaton), excluded)
    if normalized is not automaton:
        logger.debug(f"Normalized component: {automaton.size} -> {normalized.size} states")
    return normalized


def build_optimized_product(
    order: OrderAutomaton, *automata: Vpa, excluded: Iterable[Letter] = ()
) -> ProductBuild:
    if len(automata) < 2:
        raise ReductionError("The optimized product needs at least two components")
    excluded = frozenset(excluded)
    normalized = tuple(normalize_component(a, excluded) for a in automata)
    alphabet = normalized[0].alphabet.disjoint_union(*(a.alphabet for a in normalized[1:]))
    if alphabet != order.alphabet:
        raise ReductionError("The order and the components are over different alphabets")
    if not is_uniform(order, *normalized):
        raise ReductionError(f"Order {order.name} is not uniform for these components")
    owner: Dict[Letter, int] = {a: i for i, automaton in enumerate(normalized) for a in automaton.alphabet}

    def enabled(states: Tuple, top) -> List[Letter]:
        letters: List[Letter] = []
        for i, (q, automaton) in enumerate(zip(states, normalized)):
            pop = BOTTOM if top is BOTTOM else (top[1] if top[0] == i else None)
            for a in automaton.outgoing.get(q, ()):
                if not a.is_return or (pop is not None and automaton.step_return(q, a, pop)):
                    letters.append(a)
        return letters

    def mover(state) -> Optional[int]:
        states, q_order, top = state
        letters = enabled(states, top)
        if not letters:
            return None
        rank = order.orders[q_order].rank
        return owner[min(letters, key=lambda a: rank[a])]

    def internal_moves(state):
        i = mover(state)
        if i is None:
            return
        states, q_order, top = state
        automaton = normalized[i]
        for a in automaton.alphabet.internals:
            for target in automaton.step_internal(states[i], a):
                moved = states[:i] + (target,) + states[i + 1 :]
                yield a, (moved, order.internal_moves[(q_order, a)], top)

    def call_moves(state):
        i = mover(state)
        if i is None:
            return
        states, q_order, top = state
        automaton = normalized[i]
        for c in automaton.alphabet.calls:
            for target, push in automaton.step_call(states[i], c):
                q_next, order_push = order.call_moves[(q_order, c)]
                moved = states[:i] + (target,) + states[i + 1 :]
                new_top = (i, push)
                yield c, (moved, q_next, new_top), (new_top, order_push, top)

    def return_moves(state, popped):
        i = mover(state)
        if i is None:
            return
        states, q_order, top = state
        if top is BOTTOM:
            if popped is not BOTTOM:
                return
            pop, order_pop, below = BOTTOM, BOTTOM, BOTTOM
        else:
            if popped is BOTTOM or popped[0] != top or top[0] != i:
                return
            _, order_pop, below = popped
            pop = top[1]
        automaton = normalized[i]
        for r in automaton.alphabet.returns:
            for target in automaton.step_return(states[i], r, pop):
                moved = states[:i] + (target,) + states[i + 1 :]
                yield r, (moved, order.return_moves[(q_order, r, order_pop)], below)

    initial = [()]
    for automaton in normalized:
        initial = [s + (q,) for s in initial for q in sorted(automaton.initial, key=stable_key)]
    product = explore_vpa(
        alphabet,
        [(s, order.initial, BOTTOM) for s in initial],
        lambda state: state[2] is BOTTOM and all(q in a.finals for q, a in zip(state[0], normalized)),
        internal_moves,
        call_moves,
        return_moves,
    )
    bound = prod(a.size for a in normalized) * len(order.orders) * (1 + sum(len(a.stack_symbols) for a in normalized))
    if product.size > bound:
        raise ReductionError(f"Optimized product has {product.size} states, above the bound {bound}")
    logger.info(f"Optimized product under {order.name}: {product.size} states (bound {bound})")
    return ProductBuild(product, bound, normalized)


def optimized_product(order: OrderAutomaton, *automata: Vpa, excluded: Iterable[Letter] = ()) -> Vpa:
    return build_optimized_product(order, *automata, excluded=excluded).automaton
