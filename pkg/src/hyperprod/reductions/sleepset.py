"""Lex reductions through sleep sets.

A sleep set holds letters of other components that were smaller than a letter already taken and
have not been disturbed since; taking one of them would only reproduce a smaller equivalent word.
"""

from typing import FrozenSet

from hyperprod.core.logging import logger
from hyperprod.orders.automaton import OrderAutomaton
from hyperprod.orders.repair import coherence_repair
from hyperprod.vpl.alphabet import Letter
from hyperprod.vpl.vpa import Vpa, explore_vpa, vpa_intersect, wn_shuffle


def sleepset_vpa(order: OrderAutomaton) -> Vpa:
    """VPA over the order's alphabet accepting the minimal word of every equivalence class.

    States pair a sleep set with an order state; every state is final. Letters commute exactly
    when they belong to different components.
    """
    letters = order.alphabet.letters

    def sleep_after(asleep: FrozenSet[Letter], q, taken: Letter) -> FrozenSet[Letter]:
        rank = order.orders[q].rank
        return frozenset(
            a
            for a in letters
            if a.component != taken.component and (rank[a] < rank[taken] or a in asleep)
        )

    def internal_moves(state):
        asleep, q = state
        for a in order.alphabet.internals:
            if a not in asleep:
                yield a, (sleep_after(asleep, q, a), order.internal_moves[(q, a)])

    def call_moves(state):
        asleep, q = state
        for c in order.alphabet.calls:
            if c not in asleep:
                target, push = order.call_moves[(q, c)]
                yield c, (sleep_after(asleep, q, c), target), push

    def return_moves(state, top):
        asleep, q = state
        for r in order.alphabet.returns:
            if r not in asleep:
                yield r, (sleep_after(asleep, q, r), order.return_moves[(q, r, top)])

    automaton = explore_vpa(
        order.alphabet,
        [(frozenset(), order.initial)],
        lambda state: True,
        internal_moves,
        call_moves,
        return_moves,
    )
    logger.debug(f"Sleep-set automaton for {order.name}: {automaton.size} states")
    return automaton


def generic_lex_reduction(order: OrderAutomaton, *automata: Vpa) -> Vpa:
    """Reduction of the well-nested shuffle of ``automata`` under ``order``, repaired to be coherent."""
    shuffle = wn_shuffle(*automata)
    product = vpa_intersect(sleepset_vpa(coherence_repair(order)), shuffle)
    logger.info(f"Generic lex reduction: {product.size} states, {product.transition_count} transitions")
    return product
