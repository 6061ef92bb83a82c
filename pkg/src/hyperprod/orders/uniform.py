"""Uniformity of an order automaton with respect to a tuple of component automata."""

from itertools import combinations

from hyperprod.core.logging import logger
from hyperprod.orders.automaton import OrderAutomaton
from hyperprod.vpl.vpa import Vpa


def is_uniform(order: OrderAutomaton, *automata: Vpa) -> bool:
    """Whether every order state ranks the outgoing letters of any two component states consistently.

    For states p, q of different automata the rank intervals spanned by their outgoing letters
    must not overlap, so one of them is entirely below the other.
    """
    outgoing = []
    for automaton in automata:
        outgoing.append([letters for letters in automaton.outgoing.values() if letters])
    for q in order.sorted_states():
        rank = order.orders[q].rank
        spans = [[(min(rank[a] for a in s), max(rank[a] for a in s)) for s in sets] for sets in outgoing]
        for left, right in combinations(spans, 2):
            for lo1, hi1 in left:
                for lo2, hi2 in right:
                    if not (hi1 < lo2 or hi2 < lo1):
                        logger.debug(f"{order.name} is not uniform at order state {q!r}")
                        return False
    return True
