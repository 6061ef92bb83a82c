"""Coherence repair of order automata.

A repaired order never prefers a return that would close a call of another component.
"""

from typing import Optional

from hyperprod.orders.automaton import OrderAutomaton
from hyperprod.orders.linear import LinearOrder
from hyperprod.vpl.alphabet import BOTTOM, Letter


def coherence_repair(order: OrderAutomaton) -> OrderAutomaton:
    """Make an order coherent.

    The repaired automaton also remembers the component of the last pending call. While such a call
    is pending, returns of every other component are ranked after all remaining letters, so the
    minimal word of each class closes calls in nesting order.
    """
    alphabet = order.alphabet

    def internal(state, a: Letter):
        q, k = state
        return (order.internal_moves[(q, a)], k)

    def call(state, c: Letter):
        q, k = state
        target, push = order.call_moves[(q, c)]
        return (target, c.component), (push, k)

    def ret(state, r: Letter, popped):
        q, _ = state
        if popped is BOTTOM:
            return (order.return_moves[(q, r, BOTTOM)], None)
        symbol, k = popped
        return (order.return_moves[(q, r, symbol)], k)

    def rank(state) -> LinearOrder:
        q, k = state
        base = order.orders[q]
        if k is None:
            return base
        return base.demote(r for r in alphabet.returns if r.component != k)

    initial: tuple = (order.initial, None)
    return OrderAutomaton.explore(alphabet, initial, internal, call, ret, rank, name=f"repaired {order.name}")


def last_pending_component(context) -> Optional[int]:
    """Component of the innermost call of ``context`` that is still open, or None."""
    stack = []
    for letter in context:
        if letter.is_call:
            stack.append(letter.component)
        elif letter.is_return and stack:
            stack.pop()
    return stack[-1] if stack else None
