"""Letting selected calls and returns sit out of the scheduling.

Excluded calls and returns are ranked as if they were internals of their component. The order
automaton still has to stay in sync with the nesting, so an excluded call pushes a marker that the
matching excluded return removes again.
"""

from dataclasses import replace
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Set

from hyperprod.core.exceptions import OrderError
from hyperprod.core.logging import logger
from hyperprod.orders.automaton import OrderAutomaton
from hyperprod.orders.linear import PartialOrder, letter_key
from hyperprod.vpl.alphabet import BOTTOM, Letter, LetterKind, VPAlphabet
from hyperprod.vpl.emptiness import summaries
from hyperprod.vpl.vpa import Vpa

EXCLUDED_MARK = "⋆excluded"


def image_alphabet(alphabet: VPAlphabet, excluded: Iterable[Letter]) -> VPAlphabet:
    """The alphabet seen by the underlying order: excluded letters become internals."""
    excluded = set(excluded)
    return VPAlphabet(replace(a, kind=LetterKind.INTERNAL) if a in excluded else a for a in alphabet)


def _matched_letters(automaton: Vpa) -> Set[tuple]:
    pairs: Set[tuple] = set()
    connected = summaries(automaton)
    for call in automaton.calls:
        for ret in automaton.returns:
            if ret.pop == call.push and (call.target, ret.source) in connected:
                pairs.add((call.letter, ret.letter))
    return pairs


def check_excluded(
    alphabet: VPAlphabet, excluded: FrozenSet[Letter], components: Optional[Sequence[Vpa]] = None
) -> None:
    """A call is excluded exactly when every return it can match is.

    With component automata the matching pairs come from their summaries; without them only the
    coarse requirement that a component excluding calls also excludes returns is checked.
    """
    for letter in excluded:
        if letter not in alphabet:
            raise OrderError(f"Excluded letter {letter.id!r} is not in the alphabet")
        if letter.is_internal:
            raise OrderError(f"Only calls and returns can be excluded, got internal {letter.id!r}")
    if components:
        for automaton in components:
            for c, r in sorted(_matched_letters(automaton), key=lambda p: (p[0].id, p[1].id)):
                if (c in excluded) != (r in excluded):
                    raise OrderError(
                        f"Call {c.id!r} and return {r.id!r} match but only one of them is excluded"
                    )
        return
    for component in alphabet.components:
        calls = any(l.is_call and l.component == component for l in excluded)
        returns = any(l.is_return and l.component == component for l in excluded)
        if calls != returns:
            raise OrderError(f"Component {component} excludes calls or returns without their partners")


def exclude_letters(
    order: OrderAutomaton,
    excluded: Iterable[Letter],
    alphabet: VPAlphabet,
    components: Optional[Sequence[Vpa]] = None,
) -> OrderAutomaton:
    """Lift ``order``, defined over the image alphabet, back to ``alphabet`` with ``excluded``
    letters scheduled like internals."""
    excluded = frozenset(excluded)
    check_excluded(alphabet, excluded, components)
    image: Dict[Letter, Letter] = {}
    for a in alphabet:
        target = order.alphabet.get(a.id)
        if target is None or target.component != a.component:
            raise OrderError(f"The order does not rank {a.id!r} in component {a.component}")
        expected = LetterKind.INTERNAL if a in excluded else a.kind
        if target.kind is not expected:
            raise OrderError(f"The order ranks {a.id!r} as a {target.kind.value}, expected {expected.value}")
        image[a] = target

    def internal(q, a: Letter):
        return order.internal_moves[(q, image[a])]

    def call(q, c: Letter):
        if c in excluded:
            return order.internal_moves[(q, image[c])], EXCLUDED_MARK
        return order.call_moves[(q, c)]

    def ret(q, r: Letter, popped):
        if r in excluded:
            return order.internal_moves[(q, image[r])]
        # a scheduled return never meets the marker in a well-nested run
        if popped == EXCLUDED_MARK:
            popped = BOTTOM
        return order.return_moves[(q, r, popped)]

    def rank(q):
        base = order.orders[q].rank
        pairs = frozenset(
            (a, b) for a in alphabet for b in alphabet if a != b and base[image[a]] < base[image[b]]
        )
        return PartialOrder(frozenset(alphabet.letters), pairs).linear_extension(
            tiebreak=lambda a: (a not in excluded, letter_key(a))
        )

    lifted = OrderAutomaton.explore(
        alphabet, order.initial, internal, call, ret, rank, name=f"{order.name} excluding {len(excluded)}"
    )
    logger.debug(f"Excluded {sorted(a.id for a in excluded)} from {order.name}")
    return lifted
