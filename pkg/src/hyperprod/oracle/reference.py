"""Reference lex reductions computed class by class on bounded languages."""

from typing import Iterable, Optional, Sequence, Set

from hyperprod.core.logging import logger
from hyperprod.oracle.shuffle import EquivClass, classes
from hyperprod.orders.automaton import OrderAutomaton, clo_compare
from hyperprod.orders.linear import Comparison
from hyperprod.vpl.alphabet import Letter, Word
from hyperprod.vpl.words import is_well_nested


def minimal_members(order: OrderAutomaton, members: Iterable[Word]) -> Set[Word]:
    """Members with no strictly smaller member; all incomparable minima are kept."""
    members = list(members)
    return {
        u for u in members if not any(clo_compare(order, v, u) is Comparison.LESS for v in members if v != u)
    }


def ref_reduction(
    order: OrderAutomaton,
    language: Iterable[Sequence[Letter]],
    wn_only: bool = False,
    maxlen: Optional[int] = None,
) -> Set[Word]:
    """Keep the order-minimal words of every commutativity class of ``language``.

    With ``wn_only`` the language is first restricted to its well-nested words.
    """
    words = [tuple(w) for w in language]
    if wn_only:
        words = [w for w in words if is_well_nested(w)]
    reduced: Set[Word] = set()
    fibers = classes(words, maxlen if maxlen is not None else max((len(w) for w in words), default=0))
    for fiber in fibers:
        reduced |= minimal_members(order, fiber.members)
    logger.debug(f"Reference reduction: {len(words)} word(s) in {len(fibers)} class(es) -> {len(reduced)}")
    return reduced


def is_reduction_of(candidate: Iterable[Sequence[Letter]], language: Iterable[Sequence[Letter]]) -> bool:
    """Every class of ``language`` meets ``candidate``, and ``candidate`` stays inside ``language``."""
    words = {tuple(w) for w in language}
    chosen = {tuple(w) for w in candidate}
    if not chosen <= words:
        return False
    fibers: Set[EquivClass] = classes(words, max((len(w) for w in words), default=0))
    return all(fiber.members & chosen for fiber in fibers)
