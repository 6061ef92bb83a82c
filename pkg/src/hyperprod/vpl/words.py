"""Words over a visibly pushdown alphabet and their call/return matching."""

import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Sequence, Tuple, Union

from hyperprod.core.exceptions import AlphabetError
from hyperprod.vpl.alphabet import Letter, Word

Position = Union[int, float]

PENDING_CALL = math.inf
PENDING_RETURN = -math.inf


@dataclass(frozen=True)
class MatchingRelation:
    """Pairs (i, j) of 1-based positions; pending calls pair with +inf, pending returns with -inf."""

    pairs: FrozenSet[Tuple[Position, Position]]

    def partner(self, position: int) -> Position:
        for i, j in self.pairs:
            if i == position:
                return j
            if j == position:
                return i
        raise KeyError(position)

    @property
    def pending_calls(self) -> Tuple[int, ...]:
        return tuple(sorted(int(i) for i, j in self.pairs if j == PENDING_CALL))

    @property
    def pending_returns(self) -> Tuple[int, ...]:
        return tuple(sorted(int(j) for i, j in self.pairs if i == PENDING_RETURN))

    def matched(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(
            sorted((int(i), int(j)) for i, j in self.pairs if math.isfinite(i) and math.isfinite(j))
        )


def matching_of(word: Sequence[Letter], syntactic: bool = False) -> MatchingRelation:
    """Stack-match the calls and returns of ``word``.

    With ``syntactic`` set, a pending return is rejected since syntactic runs never pop an empty stack.
    """
    stack: List[int] = []
    pairs = set()
    for position, letter in enumerate(word, start=1):
        if letter.is_call:
            stack.append(position)
        elif letter.is_return:
            if stack:
                pairs.add((stack.pop(), position))
            else:
                if syntactic:
                    raise AlphabetError(f"Pending return {letter.id!r} at position {position}")
                pairs.add((PENDING_RETURN, position))
    pairs.update((position, PENDING_CALL) for position in stack)
    return MatchingRelation(frozenset(pairs))


def is_well_matched(word: Sequence[Letter]) -> bool:
    depth = 0
    for letter in word:
        if letter.is_call:
            depth += 1
        elif letter.is_return:
            if depth == 0:
                return False
            depth -= 1
    return depth == 0


def is_well_nested(word: Sequence[Letter]) -> bool:
    """Every matched pair has both endpoints in the same component."""
    for i, j in matching_of(word).matched():
        if word[i - 1].component != word[j - 1].component:
            return False
    return True


def project(word: Sequence[Letter], component: int) -> Word:
    return tuple(letter for letter in word if letter.component == component)


def projections(word: Sequence[Letter], components: Iterable[int]) -> Tuple[Word, ...]:
    return tuple(project(word, k) for k in components)


def reverse_word(word: Sequence[Letter]) -> Word:
    """Reverse a word, turning calls into returns and vice versa."""
    return tuple(letter.mirrored() for letter in reversed(word))


def word_str(word: Sequence[Letter]) -> str:
    if all(len(letter.id) == 1 for letter in word):
        return "".join(letter.id for letter in word)
    return " · ".join(letter.id for letter in word)

