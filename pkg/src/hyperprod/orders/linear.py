"""Linear and partial orders on letters."""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

from hyperprod.core.exceptions import OrderError
from hyperprod.vpl.alphabet import Letter, VPAlphabet


class Comparison(str, Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def letter_key(letter: Letter) -> Tuple[int, str]:
    """Tiebreak inside a block of equally ranked letters."""
    return (letter.component, letter.id)


@dataclass(frozen=True)
class LinearOrder:
    """Strict total order on an alphabet, smallest letter first."""

    sequence: Tuple[Letter, ...]

    def __post_init__(self):
        if len(set(self.sequence)) != len(self.sequence):
            raise OrderError("A linear order may not list a letter twice")

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[Letter]]) -> "LinearOrder":
        sequence: List[Letter] = []
        for block in blocks:
            sequence.extend(sorted(block, key=letter_key))
        return cls(tuple(sequence))

    @cached_property
    def rank(self) -> Dict[Letter, int]:
        return {letter: index for index, letter in enumerate(self.sequence)}

    def less(self, a: Letter, b: Letter) -> bool:
        return self.rank[a] < self.rank[b]

    def compare(self, a: Letter, b: Letter) -> Comparison:
        if a == b:
            return Comparison.EQUAL
        return Comparison.LESS if self.rank[a] < self.rank[b] else Comparison.GREATER

    def covers(self, alphabet: VPAlphabet) -> bool:
        return set(self.sequence) == set(alphabet.letters)

    def demote(self, letters: Iterable[Letter]) -> "LinearOrder":
        """Move ``letters`` behind all others, keeping relative order on both sides."""
        demoted = set(letters)
        return LinearOrder(
            tuple(l for l in self.sequence if l not in demoted)
            + tuple(l for l in self.sequence if l in demoted)
        )

    def __str__(self) -> str:
        return " < ".join(letter.id for letter in self.sequence)


@dataclass(frozen=True)
class PartialOrder:
    """Strict partial order given by its pairs (a, b) meaning a < b."""

    letters: FrozenSet[Letter]
    pairs: FrozenSet[Tuple[Letter, Letter]]

    def __post_init__(self):
        for a, b in self.pairs:
            if a == b:
                raise OrderError(f"Partial order is not irreflexive at {a.id!r}")
            if (b, a) in self.pairs:
                raise OrderError(f"Partial order is not antisymmetric on {a.id!r}, {b.id!r}")

    def compare(self, a: Letter, b: Letter) -> Comparison:
        if a == b:
            return Comparison.EQUAL
        if (a, b) in self.pairs:
            return Comparison.LESS
        if (b, a) in self.pairs:
            return Comparison.GREATER
        return Comparison.INCOMPARABLE

    def linear_extension(self, tiebreak: Callable[[Letter], object] = letter_key) -> LinearOrder:
        """Topological sort that always emits the minimal letter with the smallest tiebreak key."""
        below: Dict[Letter, Set[Letter]] = {a: set() for a in self.letters}
        for a, b in self.pairs:
            below[b].add(a)
        placed: List[Letter] = []
        remaining = set(self.letters)
        while remaining:
            ready: Sequence[Letter] = [a for a in remaining if not (below[a] & remaining)]
            if not ready:
                raise OrderError("Partial order has a cycle")
            choice = min(ready, key=tiebreak)
            placed.append(choice)
            remaining.discard(choice)
        return LinearOrder(tuple(placed))
