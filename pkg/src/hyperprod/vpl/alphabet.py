"""Visibly pushdown alphabets: letters typed as call, return or internal and tagged with a component."""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, Tuple

from hyperprod.core.exceptions import AlphabetError


class LetterKind(str, Enum):
    CALL = "call"
    RETURN = "return"
    INTERNAL = "internal"


class Bottom(Enum):
    """Stack-bottom marker. Popped by returns on an empty stack and never pushed."""

    BOTTOM = "⊥"

    def __repr__(self) -> str:
        return "⊥"


BOTTOM = Bottom.BOTTOM


@dataclass(frozen=True)
class Letter:
    """One symbol of a visibly pushdown alphabet.

    The payload is the statement the letter stands for; it takes no part in equality or hashing,
    so the automata layer never looks at it.
    """

    id: str
    kind: LetterKind
    component: int = 1
    payload: Any = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not self.id:
            raise AlphabetError(f"Invalid letter id: {self.id!r}")
        if self.component < 1:
            raise AlphabetError(f"Component index must be >= 1, got {self.component} for {self.id!r}")

    @property
    def is_call(self) -> bool:
        return self.kind is LetterKind.CALL

    @property
    def is_return(self) -> bool:
        return self.kind is LetterKind.RETURN

    @property
    def is_internal(self) -> bool:
        return self.kind is LetterKind.INTERNAL

    def mirrored(self) -> "Letter":
        """Same letter with call and return swapped (used to reverse words)."""
        if self.is_call:
            return replace(self, kind=LetterKind.RETURN)
        if self.is_return:
            return replace(self, kind=LetterKind.CALL)
        return self

    def __str__(self) -> str:
        return self.id


Word = Tuple[Letter, ...]


def stable_key(obj: Any) -> str:
    """Sort key that does not depend on hash randomization."""
    return repr(obj)


class VPAlphabet:
    """An ordered, immutable set of letters partitioned by kind and by component."""

    def __init__(self, letters: Iterable[Letter]):
        ordered: List[Letter] = []
        by_id: Dict[str, Letter] = {}
        for letter in letters:
            known = by_id.get(letter.id)
            if known is not None:
                if known != letter:
                    raise AlphabetError(
                        f"Letter id {letter.id!r} used twice with different kind/component"
                    )
                continue
            by_id[letter.id] = letter
            ordered.append(letter)
        self._letters: Tuple[Letter, ...] = tuple(ordered)
        self._by_id = by_id

    # -- collection protocol -------------------------------------------------
    def __iter__(self) -> Iterator[Letter]:
        return iter(self._letters)

    def __len__(self) -> int:
        return len(self._letters)

    def __contains__(self, letter: object) -> bool:
        if isinstance(letter, Letter):
            return self._by_id.get(letter.id) == letter
        return False

    def __getitem__(self, letter_id: str) -> Letter:
        try:
            return self._by_id[letter_id]
        except KeyError:
            raise AlphabetError(f"Unknown letter: {letter_id!r}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VPAlphabet):
            return NotImplemented
        return frozenset(self._letters) == frozenset(other._letters)

    def __hash__(self) -> int:
        return hash(frozenset(self._letters))

    def __repr__(self) -> str:
        return f"VPAlphabet({' '.join(l.id for l in self._letters)})"

    # -- partitions ------------------------------------------------------------
    @property
    def letters(self) -> Tuple[Letter, ...]:
        return self._letters

    @property
    def calls(self) -> Tuple[Letter, ...]:
        return tuple(l for l in self._letters if l.is_call)

    @property
    def returns(self) -> Tuple[Letter, ...]:
        return tuple(l for l in self._letters if l.is_return)

    @property
    def internals(self) -> Tuple[Letter, ...]:
        return tuple(l for l in self._letters if l.is_internal)

    @property
    def components(self) -> Tuple[int, ...]:
        return tuple(sorted({l.component for l in self._letters}))

    def component(self, index: int) -> "VPAlphabet":
        return VPAlphabet(l for l in self._letters if l.component == index)

    def get(self, letter_id: str):
        return self._by_id.get(letter_id)

    # -- constructions ---------------------------------------------------------
    def union(self, *others: "VPAlphabet") -> "VPAlphabet":
        letters = list(self._letters)
        for other in others:
            letters.extend(other.letters)
        return VPAlphabet(letters)

    def disjoint_union(self, *others: "VPAlphabet") -> "VPAlphabet":
        """Union of alphabets that must not share letters or components."""
        seen_components = set(self.components)
        seen_ids = set(self._by_id)
        for other in others:
            overlap = seen_ids & {l.id for l in other}
            if overlap:
                raise AlphabetError(f"Alphabets overlap on letters: {sorted(overlap)}")
            shared = seen_components & set(other.components)
            if shared:
                raise AlphabetError(f"Alphabets share components: {sorted(shared)}")
            seen_components |= set(other.components)
            seen_ids |= {l.id for l in other}
        return self.union(*others)

    def mirrored(self) -> "VPAlphabet":
        return VPAlphabet(l.mirrored() for l in self._letters)

    def word(self, text: str) -> Word:
        """Parse a word: whitespace-separated letter ids, or one character per letter."""
        tokens = text.split() if any(ch.isspace() for ch in text.strip()) else list(text.strip())
        return tuple(self[token] for token in tokens)


def make_alphabet(
    calls: str = "", returns: str = "", internals: str = "", component: int = 1
) -> VPAlphabet:
    """Build a single-component alphabet from one-character letter ids (test and fixture helper)."""
    letters = [Letter(ch, LetterKind.CALL, component) for ch in calls]
    letters += [Letter(ch, LetterKind.RETURN, component) for ch in returns]
    letters += [Letter(ch, LetterKind.INTERNAL, component) for ch in internals]
    return VPAlphabet(letters)
