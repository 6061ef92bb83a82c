"""Interleavings of component words and their commutativity classes.

Letters of different components commute, letters of one component never do, so two words are
equivalent exactly when they have the same projection on every component.
"""

import math
from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from hyperprod.config.settings import get_settings
from hyperprod.core.exceptions import OracleCapExceeded
from hyperprod.core.logging import logger
from hyperprod.vpl.alphabet import Letter, Word
from hyperprod.vpl.words import project


@dataclass(frozen=True)
class EquivClass:
    """Bounded members of one class, keyed by the projection they all share."""

    projections: Tuple[Word, ...]
    members: FrozenSet[Word]

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> List[Word]:
        return sorted(self.members, key=lambda w: [(a.component, a.id) for a in w])


def interleaving_count(lengths: Sequence[int]) -> int:
    """Multinomial coefficient (l1 + ... + ln)! / (l1! ... ln!)."""
    total, count = 0, 1
    for length in lengths:
        total += length
        count *= math.comb(total, length)
    return count


def _cap(cap: Optional[int]) -> int:
    return get_settings().oracle_max_interleavings if cap is None else cap


def _interleave(words: Tuple[Word, ...]) -> Iterator[Word]:
    if all(not w for w in words):
        yield ()
        return
    for i, w in enumerate(words):
        if w:
            rest = words[:i] + (w[1:],) + words[i + 1 :]
            for tail in _interleave(rest):
                yield (w[0],) + tail


def enumerate_shuffle(*words: Sequence[Letter], cap: Optional[int] = None) -> Set[Word]:
    """All interleavings of ``words``, which must come from pairwise different components.

    Refuses with OracleCapExceeded instead of sampling when there are more than ``cap``.
    """
    words = tuple(tuple(w) for w in words)
    count = interleaving_count([len(w) for w in words])
    limit = _cap(cap)
    if count > limit:
        raise OracleCapExceeded(f"{count} interleavings exceed the cap of {limit}")
    return set(_interleave(words))


def shuffle_languages(*languages: Iterable[Sequence[Letter]], max_len: Optional[int] = None, cap: Optional[int] = None) -> Set[Word]:
    """Bounded shuffle of component languages: interleavings of one word per language."""
    limit = _cap(cap)
    pools = [sorted({tuple(w) for w in language}, key=len) for language in languages]
    result: Set[Word] = set()
    for choice in cartesian(*pools):
        if max_len is not None and sum(len(w) for w in choice) > max_len:
            continue
        result |= enumerate_shuffle(*choice, cap=limit - len(result))
    logger.debug(f"Shuffle of {len(pools)} language(s): {len(result)} word(s)")
    return result


def components_of(words: Iterable[Sequence[Letter]]) -> Tuple[int, ...]:
    return tuple(sorted({letter.component for w in words for letter in w}))


def projection_key(word: Sequence[Letter], components: Sequence[int]) -> Tuple[Word, ...]:
    return tuple(project(word, i) for i in components)


def classes(language: Iterable[Sequence[Letter]], maxlen: Optional[int] = None) -> Set[EquivClass]:
    """Group the words of ``language`` no longer than ``maxlen`` by their projections."""
    maxlen = get_settings().oracle_max_len if maxlen is None else maxlen
    words = [tuple(w) for w in language if len(w) <= maxlen]
    components = components_of(words)
    fibers: Dict[Tuple[Word, ...], Set[Word]] = {}
    for w in words:
        fibers.setdefault(projection_key(w, components), set()).add(w)
    return {EquivClass(key, frozenset(members)) for key, members in fibers.items()}


def swap_closure(word: Sequence[Letter]) -> Set[Word]:
    """Words reachable from ``word`` by swapping adjacent letters of different components."""
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            if w[i].component != w[i + 1].component:
                swapped = w[:i] + (w[i + 1], w[i]) + w[i + 2 :]
                if swapped not in seen:
                    seen.add(swapped)
                    queue.append(swapped)
    return seen
