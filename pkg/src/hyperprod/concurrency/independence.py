"""Tail- and head-independence of concurrent components.

A component is tail-independent when every run splits as ``u v`` with all dependent letters in
``u``, all calls in ``u`` and all returns in ``v``, call blocks made only of independent letters
excepted. Head-independence is the mirror image. When all components are tail-independent (or
all are head-independent) the well-nested shuffle is a sound sequentialization of the parallel
composition.

Calls and returns always commute with the other components; only internal letters can be
dependent.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Union

from hyperprod.core.exceptions import IndependenceError
from hyperprod.core.logging import logger
from hyperprod.models.verification import ComponentIndependence, IndependenceReport
from hyperprod.vpl.alphabet import BOTTOM, Letter, VPAlphabet, Word
from hyperprod.vpl.emptiness import vpa_witness
from hyperprod.vpl.vpa import Vpa, explore_vpa, vpa_complement, vpa_intersect
from hyperprod.vpl.words import matching_of

TAIL = "tail"
HEAD = "head"
NONE = "none"


@dataclass(frozen=True)
class IndependenceSpec:
    """Dependent internal letters (by id), per component. Everything else is independent."""

    dependent: Mapping[int, FrozenSet[str]] = field(default_factory=dict)

    def dependent_in(self, alphabet: VPAlphabet) -> FrozenSet[Letter]:
        found = set()
        for letter in alphabet:
            if letter.id not in self.dependent.get(letter.component, frozenset()):
                continue
            if not letter.is_internal:
                raise IndependenceError(
                    f"{letter.kind.value.capitalize()} letter {letter.id!r} cannot be dependent"
                )
            found.add(letter)
        return frozenset(found)

    def independent_in(self, alphabet: VPAlphabet) -> FrozenSet[Letter]:
        return frozenset(alphabet.letters) - self.dependent_in(alphabet)


@dataclass(frozen=True)
class _TailState:
    closed: bool  # no dependent letter may follow in this frame
    dirty: bool  # a dependent letter was read since the frame was entered
    top: bool

    def __repr__(self) -> str:
        return f"{'closed' if self.closed else 'open'}{'*' if self.dirty else ''}{'' if self.top else '+'}"


@dataclass(frozen=True)
class _HeadState:
    closed: bool  # frame entered after a dependent letter; it must stay independent
    dirty: bool  # a dependent letter was read anywhere
    top: bool

    def __repr__(self) -> str:
        return f"{'closed' if self.closed else 'open'}{'*' if self.dirty else ''}{'' if self.top else '+'}"


@dataclass(frozen=True)
class _HeadFrame:
    closed: bool
    top: bool

    def __repr__(self) -> str:
        return f"[{'closed' if self.closed else 'open'}{'' if self.top else '+'}]"


def _dependent_letters(alphabet: VPAlphabet, indep: Iterable[Union[Letter, str]]) -> FrozenSet[Letter]:
    independent = set()
    for ref in indep:
        letter = alphabet.get(ref if isinstance(ref, str) else ref.id)
        if letter is None:
            raise IndependenceError(f"Independent letter {ref!s} is not in the alphabet")
        independent.add(letter)
    return frozenset(a for a in alphabet.internals if a not in independent)


def max_tail_independent_vpa(alphabet: VPAlphabet, indep: Iterable[Union[Letter, str]]) -> Vpa:
    """Deterministic VPA accepting the well-matched words whose every split point is tail-independent.

    After the return of a call block that read a dependent letter the enclosing frames are closed:
    the rest of the word may only read independent letters. Call blocks entered from a closed frame
    are closed as well. The stack remembers the caller's state so the return can restore it.
    """
    dependent = _dependent_letters(alphabet, indep)

    def internal_moves(q: _TailState):
        for a in alphabet.internals:
            if a not in dependent:
                yield a, q
            elif not q.closed:
                yield a, _TailState(False, True, q.top)

    def call_moves(q: _TailState):
        for c in alphabet.calls:
            yield c, _TailState(q.closed, False, False), q

    def return_moves(q: _TailState, caller):
        if caller is BOTTOM:
            return
        for r in alphabet.returns:
            yield r, _TailState(caller.closed or q.dirty, caller.dirty or q.dirty, caller.top)

    automaton = explore_vpa(
        alphabet, [_TailState(False, False, True)], lambda q: q.top, internal_moves, call_moves, return_moves
    )
    logger.debug(f"Tail-independence automaton: {automaton.size} states, {len(dependent)} dependent letter(s)")
    return automaton


def max_head_independent_vpa(alphabet: VPAlphabet, indep: Iterable[Union[Letter, str]]) -> Vpa:
    """Deterministic VPA for the head-independent well-matched words.

    A call made after some dependent letter opens a closed block, which may only read independent
    letters; dependent letters are otherwise unrestricted.
    """
    dependent = _dependent_letters(alphabet, indep)

    def internal_moves(q: _HeadState):
        for a in alphabet.internals:
            if a not in dependent:
                yield a, q
            elif not q.closed:
                yield a, _HeadState(False, True, q.top)

    def call_moves(q: _HeadState):
        for c in alphabet.calls:
            yield c, _HeadState(q.closed or q.dirty, q.dirty, False), _HeadFrame(q.closed, q.top)

    def return_moves(q: _HeadState, caller):
        if caller is BOTTOM:
            return
        for r in alphabet.returns:
            yield r, _HeadState(caller.closed, q.dirty, caller.top)

    automaton = explore_vpa(
        alphabet, [_HeadState(False, False, True)], lambda q: q.top, internal_moves, call_moves, return_moves
    )
    logger.debug(f"Head-independence automaton: {automaton.size} states, {len(dependent)} dependent letter(s)")
    return automaton


def _violation(component: Vpa, maximal: Vpa) -> Optional[Word]:
    return vpa_witness(vpa_intersect(component, vpa_complement(maximal)), well_matched=True)


def tail_violation(component: Vpa, spec: IndependenceSpec) -> Optional[Word]:
    """A shortest well-matched run of ``component`` that is not tail-independent, if any."""
    maximal = max_tail_independent_vpa(component.alphabet, spec.independent_in(component.alphabet))
    return _violation(component, maximal)


def head_violation(component: Vpa, spec: IndependenceSpec) -> Optional[Word]:
    maximal = max_head_independent_vpa(component.alphabet, spec.independent_in(component.alphabet))
    return _violation(component, maximal)


def is_tail_independent(component: Vpa, spec: IndependenceSpec) -> bool:
    return tail_violation(component, spec) is None


def is_head_independent(component: Vpa, spec: IndependenceSpec) -> bool:
    return head_violation(component, spec) is None


def independence_split(word: Sequence[Letter], dependent: Iterable[Letter], direction: str = TAIL) -> Optional[int]:
    """Search a split ``word[:i] word[i:]`` witnessing tail (or head) independence of one run.

    Returns the split index, or None when no split works. Brute force over all split points; used
    to cross-check the automata on short runs.
    """
    if direction not in (TAIL, HEAD):
        raise IndependenceError(f"Unknown direction {direction!r}")
    dependent = frozenset(dependent)
    partner: Dict[int, int] = {}
    for i, j in matching_of(word).matched():
        partner[i - 1], partner[j - 1] = j - 1, i - 1
    clean: Dict[int, bool] = {}
    for i, j in partner.items():
        low, high = min(i, j), max(i, j)
        clean[i] = not any(word[k] in dependent for k in range(low + 1, high))

    for split in range(len(word) + 1):
        free = word[split:] if direction == TAIL else word[:split]
        if any(letter in dependent for letter in free):
            continue
        if all(
            clean.get(k, False)
            or (letter.is_call and k < split)
            or (letter.is_return and k >= split)
            for k, letter in enumerate(word)
            if not letter.is_internal
        ):
            return split
    return None


def wn_shuffle_soundness_report(components: Sequence[Vpa], spec: IndependenceSpec) -> IndependenceReport:
    """Decide whether the well-nested shuffle of ``components`` soundly replaces their parallel composition."""
    results: List[ComponentIndependence] = []
    for component in components:
        index = min(component.alphabet.components, default=1)
        tail = tail_violation(component, spec)
        head = head_violation(component, spec)
        results.append(
            ComponentIndependence(
                component=index,
                tail=tail is None,
                head=head is None,
                tail_witness=None if tail is None else [letter.id for letter in tail],
                head_witness=None if head is None else [letter.id for letter in head],
            )
        )
        logger.debug(f"Component {index}: tail={tail is None}, head={head is None}")
    if all(r.tail for r in results):
        direction = TAIL
    elif all(r.head for r in results):
        direction = HEAD
    else:
        direction = NONE
    report = IndependenceReport(sound=direction != NONE, direction=direction, components=results)
    logger.info(f"Well-nested shuffle of {len(results)} component(s): sound={report.sound} ({direction})")
    return report
