"""Canonical reductions evaluated on single words.

These are the reference semantics the product constructions are tested against.
"""

from typing import List, Sequence, Tuple

from hyperprod.core.exceptions import ReductionError
from hyperprod.orders.canonical import check_speeds, dec
from hyperprod.vpl.alphabet import Letter, Word
from hyperprod.vpl.words import is_well_matched, reverse_word


def split_block(word: Sequence[Letter]) -> Tuple[Letter, Word, Letter, Word]:
    """Split a word starting with a call into (c, inside, r, rest) at the matching return."""
    word = tuple(word)
    if not word or not word[0].is_call:
        raise ReductionError("Word does not start with a call")
    depth = 0
    for position, letter in enumerate(word):
        if letter.is_call:
            depth += 1
        elif letter.is_return:
            depth -= 1
            if depth == 0:
                return word[0], word[1:position], letter, word[position + 1 :]
    raise ReductionError("Call has no matching return")


def _check(words: Sequence[Sequence[Letter]]) -> List[Word]:
    checked = [tuple(w) for w in words]
    for w in checked:
        if not is_well_matched(w):
            raise ReductionError("Canonical reductions combine well-matched words only")
    return checked


def _nested(first: Word, second: Word) -> Word:
    out: List[Letter] = []
    suffix: List[Word] = []
    word = first
    while word:
        if word[0].is_internal:
            out.append(word[0])
            word = word[1:]
            continue
        c, inside, r, rest = split_block(word)
        out.append(c)
        suffix.append((r,) + rest)
        word = inside
    tail = second
    for piece in reversed(suffix):
        tail = tail + piece
    return tuple(out) + tail


def nested_concat_words(*words: Sequence[Letter]) -> Word:
    """w1 ⊕ (w2 ⊕ (... ⊕ wn)): each word runs inside the innermost leading call of the previous one."""
    checked = _check(words)
    if not checked:
        return ()
    result = checked[-1]
    for word in reversed(checked[:-1]):
        result = _nested(word, result)
    return result


def concat_words(*words: Sequence[Letter]) -> Word:
    return tuple(letter for word in _check(words) for letter in word)


def _lockstep(speeds: Tuple[int, ...], helper: Tuple[int, ...], words: List[Word]) -> Word:
    live = [i for i, w in enumerate(words) if w]
    if len(live) < len(words):
        speeds = tuple(speeds[i] for i in live)
        helper = tuple(helper[i] for i in live)
        words = [words[i] for i in live]
    if not words:
        return ()
    if len(words) == 1:
        return words[0]
    for i, w in enumerate(words):
        if w[0].is_internal:
            return (w[0],) + _lockstep(speeds, helper, words[:i] + [w[1:]] + words[i + 1 :])
    inner = dec(speeds, helper)
    if not any(helper):
        blocks = [split_block(w) for w in words]
        c, inside, r, _ = blocks[0]
        nested = [inside] + [(b[0],) + b[1] + (b[2],) for b in blocks[1:]]
        rests = [b[3] for b in blocks]
        return (c,) + _lockstep(speeds, inner, nested) + (r,) + _lockstep(speeds, helper, rests)
    m = next(i for i, t in enumerate(helper) if t > 0)
    c, inside, r, rest = split_block(words[m])
    nested = words[:m] + [inside] + words[m + 1 :]
    return (c,) + _lockstep(speeds, inner, nested) + (r,) + rest


def lockstep_words(speeds: Sequence[int], *words: Sequence[Letter]) -> Word:
    """The s-lockstep of well-matched words over disjoint components."""
    speeds = check_speeds(speeds)
    if len(speeds) != len(words):
        raise ReductionError(f"{len(words)} words for speed vector {speeds}")
    return _lockstep(speeds, (0,) * len(speeds), _check(words))


def right_aligned(combine, *words: Sequence[Letter]) -> Word:
    """Apply a word-level reduction from the right end: reverse, combine, reverse back."""
    return reverse_word(combine(*(reverse_word(w) for w in words)))
