"""Line-oriented debug serialization of automata and grammars.

Every line stands alone and the output is sorted, so two dumps of the same object are
byte-identical. The format is described in docs/formats.md.
"""

from typing import Hashable, List

from hyperprod.vpl.alphabet import VPAlphabet
from hyperprod.vpl.vpa import Vpa
from hyperprod.vpl.vpg import Vpg


def label(obj: Hashable) -> str:
    """Compact, whitespace-free rendering of a state, stack symbol or nonterminal."""
    if isinstance(obj, str):
        return obj.replace(" ", "_")
    if isinstance(obj, bool):
        return "T" if obj else "F"
    if isinstance(obj, tuple):
        return "(" + ",".join(label(part) for part in obj) + ")"
    if isinstance(obj, frozenset):
        return "{" + ",".join(sorted(label(part) for part in obj)) + "}"
    return repr(obj).replace(" ", "_")


def _letter(letter) -> str:
    return letter.id.replace(" ", "_")


def _alphabet_lines(alphabet: VPAlphabet) -> List[str]:
    return sorted(
        f"letter {_letter(l)} {l.kind.value} {l.component}" for l in alphabet
    )


def dump_vpa(automaton: Vpa) -> str:
    lines = _alphabet_lines(automaton.alphabet)
    body = []
    for q in automaton.states:
        flags = ("initial" if q in automaton.initial else "") + (
            " final" if q in automaton.finals else ""
        )
        body.append(f"state {label(q)} {flags.strip()}".rstrip())
    for t in automaton.internals:
        body.append(f"int {label(t.source)} {_letter(t.letter)} {label(t.target)}")
    for t in automaton.calls:
        body.append(f"call {label(t.source)} {_letter(t.letter)} {label(t.target)} {label(t.push)}")
    for t in automaton.returns:
        body.append(f"ret {label(t.source)} {_letter(t.letter)} {label(t.pop)} {label(t.target)}")
    return "\n".join(["# vpa", *lines, *sorted(body)]) + "\n"


def dump_vpg(grammar: Vpg) -> str:
    lines = _alphabet_lines(grammar.alphabet)
    body = [f"start {label(s)}" for s in grammar.starts]
    for p in grammar.productions:
        if p.is_epsilon:
            body.append(f"{label(p.lhs)} -> ε")
        elif p.is_internal:
            body.append(f"{label(p.lhs)} -> {_letter(p.first)} {label(p.tail)}")
        else:
            body.append(
                f"{label(p.lhs)} -> {_letter(p.first)} {label(p.inner)} {_letter(p.ret)} {label(p.tail)}"
            )
    return "\n".join(["# vpg", *lines, *sorted(body)]) + "\n"
