"""Well-matched visibly pushdown grammars (productions X → ε | aY | cYrZ) and conversions to and from VPAs."""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product as cartesian
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Set, Tuple

from hyperprod.core.exceptions import GrammarError
from hyperprod.core.logging import logger
from hyperprod.vpl.alphabet import BOTTOM, Letter, VPAlphabet, Word, stable_key
from hyperprod.vpl.vpa import Vpa, explore_vpa, reverse_vpa

Nonterminal = Hashable


class Shape(str, Enum):
    EPSILON = "epsilon"
    INTERNAL = "internal"
    CALL = "call"


@dataclass(frozen=True)
class Production:
    """X → ε, X → a Y (``first`` = a, ``tail`` = Y) or X → c Y r Z (``inner`` = Y, ``tail`` = Z)."""

    lhs: Nonterminal
    first: Optional[Letter] = None
    inner: Optional[Nonterminal] = None
    ret: Optional[Letter] = None
    tail: Optional[Nonterminal] = None

    @classmethod
    def epsilon(cls, lhs: Nonterminal) -> "Production":
        return cls(lhs)

    @classmethod
    def internal(cls, lhs: Nonterminal, letter: Letter, tail: Nonterminal) -> "Production":
        return cls(lhs, first=letter, tail=tail)

    @classmethod
    def call(
        cls, lhs: Nonterminal, call: Letter, inner: Nonterminal, ret: Letter, tail: Nonterminal
    ) -> "Production":
        return cls(lhs, first=call, inner=inner, ret=ret, tail=tail)

    @property
    def shape(self) -> Shape:
        if self.first is None:
            return Shape.EPSILON
        return Shape.CALL if self.first.is_call else Shape.INTERNAL

    @property
    def is_epsilon(self) -> bool:
        return self.first is None

    @property
    def is_internal(self) -> bool:
        return self.first is not None and self.first.is_internal

    @property
    def is_call(self) -> bool:
        return self.first is not None and self.first.is_call

    @property
    def referenced(self) -> Tuple[Nonterminal, ...]:
        if self.is_epsilon:
            return ()
        if self.is_internal:
            return (self.tail,)
        return (self.inner, self.tail)

    def with_symbols(self, lhs: Nonterminal, inner: Nonterminal = None, tail: Nonterminal = None) -> "Production":
        return Production(lhs, self.first, inner if self.is_call else None, self.ret, tail)

    def validate(self) -> None:
        if self.is_epsilon:
            if self.inner is not None or self.ret is not None or self.tail is not None:
                raise GrammarError(f"Malformed ε-production for {self.lhs!r}")
        elif self.first.is_internal:
            if self.inner is not None or self.ret is not None or self.tail is None:
                raise GrammarError(f"Malformed internal production for {self.lhs!r}")
        elif self.first.is_call:
            if self.ret is None or not self.ret.is_return or self.inner is None or self.tail is None:
                raise GrammarError(f"Malformed call production for {self.lhs!r}")
        else:
            raise GrammarError(f"A production may not start with return {self.first.id!r}")

    def __repr__(self) -> str:
        if self.is_epsilon:
            return f"{self.lhs!r} -> ε"
        if self.is_internal:
            return f"{self.lhs!r} -> {self.first.id} {self.tail!r}"
        return f"{self.lhs!r} -> {self.first.id} {self.inner!r} {self.ret.id} {self.tail!r}"


@dataclass(frozen=True, eq=False)
class Vpg:
    alphabet: VPAlphabet
    productions: FrozenSet[Production]
    starts: FrozenSet[Nonterminal]

    def __post_init__(self):
        if not self.starts:
            raise GrammarError("A grammar needs at least one start symbol")
        for p in self.productions:
            p.validate()
            for letter in (p.first, p.ret):
                if letter is not None and letter not in self.alphabet:
                    raise GrammarError(f"Letter {letter.id!r} of {p!r} is not in the alphabet")

    @classmethod
    def build(
        cls, alphabet: VPAlphabet, productions: Iterable[Production], starts: Iterable[Nonterminal]
    ) -> "Vpg":
        return cls(alphabet, frozenset(productions), frozenset(starts))

    @cached_property
    def nonterminals(self) -> FrozenSet[Nonterminal]:
        symbols: Set[Nonterminal] = set(self.starts)
        for p in self.productions:
            symbols.add(p.lhs)
            symbols.update(p.referenced)
        return frozenset(symbols)

    @cached_property
    def by_lhs(self) -> Dict[Nonterminal, Tuple[Production, ...]]:
        index: Dict[Nonterminal, List[Production]] = {x: [] for x in self.nonterminals}
        for p in self.productions:
            index[p.lhs].append(p)
        return {x: tuple(sorted(v, key=stable_key)) for x, v in index.items()}

    def productions_of(self, symbol: Nonterminal) -> Tuple[Production, ...]:
        return self.by_lhs.get(symbol, ())

    def shapes_of(self, symbol: Nonterminal) -> FrozenSet[Shape]:
        return frozenset(p.shape for p in self.productions_of(symbol))

    @cached_property
    def nullable(self) -> FrozenSet[Nonterminal]:
        return frozenset(p.lhs for p in self.productions if p.is_epsilon)

    @cached_property
    def is_uniform(self) -> bool:
        """Each nonterminal's right-hand sides are all ε, all internal, or all call-headed."""
        return all(len(self.shapes_of(x)) <= 1 for x in self.nonterminals)

    def sorted_nonterminals(self) -> List[Nonterminal]:
        return sorted(self.nonterminals, key=stable_key)

    def __repr__(self) -> str:
        return f"Vpg(nonterminals={len(self.nonterminals)}, productions={len(self.productions)})"


@dataclass(frozen=True)
class Variant:
    """Copy of a mixed nonterminal restricted to one production shape."""

    base: Nonterminal
    shape: Shape

    def __repr__(self) -> str:
        return f"{self.base!r}/{self.shape.value}"


@dataclass(frozen=True)
class Summary:
    """Nonterminal deriving the well-matched words that lead from ``source`` to ``target``."""

    source: Hashable
    target: Hashable

    def __repr__(self) -> str:
        return f"[{self.source!r},{self.target!r}]"


@dataclass(frozen=True)
class Tagged:
    side: str
    symbol: Nonterminal

    def __repr__(self) -> str:
        return f"{self.side}.{self.symbol!r}"


@dataclass(frozen=True)
class Top:
    """Top-level copy of a nonterminal: its ε-productions continue with the next grammar."""

    symbol: Nonterminal

    def __repr__(self) -> str:
        return f"{self.symbol!r}^"


def vpg_trim(grammar: Vpg) -> Vpg:
    """Drop non-generating nonterminals, then everything unreachable from the starts."""
    generating: Set[Nonterminal] = set()
    changed = True
    while changed:
        changed = False
        for p in grammar.productions:
            if p.lhs not in generating and all(x in generating for x in p.referenced):
                generating.add(p.lhs)
                changed = True
    useful = [p for p in grammar.productions if p.lhs in generating and all(x in generating for x in p.referenced)]
    by_lhs: Dict[Nonterminal, List[Production]] = {}
    for p in useful:
        by_lhs.setdefault(p.lhs, []).append(p)

    reachable: Set[Nonterminal] = set(grammar.starts)
    queue = deque(grammar.starts)
    while queue:
        x = queue.popleft()
        for p in by_lhs.get(x, ()):
            for y in p.referenced:
                if y not in reachable:
                    reachable.add(y)
                    queue.append(y)
    kept = frozenset(p for p in useful if p.lhs in reachable)
    if len(kept) != len(grammar.productions):
        logger.debug(f"Trim: {len(grammar.productions)} -> {len(kept)} productions")
    return Vpg(grammar.alphabet, kept, grammar.starts)


def vpg_uniformize(grammar: Vpg) -> Vpg:
    """Split every nonterminal with mixed production shapes into one variant per shape."""
    if grammar.is_uniform:
        return grammar

    def variants(symbol: Nonterminal) -> List[Nonterminal]:
        shapes = grammar.shapes_of(symbol)
        if len(shapes) <= 1:
            return [symbol]
        return [Variant(symbol, s) for s in sorted(shapes, key=lambda s: s.value)]

    def lhs_of(p: Production) -> Nonterminal:
        return p.lhs if len(grammar.shapes_of(p.lhs)) <= 1 else Variant(p.lhs, p.shape)

    productions: Set[Production] = set()
    for p in grammar.productions:
        if p.is_epsilon:
            productions.add(Production.epsilon(lhs_of(p)))
        elif p.is_internal:
            for tail in variants(p.tail):
                productions.add(p.with_symbols(lhs_of(p), tail=tail))
        else:
            for inner, tail in cartesian(variants(p.inner), variants(p.tail)):
                productions.add(p.with_symbols(lhs_of(p), inner=inner, tail=tail))
    starts = [v for s in grammar.starts for v in variants(s)]
    result = Vpg(grammar.alphabet, frozenset(productions), frozenset(starts))
    logger.debug(f"Uniformize: {len(grammar.nonterminals)} -> {len(result.nonterminals)} nonterminals")
    return result


def min_yield(grammar: Vpg) -> Dict[Nonterminal, float]:
    """Length of the shortest word derivable from each nonterminal (inf if none)."""
    best: Dict[Nonterminal, float] = {x: float("inf") for x in grammar.nonterminals}
    changed = True
    while changed:
        changed = False
        for p in grammar.productions:
            if p.is_epsilon:
                length = 0
            elif p.is_internal:
                length = 1 + best[p.tail]
            else:
                length = 2 + best[p.inner] + best[p.tail]
            if length < best[p.lhs]:
                best[p.lhs] = length
                changed = True
    return best


def vpg_enumerate(grammar: Vpg, max_len: int) -> Set[Word]:
    """All words of L(G) with length at most ``max_len``."""
    shortest = min_yield(grammar)
    # words[x][n]: words of length exactly n derivable from x
    words: Dict[Nonterminal, List[Set[Word]]] = {x: [] for x in grammar.nonterminals}
    for n in range(max_len + 1):
        for x in grammar.sorted_nonterminals():
            found: Set[Word] = set()
            if shortest[x] <= n:
                for p in grammar.productions_of(x):
                    if p.is_epsilon:
                        if n == 0:
                            found.add(())
                    elif p.is_internal:
                        if n >= 1:
                            found.update((p.first,) + w for w in words[p.tail][n - 1])
                    else:
                        for k in range(0, n - 1):
                            if shortest[p.inner] > k or shortest[p.tail] > n - 2 - k:
                                continue
                            for u in words[p.inner][k]:
                                for v in words[p.tail][n - 2 - k]:
                                    found.add((p.first,) + u + (p.ret,) + v)
            words[x].append(found)
    result: Set[Word] = set()
    for start in grammar.starts:
        for layer in words[start]:
            result |= layer
    return result


def vpa_to_vpg(automaton: Vpa) -> Vpg:
    """Grammar of the well-matched words accepted by ``automaton``, trimmed.

    Nonterminal [p,q] derives the well-matched words leading from p to q.
    """
    internals_from: Dict[Hashable, List] = {}
    for t in automaton.internals:
        internals_from.setdefault(t.source, []).append(t)
    calls_from: Dict[Hashable, List] = {}
    for t in automaton.calls:
        calls_from.setdefault(t.source, []).append(t)
    returns_by_pop: Dict[Hashable, List] = {}
    for t in automaton.returns:
        if t.pop is not BOTTOM:
            returns_by_pop.setdefault(t.pop, []).append(t)

    starts = [
        Summary(p, f)
        for p in sorted(automaton.initial, key=stable_key)
        for f in sorted(automaton.finals, key=stable_key)
    ]
    if not starts:
        starts = [Summary(None, None)]
    productions: Set[Production] = set()
    seen: Set[Summary] = set(starts)
    queue = deque(starts)

    def visit(symbol: Summary) -> Summary:
        if symbol not in seen:
            seen.add(symbol)
            queue.append(symbol)
        return symbol

    while queue:
        x = queue.popleft()
        p, q = x.source, x.target
        if p == q and p is not None:
            productions.add(Production.epsilon(x))
        for t in internals_from.get(p, ()):
            productions.add(Production.internal(x, t.letter, visit(Summary(t.target, q))))
        for call in calls_from.get(p, ()):
            for ret in returns_by_pop.get(call.push, ()):
                inner = visit(Summary(call.target, ret.source))
                tail = visit(Summary(ret.target, q))
                productions.add(Production.call(x, call.letter, inner, ret.letter, tail))
    grammar = vpg_trim(Vpg(automaton.alphabet, frozenset(productions), frozenset(starts)))
    logger.debug(f"VPA -> VPG: {automaton.size} states -> {len(grammar.productions)} productions")
    return grammar


def vpg_to_vpa(grammar: Vpg) -> Vpa:
    """Automaton accepting exactly L(G) under linear acceptance.

    A state is (X, empty) where X remains to be derived and ``empty`` records whether the stack is
    empty; a call X → cYrZ pushes (Z, r, empty) and the matching r resumes with Z.
    """
    pushed: Set[Tuple[Nonterminal, Letter, bool]] = set()

    def internal_moves(state):
        x, empty = state
        for p in grammar.productions_of(x):
            if p.is_internal:
                yield p.first, (p.tail, empty)

    def call_moves(state):
        x, empty = state
        for p in grammar.productions_of(x):
            if p.is_call:
                symbol = (p.tail, p.ret, empty)
                pushed.add(symbol)
                yield p.first, (p.inner, False), symbol

    def return_moves(state, top):
        x, empty = state
        if top is BOTTOM or empty or x not in grammar.nullable:
            return
        tail, ret, was_empty = top
        yield ret, (tail, was_empty)

    automaton = explore_vpa(
        grammar.alphabet,
        [(s, True) for s in sorted(grammar.starts, key=stable_key)],
        lambda state: state[1] and state[0] in grammar.nullable,
        internal_moves,
        call_moves,
        return_moves,
    )
    return automaton


def _tag_apart(first: Vpg, second: Vpg) -> Tuple[Vpg, Vpg]:
    if not first.nonterminals & second.nonterminals:
        return first, second
    return rename_nonterminals(first, lambda x: Tagged("L", x)), rename_nonterminals(
        second, lambda x: Tagged("R", x)
    )


def rename_nonterminals(grammar: Vpg, naming) -> Vpg:
    productions = {
        Production(
            naming(p.lhs),
            p.first,
            None if p.inner is None else naming(p.inner),
            p.ret,
            None if p.tail is None else naming(p.tail),
        )
        for p in grammar.productions
    }
    return Vpg(grammar.alphabet, frozenset(productions), frozenset(naming(s) for s in grammar.starts))


def concat_vpg(first: Vpg, second: Vpg) -> Vpg:
    """Grammar of L(first) · L(second).

    The top-level spine of ``first`` is copied; its ε-productions are replaced by the right-hand
    sides of ``second``'s start symbols.
    """
    first, second = _tag_apart(first, second)
    alphabet = first.alphabet.union(second.alphabet)
    start_rhs = [p for s in sorted(second.starts, key=stable_key) for p in second.productions_of(s)]
    productions: Set[Production] = set(first.productions) | set(second.productions)
    seen: Set[Nonterminal] = set(first.starts)
    queue = deque(first.starts)
    while queue:
        x = queue.popleft()
        for p in first.productions_of(x):
            if p.is_epsilon:
                for q in start_rhs:
                    productions.add(Production(Top(x), q.first, q.inner, q.ret, q.tail))
                continue
            productions.add(p.with_symbols(Top(x), inner=p.inner, tail=Top(p.tail)))
            if p.tail not in seen:
                seen.add(p.tail)
                queue.append(p.tail)
    grammar = Vpg(alphabet, frozenset(productions), frozenset(Top(s) for s in first.starts))
    return vpg_uniformize(vpg_trim(grammar))


def reverse_vpg(grammar: Vpg) -> Vpg:
    """Grammar of the reversed words, over the mirrored alphabet."""
    return vpa_to_vpg(reverse_vpa(vpg_to_vpa(grammar), well_matched=False))
