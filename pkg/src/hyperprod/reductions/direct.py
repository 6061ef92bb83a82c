"""Direct grammar constructions for nested concatenation and lockstep.

Both work from a queue of reachable product nonterminals and only emit the productions those
nonterminals need. Inputs must be uniform: all right-hand sides of a nonterminal are ε, all
start with an internal, or all start with a call.
"""

from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Callable, Deque, Iterable, List, Sequence, Set, Tuple, Union

from hyperprod.core.exceptions import ReductionError
from hyperprod.core.logging import logger
from hyperprod.orders.canonical import check_speeds, dec
from hyperprod.vpl.alphabet import Letter
from hyperprod.vpl.vpg import Nonterminal, Production, Shape, Tagged, Vpg, vpg_trim

EMPTY = "E"


@dataclass(frozen=True)
class NestedPair:
    """Derives outer ⊕ inner for an outer nonterminal of the first grammar."""

    outer: Nonterminal
    inner: Nonterminal

    def __repr__(self) -> str:
        return f"[{self.outer!r},{self.inner!r}]"


@dataclass(frozen=True)
class Block:
    """The single call block c Z r of a call production, without its continuation."""

    call: Letter
    inside: Nonterminal
    ret: Letter

    def __repr__(self) -> str:
        return f"{self.call.id}·{self.inside!r}·{self.ret.id}"


@dataclass(frozen=True)
class Lockstep:
    speeds: Tuple[int, ...]
    helper: Tuple[int, ...]
    parts: Tuple[Nonterminal, ...]

    def __repr__(self) -> str:
        return f"[{self.speeds},{self.helper},({','.join(repr(p) for p in self.parts)})]"


Part = Union[Tagged, Block]


def _require_uniform(grammars: Sequence[Vpg]) -> None:
    for index, grammar in enumerate(grammars, start=1):
        if not grammar.is_uniform:
            raise ReductionError(f"Input grammar {index} is not uniform")


def _tagged(grammars: Sequence[Vpg]) -> Tuple[List[Production], Callable[[Tagged], Tuple[Production, ...]]]:
    """Tagged copies of all input productions, and a lookup of a tagged symbol's productions."""
    copies: List[Production] = []
    for index, grammar in enumerate(grammars):
        side = str(index + 1)

        def tag(x, side=side):
            return None if x is None else Tagged(side, x)

        copies.extend(Production(tag(p.lhs), p.first, tag(p.inner), p.ret, tag(p.tail)) for p in grammar.productions)

    by_lhs = {}
    for p in copies:
        by_lhs.setdefault(p.lhs, []).append(p)

    def productions_of(symbol: Tagged) -> Tuple[Production, ...]:
        return tuple(by_lhs.get(symbol, ()))

    return copies, productions_of


def _run_queue(
    starts: Iterable[Nonterminal],
    expand: Callable[[Nonterminal], Iterable[Production]],
    is_product: Callable[[Nonterminal], bool],
) -> Set[Production]:
    """Algorithm shared by the direct constructions: expand product symbols as they are reached."""
    productions: Set[Production] = set()
    seen: Set[Nonterminal] = set()
    queue: Deque[Nonterminal] = deque()
    for s in starts:
        if is_product(s) and s not in seen:
            seen.add(s)
            queue.append(s)
    while queue:
        x = queue.popleft()
        for p in expand(x):
            productions.add(p)
            for y in p.referenced:
                if is_product(y) and y not in seen:
                    seen.add(y)
                    queue.append(y)
    return productions


def nested_concat_vpg(first: Vpg, second: Vpg) -> Vpg:
    """Grammar of u ⊕ v for u in L(first), v in L(second)."""
    _require_uniform((first, second))
    copies, productions_of = _tagged((first, second))

    def shape(symbol: Tagged) -> Shape:
        shapes = {p.shape for p in productions_of(symbol)}
        return shapes.pop() if len(shapes) == 1 else None

    def pair(outer: Tagged, inner: Tagged) -> Nonterminal:
        return inner if shape(outer) is Shape.EPSILON else NestedPair(outer, inner)

    def expand(x: NestedPair) -> Iterable[Production]:
        for p in productions_of(x.outer):
            if p.is_internal:
                yield Production.internal(x, p.first, pair(p.tail, x.inner))
            elif p.is_call:
                yield Production.call(x, p.first, pair(p.inner, x.inner), p.ret, p.tail)

    starts = [pair(Tagged("1", s1), Tagged("2", s2)) for s1 in first.starts for s2 in second.starts]
    productions = _run_queue(starts, expand, lambda y: isinstance(y, NestedPair))
    productions.update(copies)
    alphabet = first.alphabet.union(second.alphabet)
    grammar = vpg_trim(Vpg(alphabet, frozenset(productions), frozenset(starts)))
    logger.debug(f"Direct nested concatenation: {len(grammar.productions)} productions")
    return grammar


def lockstep_vpg(speeds: Sequence[int], *grammars: Vpg) -> Vpg:
    """Grammar of the s-lockstep of the input languages."""
    speeds = check_speeds(speeds)
    if len(speeds) != len(grammars):
        raise ReductionError(f"Speed vector {speeds} given for {len(grammars)} grammars")
    _require_uniform(grammars)
    copies, tagged_productions = _tagged(grammars)

    def productions_of(part: Part) -> Tuple[Production, ...]:
        if isinstance(part, Block):
            return (Production.call(part, part.call, part.inside, part.ret, EMPTY),)
        if part == EMPTY:
            return (Production.epsilon(EMPTY),)
        return tagged_productions(part)

    def is_empty(part: Part) -> bool:
        """Derives only ε. A part without productions derives nothing and stays in place."""
        choices = productions_of(part)
        return part == EMPTY or (bool(choices) and all(p.is_epsilon for p in choices))

    def symbol(speeds_: Tuple[int, ...], helper: Tuple[int, ...], parts: Sequence[Part]) -> Nonterminal:
        live = [i for i, part in enumerate(parts) if not is_empty(part)]
        if not live:
            return EMPTY
        if len(live) == 1:
            return parts[live[0]]
        return Lockstep(
            tuple(speeds_[i] for i in live), tuple(helper[i] for i in live), tuple(parts[i] for i in live)
        )

    def block_of(p: Production) -> Block:
        return Block(p.first, p.inner, p.ret)

    def expand(x: Nonterminal) -> Iterable[Production]:
        if isinstance(x, Block):
            yield from productions_of(x)
            return
        s, t, parts = x.speeds, x.helper, x.parts
        options = [productions_of(part) for part in parts]
        for j, choices in enumerate(options):
            if choices and all(p.is_internal for p in choices):
                for p in choices:
                    moved = parts[:j] + (p.tail,) + parts[j + 1 :]
                    yield Production.internal(x, p.first, symbol(s, t, moved))
                return
        inner_t = dec(s, t)
        if not any(t):
            for combination in cartesian(*options):
                first = combination[0]
                inside = [first.inner] + [block_of(p) for p in combination[1:]]
                rests = [p.tail for p in combination]
                yield Production.call(x, first.first, symbol(s, inner_t, inside), first.ret, symbol(s, t, rests))
            return
        m = next(i for i, value in enumerate(t) if value > 0)
        for p in options[m]:
            moved = parts[:m] + (p.inner,) + parts[m + 1 :]
            yield Production.call(x, p.first, symbol(s, inner_t, moved), p.ret, p.tail)

    start_parts = cartesian(*[[Tagged(str(i + 1), s) for s in g.starts] for i, g in enumerate(grammars)])
    starts = [symbol(speeds, (0,) * len(speeds), parts) for parts in start_parts]
    productions = _run_queue(starts, expand, lambda y: isinstance(y, (Lockstep, Block)))
    productions.update(copies)
    productions.add(Production.epsilon(EMPTY))
    alphabet = grammars[0].alphabet.union(*(g.alphabet for g in grammars[1:]))
    grammar = vpg_trim(Vpg(alphabet, frozenset(productions), frozenset(starts)))
    logger.debug(f"Direct {speeds}-lockstep: {len(grammar.productions)} productions")
    return grammar
