"""Visibly pushdown contextual orders: a complete deterministic VPA plus a letter order per state."""

from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, List, Sequence, Set, Tuple

from hyperprod.core.exceptions import OrderError
from hyperprod.core.logging import logger
from hyperprod.orders.linear import Comparison, LinearOrder
from hyperprod.vpl.alphabet import BOTTOM, Letter, VPAlphabet, stable_key
from hyperprod.vpl.vpa import Vpa

State = Hashable
StackSymbol = Hashable


@dataclass(frozen=True, eq=False)
class OrderAutomaton:
    """Deterministic, complete transition tables over the reachable states, with ord(q) per state."""

    alphabet: VPAlphabet
    initial: State
    internal_moves: Dict[Tuple[State, Letter], State]
    call_moves: Dict[Tuple[State, Letter], Tuple[State, StackSymbol]]
    return_moves: Dict[Tuple[State, Letter, StackSymbol], State]
    orders: Dict[State, LinearOrder]
    stack_symbols: FrozenSet[StackSymbol]
    name: str = "order"

    @classmethod
    def explore(
        cls,
        alphabet: VPAlphabet,
        initial: State,
        internal: Callable[[State, Letter], State],
        call: Callable[[State, Letter], Tuple[State, StackSymbol]],
        ret: Callable[[State, Letter, StackSymbol], State],
        order: Callable[[State], LinearOrder],
        name: str = "order",
    ) -> "OrderAutomaton":
        """Tabulate the reachable part of an order given by transition functions."""
        internal_moves: Dict[Tuple[State, Letter], State] = {}
        call_moves: Dict[Tuple[State, Letter], Tuple[State, StackSymbol]] = {}
        return_moves: Dict[Tuple[State, Letter, StackSymbol], State] = {}
        orders: Dict[State, LinearOrder] = {}
        symbols: Set[StackSymbol] = set()
        popped: Set[Tuple[State, StackSymbol]] = set()
        queue: deque = deque()

        def reach(state: State) -> None:
            if state not in orders:
                orders[state] = order(state)
                queue.append(state)

        reach(initial)
        while True:
            while queue:
                q = queue.popleft()
                for a in alphabet.internals:
                    target = internal(q, a)
                    internal_moves[(q, a)] = target
                    reach(target)
                for c in alphabet.calls:
                    target, push = call(q, c)
                    call_moves[(q, c)] = (target, push)
                    symbols.add(push)
                    reach(target)
            pending = [
                (q, g) for q in list(orders) for g in (BOTTOM, *symbols) if (q, g) not in popped
            ]
            if not pending:
                break
            for q, g in pending:
                popped.add((q, g))
                for r in alphabet.returns:
                    target = ret(q, r, g)
                    return_moves[(q, r, g)] = target
                    reach(target)

        automaton = cls(
            alphabet=alphabet,
            initial=initial,
            internal_moves=internal_moves,
            call_moves=call_moves,
            return_moves=return_moves,
            orders=orders,
            stack_symbols=frozenset(symbols),
            name=name,
        )
        automaton.validate()
        logger.debug(f"Order automaton {name}: {len(orders)} states, {len(symbols)} stack symbols")
        return automaton

    @property
    def states(self) -> FrozenSet[State]:
        return frozenset(self.orders)

    def sorted_states(self) -> List[State]:
        return sorted(self.orders, key=stable_key)

    def validate(self) -> None:
        """Check completeness of the tables and that each ord(q) orders the whole alphabet."""
        for q, order in self.orders.items():
            if not order.covers(self.alphabet):
                raise OrderError(f"ord({q!r}) does not order exactly the alphabet")
            for a in self.alphabet.internals:
                if (q, a) not in self.internal_moves:
                    raise OrderError(f"Missing internal move from {q!r} on {a.id!r}")
            for c in self.alphabet.calls:
                if (q, c) not in self.call_moves:
                    raise OrderError(f"Missing call move from {q!r} on {c.id!r}")
            for r in self.alphabet.returns:
                for g in (BOTTOM, *self.stack_symbols):
                    if (q, r, g) not in self.return_moves:
                        raise OrderError(f"Missing return move from {q!r} on {r.id!r} popping {g!r}")
        targets = list(self.internal_moves.values()) + [t for t, _ in self.call_moves.values()]
        targets += list(self.return_moves.values())
        if any(t not in self.orders for t in targets):
            raise OrderError("A transition leads outside the tabulated states")

    # -- running ---------------------------------------------------------------
    def step(
        self, state: State, stack: Tuple[StackSymbol, ...], letter: Letter
    ) -> Tuple[State, Tuple[StackSymbol, ...]]:
        try:
            if letter.is_internal:
                return self.internal_moves[(state, letter)], stack
            if letter.is_call:
                target, push = self.call_moves[(state, letter)]
                return target, stack + (push,)
            top = stack[-1] if stack else BOTTOM
            return self.return_moves[(state, letter, top)], stack[:-1]
        except KeyError:
            raise OrderError(f"Undefined transition from {state!r} on {letter.id!r}") from None

    def run(self, word: Sequence[Letter]) -> State:
        state, stack = self.initial, ()
        for letter in word:
            state, stack = self.step(state, stack, letter)
        return state

    def order_at(self, context: Sequence[Letter]) -> LinearOrder:
        """ord(q) for the state q reached on ``context``."""
        return self.orders[self.run(context)]

    def reachable_states(self) -> FrozenSet[State]:
        return self.states

    def as_vpa(self) -> Vpa:
        """The underlying automaton, every state final."""
        return Vpa.build(
            self.alphabet,
            initial=[self.initial],
            finals=self.orders,
            internals=[(q, a, t) for (q, a), t in self.internal_moves.items()],
            calls=[(q, c, t, g) for (q, c), (t, g) in self.call_moves.items()],
            returns=[(q, r, g, t) for (q, r, g), t in self.return_moves.items()],
            states=self.orders,
        )

    def __repr__(self) -> str:
        return f"OrderAutomaton({self.name}, states={len(self.orders)})"


def constant_order(alphabet: VPAlphabet, order: LinearOrder, name: str = "constant") -> OrderAutomaton:
    """Single-state order automaton, the same order in every context."""
    star = "⋆"
    return OrderAutomaton.explore(
        alphabet,
        star,
        lambda q, a: star,
        lambda q, c: (star, star),
        lambda q, r, g: star,
        lambda q: order,
        name=name,
    )


def clo_compare(order: OrderAutomaton, u: Sequence[Letter], v: Sequence[Letter]) -> Comparison:
    """Contextual lexicographic comparison: a prefix is smaller; otherwise the first difference
    decides, under the order reached on the common prefix."""
    u, v = tuple(u), tuple(v)
    if u == v:
        return Comparison.EQUAL
    common = 0
    while common < len(u) and common < len(v) and u[common] == v[common]:
        common += 1
    if common == len(u):
        return Comparison.LESS
    if common == len(v):
        return Comparison.GREATER
    return order.order_at(u[:common]).compare(u[common], v[common])
