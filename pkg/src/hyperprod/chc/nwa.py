"""Horn encoding of a product automaton read as a nested word automaton.

State q gets a predicate I_q(P, L, r): L is the current frame, P the frame the current procedure
was entered with, and r the id of the state that made the pending call (-1 at top level). A return
combines the caller's fact with the callee's, checking that the callee was entered from that very
caller state and with the frame the call letter produces.

A return must know which call letter it matches. States with several call transitions are split
into one copy per call transition first, so each state issues at most one call.

Return clauses are emitted per matching pair: a return transition popping symbol g gets one clause
for every distinct (source state, call letter) among the call transitions pushing g, since the
clause needs the call letter to relate the caller frame to the callee entry. After splitting, the
system thus has one clause per initial state, internal transition, call transition and final
state, plus one per such (call, return) pair. Returns on the empty stack get no clause.
"""

from dataclasses import dataclass
from typing import Dict, Hashable, List, Tuple

from hyperprod.chc.semantics import Frame, ProductSemantics
from hyperprod.chc.system import Application, ChcSystem, Clause
from hyperprod.chc.terms import bind, eq, int_literal
from hyperprod.chc.vpg import predicate_names, query_clause
from hyperprod.core.exceptions import EncodingError
from hyperprod.core.logging import logger
from hyperprod.frontend.property import HyperProperty
from hyperprod.vpl.alphabet import BOTTOM
from hyperprod.vpl.dump import label
from hyperprod.vpl.vpa import CallTransition, InternalTransition, ReturnTransition, State, Vpa

TOP_LEVEL = -1
RETURN_ADDRESS = "r"


@dataclass(frozen=True)
class Split:
    """Copy of ``state`` that keeps only its ``index``-th call transition."""

    state: Hashable
    index: int

    def __repr__(self) -> str:
        return f"{self.state!r}#{self.index}"


def split_call_states(automaton: Vpa) -> Tuple[Vpa, int]:
    """Equivalent automaton where every state has at most one outgoing call transition.

    Returns the automaton and the number of states that had to be split.
    """
    calls_from: Dict[State, List[CallTransition]] = {}
    for t in automaton.calls:
        calls_from.setdefault(t.source, []).append(t)
    copies: Dict[State, List[State]] = {}
    split = 0
    for q in automaton.states:
        outgoing = sorted(calls_from.get(q, ()), key=repr)
        if len(outgoing) > 1:
            copies[q] = [Split(q, i) for i in range(len(outgoing))]
            split += 1
        else:
            copies[q] = [q]

    def images(q: State) -> List[State]:
        return copies[q]

    internals = {
        InternalTransition(s, t.letter, d) for t in automaton.internals for s in images(t.source) for d in images(t.target)
    }
    returns = {
        ReturnTransition(s, t.letter, t.pop, d) for t in automaton.returns for s in images(t.source) for d in images(t.target)
    }
    calls = set()
    for q, outgoing in calls_from.items():
        ordered = sorted(outgoing, key=repr)
        sources = images(q)
        for i, t in enumerate(ordered):
            source = sources[i] if len(sources) > 1 else sources[0]
            for d in images(t.target):
                calls.add(CallTransition(source, t.letter, d, t.push))
    result = Vpa(
        alphabet=automaton.alphabet,
        states=frozenset(s for q in automaton.states for s in images(q)),
        initial=frozenset(s for q in automaton.initial for s in images(q)),
        finals=frozenset(s for q in automaton.finals for s in images(q)),
        internals=frozenset(internals),
        calls=frozenset(calls),
        returns=frozenset(returns),
        stack_symbols=automaton.stack_symbols,
    )
    return result, split


class NwaEncoder:
    def __init__(self, automaton: Vpa, prop: HyperProperty, semantics: ProductSemantics, ghost: bool = True):
        self.automaton, self.splits = split_call_states(automaton)
        self.prop = prop
        self.semantics = semantics
        self.ghost = ghost
        self.names = predicate_names(self.automaton.states, "inv")
        self.ids = {q: i for i, q in enumerate(sorted(self.automaton.states, key=label))}
        self.system = ChcSystem()

    # -- helpers -------------------------------------------------------------------
    def _fact(self, q: State, entry: Frame, current: Frame, address: str) -> Application:
        args = self.semantics.args(entry) + self.semantics.args(current)
        if self.ghost:
            args += (address,)
        return Application(self.names[q], args)

    def _variables(self, *frames: Frame, addresses: Tuple[str, ...] = ()) -> Tuple[Tuple[str, str], ...]:
        variables = [v for frame in frames for v in self.semantics.declare(frame)]
        if self.ghost:
            variables += [(a, "Int") for a in addresses]
        return tuple(variables)

    def _address(self, q: State) -> str:
        return int_literal(self.ids[q])

    # -- encoding ------------------------------------------------------------------
    def encode(self) -> ChcSystem:
        sorts = self.semantics.sorts * 2 + (("Int",) if self.ghost else ())
        for q in sorted(self.automaton.states, key=label):
            self.system.declare(self.names[q], sorts, label(q))
        self._initial()
        for t in sorted(self.automaton.internals, key=repr):
            self._internal(t)
        for t in sorted(self.automaton.calls, key=repr):
            self._call(t)
        dropped = self._returns()
        self._finals()
        self.system.validate()
        self.system.stats.update(
            states=len(self.automaton.states),
            transitions=self.automaton.transition_count,
            split_states=self.splits,
            dropped_bottom_returns=dropped,
        )
        logger.debug(
            f"NWA encoding: {len(self.system.predicates)} predicates, {len(self.system.clauses)} clauses, "
            f"{self.splits} split state(s)"
        )
        return self.system

    def _initial(self) -> None:
        entry, current = self.semantics.frame(0), self.semantics.frame(1)
        for q in sorted(self.automaton.initial, key=label):
            constraints = [bind(self.prop.pre, current)]
            constraints += [eq(entry[n], current[n]) for n in self.semantics.names]
            head = self._fact(q, entry, current, int_literal(TOP_LEVEL))
            self.system.add(Clause(self._variables(entry, current), (), tuple(constraints), head, "initial"))

    def _internal(self, t: InternalTransition) -> None:
        entry, before, after = (self.semantics.frame(v) for v in range(3))
        constraints = self.semantics.internal(t.letter, before, after)
        body = (self._fact(t.source, entry, before, RETURN_ADDRESS),)
        head = self._fact(t.target, entry, after, RETURN_ADDRESS)
        variables = self._variables(entry, before, after, addresses=(RETURN_ADDRESS,))
        self.system.add(Clause(variables, body, tuple(constraints), head, repr(t)))

    def _call(self, t: CallTransition) -> None:
        entry, before, callee = (self.semantics.frame(v) for v in range(3))
        constraints = self.semantics.call(t.letter, before, callee)
        body = (self._fact(t.source, entry, before, RETURN_ADDRESS),)
        head = self._fact(t.target, callee, callee, self._address(t.source))
        variables = self._variables(entry, before, callee, addresses=(RETURN_ADDRESS,))
        self.system.add(Clause(variables, body, tuple(constraints), head, repr(t)))

    def _returns(self) -> int:
        # a target copy made by splitting may repeat a (source, letter) pair
        callers: Dict[Hashable, Dict[Tuple[State, str], CallTransition]] = {}
        for t in sorted(self.automaton.calls, key=repr):
            callers.setdefault(t.push, {}).setdefault((t.source, t.letter.id), t)
        dropped = 0
        for t in sorted(self.automaton.returns, key=repr):
            if t.pop is BOTTOM:
                dropped += 1
                continue
            for call in callers.get(t.pop, {}).values():
                self._return(call, t)
        if dropped:
            logger.warning(f"Dropped {dropped} return transition(s) on the empty stack")
        return dropped

    def _return(self, call: CallTransition, t: ReturnTransition) -> None:
        if call.letter.component != t.letter.component:
            raise EncodingError(
                f"Return {t.letter.id!r} pops the frame of call {call.letter.id!r} from another component"
            )
        entry, before, callee_entry, callee_exit, after = (self.semantics.frame(v) for v in range(5))
        constraints = self.semantics.call(call.letter, before, callee_entry)
        constraints += self.semantics.ret(t.letter, before, callee_exit, after)
        callee_address = self._address(call.source) if self.ghost else RETURN_ADDRESS
        body = (
            self._fact(call.source, entry, before, RETURN_ADDRESS),
            self._fact(t.source, callee_entry, callee_exit, callee_address),
        )
        head = self._fact(t.target, entry, after, RETURN_ADDRESS)
        variables = self._variables(entry, before, callee_entry, callee_exit, after, addresses=(RETURN_ADDRESS,))
        self.system.add(Clause(variables, body, tuple(constraints), head, f"{call!r} / {t!r}"))

    def _finals(self) -> None:
        entry, current = self.semantics.frame(0), self.semantics.frame(1)
        for q in sorted(self.automaton.finals, key=label):
            app = self._fact(q, entry, current, int_literal(TOP_LEVEL))
            self.system.add(query_clause([app], self._variables(entry, current), self.prop, entry, current))


def encode_nwa(automaton: Vpa, prop: HyperProperty, semantics: ProductSemantics, ghost: bool = True) -> ChcSystem:
    """Horn clauses whose satisfiability proves ``prop`` for every accepted well-matched run.

    With ``ghost=False`` the return address is left out; the result is then unsound for unsat
    answers and only serves as a regression baseline.
    """
    return NwaEncoder(automaton, prop, semantics, ghost).encode()
