"""Concrete interpreters for product runs.

The single-stack interpreter keeps one frame over the variables of all components: a letter
updates the variables of its own component and copies everything else through calls and
returns. The multi-stack interpreter gives every component its own call stack. On well-nested
runs both end with the same top-frame valuation.
"""

from enum import Enum
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from hyperprod.core.exceptions import ProgramError
from hyperprod.frontend.ast import Program, Type
from hyperprod.frontend.semantics import (
    INTERNAL_PAYLOADS,
    CallLetter,
    Frame,
    ReturnLetter,
    StatementSemantics,
    default_value,
    evaluate,
)
from hyperprod.vpl.alphabet import Letter

Valuation = Tuple[Tuple[str, Any], ...]


class StackMode(str, Enum):
    SINGLE = "single_stack"
    MULTI = "multi_stack"


def valuation(frame: Mapping[str, Any]) -> Valuation:
    return tuple(sorted(frame.items()))


class ProductInterpreter:
    """Variables per component (and shared globals) of a product of programs."""

    def __init__(self, variables: Mapping[int, Mapping[str, Type]], shared: Optional[Mapping[str, Type]] = None):
        self.variables = {i: dict(v) for i, v in variables.items()}
        self.shared = dict(shared or {})
        self.owner: Dict[str, int] = {}
        for i, names in self.variables.items():
            for name in names:
                if name in self.owner or name in self.shared:
                    raise ProgramError(f"Variable {name!r} belongs to more than one component")
                self.owner[name] = i
        self.statements = {i: StatementSemantics({**v, **self.shared}) for i, v in self.variables.items()}

    @classmethod
    def for_programs(cls, programs: Sequence[Program], shared: Optional[Mapping[str, Type]] = None):
        return cls({i: p.variables() for i, p in enumerate(programs, start=1)}, shared)

    def initial(self, values: Optional[Mapping[str, Any]] = None) -> Frame:
        frame = {name: default_value(t) for v in self.variables.values() for name, t in v.items()}
        frame.update({name: default_value(t) for name, t in self.shared.items()})
        for name, value in (values or {}).items():
            if name not in frame:
                raise ProgramError(f"Unknown variable {name!r} in initial values")
            frame[name] = value
        return frame

    def _statements(self, letter: Letter) -> StatementSemantics:
        if letter.component not in self.statements:
            raise ProgramError(f"Letter {letter.id!r} belongs to unknown component {letter.component}")
        return self.statements[letter.component]

    # -- one shared stack ------------------------------------------------------------
    def single_stack(self, run: Sequence[Letter], values: Optional[Mapping[str, Any]] = None) -> Optional[Frame]:
        stack: List[Frame] = []
        frame = self.initial(values)
        for letter in run:
            statements = self._statements(letter)
            payload = letter.payload
            if letter.is_internal:
                frame = statements.internal(payload, frame)
                if frame is None:
                    return None
            elif letter.is_call:
                callee = dict(frame)
                own = self.variables[letter.component]
                callee.update({name: default_value(t) for name, t in own.items()})
                callee.update(_arguments(payload, frame))
                stack.append(frame)
                frame = callee
            else:
                if not stack:
                    return None
                caller = stack.pop()
                own = self.variables[letter.component]
                result = {name: caller[name] if name in own else value for name, value in frame.items()}
                result.update(_results(payload, frame))
                frame = result
        return frame

    # -- one stack per component -----------------------------------------------------
    def multi_stack(self, run: Sequence[Letter], values: Optional[Mapping[str, Any]] = None) -> Optional[Frame]:
        start = self.initial(values)
        shared = {name: start[name] for name in self.shared}
        stacks: Dict[int, List[Frame]] = {
            i: [{name: start[name] for name in v}] for i, v in self.variables.items()
        }
        for letter in run:
            statements = self._statements(letter)
            stack = stacks[letter.component]
            payload = letter.payload
            if letter.is_internal:
                updated = statements.internal(payload, {**stack[-1], **shared})
                if updated is None:
                    return None
                stack[-1] = {name: updated[name] for name in stack[-1]}
                shared = {name: updated[name] for name in shared}
            elif letter.is_call:
                callee = statements.call(payload, {**stack[-1], **shared})
                stack.append({name: callee[name] for name in stack[-1]})
            else:
                if len(stack) < 2:
                    return None
                exit_ = stack.pop()
                stack[-1] = statements.ret(payload, exit_, stack[-1])
        top: Frame = dict(shared)
        for stack in stacks.values():
            top.update(stack[-1])
        return top


def _arguments(payload: Any, frame: Frame) -> Frame:
    if not isinstance(payload, CallLetter):
        raise ProgramError(f"Call letter carries {payload!r}")
    return {param: evaluate(arg, frame) for param, arg in zip(payload.params, payload.args)}


def _results(payload: Any, exit_: Frame) -> Frame:
    if not isinstance(payload, ReturnLetter):
        raise ProgramError(f"Return letter carries {payload!r}")
    return {target: exit_[output] for target, output in zip(payload.targets, payload.outputs)}


def interpret(
    run: Sequence[Letter],
    interpreter: ProductInterpreter,
    values: Optional[Mapping[str, Any]] = None,
    mode: StackMode = StackMode.SINGLE,
) -> FrozenSet[Valuation]:
    """Top-frame valuations reachable at the end of ``run``; empty when the run is infeasible."""
    mode = StackMode(mode)
    for letter in run:
        if letter.is_internal and not isinstance(letter.payload, INTERNAL_PAYLOADS):
            raise ProgramError(f"Internal letter {letter.id!r} carries no statement")
    if mode is StackMode.SINGLE:
        final = interpreter.single_stack(run, values)
    else:
        final = interpreter.multi_stack(run, values)
    return frozenset() if final is None else frozenset({valuation(final)})
