"""Statement letters and their concrete semantics on stack frames.

A frame maps every variable of a component to a value. Internals rewrite the top frame; a call
pushes a fresh frame whose parameters hold the argument values and whose other variables hold
their type's default; a return pops the callee frame and copies the callee's outputs into the
caller's targets.
"""

from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Tuple

from hyperprod.core.exceptions import ProgramError
from hyperprod.frontend.ast import Binary, BoolLit, Expr, Index, IntLit, Store, Type, Unary, Var
from hyperprod.frontend.printer import expr_str

Frame = Dict[str, Any]


@dataclass(frozen=True)
class ArrayValue:
    """Integer array with default 0 at every index, kept as a sorted tuple of non-default cells."""

    cells: Tuple[Tuple[int, int], ...] = ()

    def select(self, index: int) -> int:
        return dict(self.cells).get(index, 0)

    def store(self, index: int, value: int) -> "ArrayValue":
        cells = dict(self.cells)
        if value == 0:
            cells.pop(index, None)
        else:
            cells[index] = value
        return ArrayValue(tuple(sorted(cells.items())))


DEFAULTS: Dict[Type, Any] = {Type.INT: 0, Type.BOOL: False, Type.INT_ARRAY: ArrayValue()}


def default_value(type_: Type) -> Any:
    return DEFAULTS[type_]


_BINARY = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


def evaluate(expr: Expr, frame: Mapping[str, Any]) -> Any:
    if isinstance(expr, IntLit):
        return expr.value
    if isinstance(expr, BoolLit):
        return expr.value
    if isinstance(expr, Var):
        try:
            return frame[expr.name]
        except KeyError:
            raise ProgramError(f"Variable {expr.name!r} has no value in this frame") from None
    if isinstance(expr, Index):
        return evaluate(expr.array, frame).select(evaluate(expr.index, frame))
    if isinstance(expr, Store):
        return evaluate(expr.array, frame).store(evaluate(expr.index, frame), evaluate(expr.value, frame))
    if isinstance(expr, Unary):
        value = evaluate(expr.operand, frame)
        return (not value) if expr.op == "!" else -value
    if isinstance(expr, Binary):
        if expr.op == "&&":
            return evaluate(expr.left, frame) and evaluate(expr.right, frame)
        if expr.op == "||":
            return evaluate(expr.left, frame) or evaluate(expr.right, frame)
        return _BINARY[expr.op](evaluate(expr.left, frame), evaluate(expr.right, frame))
    raise ProgramError(f"Cannot evaluate {expr!r}")


# -- letter payloads -------------------------------------------------------------------


@dataclass(frozen=True)
class AssignStmt:
    """Simultaneous assignment of ``values`` to ``targets``."""

    targets: Tuple[str, ...]
    values: Tuple[Expr, ...]

    def __str__(self) -> str:
        return f"{', '.join(self.targets)} := {', '.join(expr_str(v) for v in self.values)}"

    def updates(self) -> Tuple[Tuple[str, Expr], ...]:
        return tuple(zip(self.targets, self.values))


@dataclass(frozen=True)
class StoreStmt:
    """``array[index] := value``."""

    array: str
    index: Expr
    value: Expr

    def __str__(self) -> str:
        return f"{self.array}[{expr_str(self.index)}] := {expr_str(self.value)}"

    def updates(self) -> Tuple[Tuple[str, Expr], ...]:
        return ((self.array, Store(Var(self.array), self.index, self.value)),)


@dataclass(frozen=True)
class AssumeStmt:
    cond: Expr

    def __str__(self) -> str:
        return f"assume {expr_str(self.cond)}"


@dataclass(frozen=True)
class CallLetter:
    """Entering ``procedure``: its parameters ``params`` receive ``args`` evaluated in the caller."""

    procedure: str
    args: Tuple[Expr, ...]
    params: Tuple[str, ...]

    def __str__(self) -> str:
        return f"call {self.procedure}({', '.join(expr_str(a) for a in self.args)})"


@dataclass(frozen=True)
class ReturnLetter:
    """Leaving ``procedure``: caller ``targets`` receive the callee's ``outputs``."""

    procedure: str
    targets: Tuple[str, ...]
    outputs: Tuple[str, ...]

    def __str__(self) -> str:
        if not self.targets:
            return f"ret {self.procedure}"
        if len(self.targets) == 1:
            return f"ret {self.targets[0]} := {self.procedure}"
        return f"ret ({', '.join(self.targets)}) := {self.procedure}"


INTERNAL_PAYLOADS = (AssignStmt, StoreStmt, AssumeStmt)


class StatementSemantics:
    """Concrete frame relation of every statement letter over one component's variables.

    The relations are functional apart from assume, which may block; blocking is reported as None.
    """

    def __init__(self, variables: Mapping[str, Type]):
        self.variables = dict(variables)

    def initial_frame(self, values: Optional[Mapping[str, Any]] = None) -> Frame:
        frame = {name: default_value(t) for name, t in self.variables.items()}
        for name, value in (values or {}).items():
            if name not in frame:
                raise ProgramError(f"Unknown variable {name!r} in initial values")
            frame[name] = value
        return frame

    def internal(self, payload, frame: Frame) -> Optional[Frame]:
        if isinstance(payload, AssumeStmt):
            return dict(frame) if evaluate(payload.cond, frame) else None
        if isinstance(payload, (AssignStmt, StoreStmt)):
            values = [(target, evaluate(value, frame)) for target, value in payload.updates()]
            updated = dict(frame)
            updated.update(values)
            return updated
        raise ProgramError(f"{payload!r} is not an internal statement")

    def call(self, payload: CallLetter, frame: Frame) -> Frame:
        callee = self.initial_frame()
        for param, arg in zip(payload.params, payload.args):
            callee[param] = evaluate(arg, frame)
        return callee

    def ret(self, payload: ReturnLetter, callee: Frame, caller: Frame) -> Frame:
        updated = dict(caller)
        for target, output in zip(payload.targets, payload.outputs):
            updated[target] = callee[output]
        return updated
