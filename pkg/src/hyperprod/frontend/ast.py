"""Syntax tree of the mini recursive language.

Nodes are frozen dataclasses without source positions, so two parses of equivalent text compare
equal. Positions only live in tokens and in the errors raised while parsing.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, Optional, Tuple, Union

from hyperprod.core.exceptions import ProgramError


class Type(str, Enum):
    INT = "int"
    BOOL = "bool"
    INT_ARRAY = "int[]"


# -- expressions -----------------------------------------------------------------


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Index:
    array: "Expr"
    index: "Expr"


@dataclass(frozen=True)
class Store:
    """Array ``array`` with position ``index`` overwritten; only produced by array assignments."""

    array: "Expr"
    index: "Expr"
    value: "Expr"


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[IntLit, BoolLit, Var, Index, Store, Unary, Binary]

ARITHMETIC_OPS = ("+", "-", "*")
COMPARISON_OPS = ("<", "<=", ">", ">=", "==", "!=")
LOGICAL_OPS = ("&&", "||")


def free_variables(expr: Expr) -> Iterator[str]:
    if isinstance(expr, Var):
        yield expr.name
    elif isinstance(expr, Index):
        yield from free_variables(expr.array)
        yield from free_variables(expr.index)
    elif isinstance(expr, Store):
        yield from free_variables(expr.array)
        yield from free_variables(expr.index)
        yield from free_variables(expr.value)
    elif isinstance(expr, Unary):
        yield from free_variables(expr.operand)
    elif isinstance(expr, Binary):
        yield from free_variables(expr.left)
        yield from free_variables(expr.right)


def rename_expr(expr: Expr, names: Dict[str, str]) -> Expr:
    if isinstance(expr, Var):
        return Var(names.get(expr.name, expr.name))
    if isinstance(expr, Index):
        return Index(rename_expr(expr.array, names), rename_expr(expr.index, names))
    if isinstance(expr, Store):
        return Store(
            rename_expr(expr.array, names), rename_expr(expr.index, names), rename_expr(expr.value, names)
        )
    if isinstance(expr, Unary):
        return Unary(expr.op, rename_expr(expr.operand, names))
    if isinstance(expr, Binary):
        return Binary(expr.op, rename_expr(expr.left, names), rename_expr(expr.right, names))
    return expr


# -- statements ------------------------------------------------------------------


@dataclass(frozen=True)
class Decl:
    name: str
    type: Type


@dataclass(frozen=True)
class VarDecl:
    decl: Decl
    init: Optional[Expr] = None


@dataclass(frozen=True)
class Assign:
    target: str
    value: Expr


@dataclass(frozen=True)
class ArrayStore:
    array: str
    index: Expr
    value: Expr


@dataclass(frozen=True)
class CallStmt:
    """``call f(...)``, ``x := f(...)`` or ``(x, y) := f(...)``."""

    procedure: str
    args: Tuple[Expr, ...]
    targets: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Assume:
    cond: Expr


@dataclass(frozen=True)
class If:
    cond: Expr
    then: Tuple["Stmt", ...]
    orelse: Tuple["Stmt", ...] = ()


@dataclass(frozen=True)
class Return:
    values: Tuple[Expr, ...] = ()


Stmt = Union[VarDecl, Assign, ArrayStore, CallStmt, Assume, If, Return]


def walk(body: Tuple[Stmt, ...]) -> Iterator[Stmt]:
    """Statements of a block in source order, descending into branches."""
    for stmt in body:
        yield stmt
        if isinstance(stmt, If):
            yield from walk(stmt.then)
            yield from walk(stmt.orelse)


# -- declarations ----------------------------------------------------------------


@dataclass(frozen=True)
class Procedure:
    name: str
    params: Tuple[Decl, ...]
    outputs: Tuple[Decl, ...]
    body: Tuple[Stmt, ...]

    @property
    def locals(self) -> Tuple[Decl, ...]:
        return tuple(stmt.decl for stmt in walk(self.body) if isinstance(stmt, VarDecl))

    @property
    def param_names(self) -> Tuple[str, ...]:
        return tuple(d.name for d in self.params)

    @property
    def output_names(self) -> Tuple[str, ...]:
        return tuple(d.name for d in self.outputs)

    def declarations(self) -> Tuple[Decl, ...]:
        return self.params + self.outputs + self.locals


@dataclass(frozen=True)
class Program:
    procedures: Tuple[Procedure, ...]

    def __post_init__(self):
        names = [p.name for p in self.procedures]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ProgramError(f"Procedures defined twice: {', '.join(duplicates)}")

    def __contains__(self, name: object) -> bool:
        return any(p.name == name for p in self.procedures)

    def get(self, name: str) -> Procedure:
        for procedure in self.procedures:
            if procedure.name == name:
                return procedure
        raise ProgramError(f"Unknown procedure {name!r}")

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(p.name for p in self.procedures)

    def variables(self) -> Dict[str, Type]:
        """Every variable of the program with its type.

        All procedures share one frame layout, so a name must have the same type everywhere.
        """
        types: Dict[str, Type] = {}
        for procedure in self.procedures:
            for decl in procedure.declarations():
                known = types.setdefault(decl.name, decl.type)
                if known is not decl.type:
                    raise ProgramError(
                        f"Variable {decl.name!r} is {known.value} elsewhere but {decl.type.value} in {procedure.name}"
                    )
        return dict(sorted(types.items()))

    def parameters(self) -> Tuple[str, ...]:
        """Names that are a parameter of some procedure, sorted."""
        return tuple(sorted({d.name for p in self.procedures for d in p.params}))
