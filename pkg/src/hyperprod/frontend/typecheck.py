"""Static types of expressions and statements."""

from typing import Mapping

from hyperprod.core.exceptions import ProgramError
from hyperprod.frontend.ast import (
    ARITHMETIC_OPS,
    COMPARISON_OPS,
    LOGICAL_OPS,
    ArrayStore,
    Assign,
    Assume,
    Binary,
    BoolLit,
    CallStmt,
    Expr,
    If,
    Index,
    IntLit,
    Program,
    Return,
    Store,
    Type,
    Unary,
    Var,
    VarDecl,
    walk,
)
from hyperprod.frontend.printer import expr_str


def type_of(expr: Expr, variables: Mapping[str, Type]) -> Type:
    if isinstance(expr, IntLit):
        return Type.INT
    if isinstance(expr, BoolLit):
        return Type.BOOL
    if isinstance(expr, Var):
        if expr.name not in variables:
            raise ProgramError(f"Undeclared variable {expr.name!r}")
        return variables[expr.name]
    if isinstance(expr, Index):
        _require(expr.array, Type.INT_ARRAY, variables)
        _require(expr.index, Type.INT, variables)
        return Type.INT
    if isinstance(expr, Store):
        _require(expr.array, Type.INT_ARRAY, variables)
        _require(expr.index, Type.INT, variables)
        _require(expr.value, Type.INT, variables)
        return Type.INT_ARRAY
    if isinstance(expr, Unary):
        expected = Type.BOOL if expr.op == "!" else Type.INT
        _require(expr.operand, expected, variables)
        return expected
    if isinstance(expr, Binary):
        if expr.op in ARITHMETIC_OPS:
            _require(expr.left, Type.INT, variables)
            _require(expr.right, Type.INT, variables)
            return Type.INT
        if expr.op in LOGICAL_OPS:
            _require(expr.left, Type.BOOL, variables)
            _require(expr.right, Type.BOOL, variables)
            return Type.BOOL
        if expr.op in COMPARISON_OPS:
            left = type_of(expr.left, variables)
            if expr.op in ("==", "!="):
                _require(expr.right, left, variables)
            else:
                _require(expr.left, Type.INT, variables)
                _require(expr.right, Type.INT, variables)
            return Type.BOOL
    raise ProgramError(f"Unknown expression {expr!r}")


def _require(expr: Expr, expected: Type, variables: Mapping[str, Type]) -> None:
    actual = type_of(expr, variables)
    if actual is not expected:
        raise ProgramError(f"Expected {expected.value} but {expr_str(expr)} is {actual.value}")


def check_program(program: Program) -> None:
    """Raise ProgramError on the first ill-typed statement."""
    variables = program.variables()
    for procedure in program.procedures:
        outputs = [d.type for d in procedure.outputs]
        for stmt in walk(procedure.body):
            if isinstance(stmt, VarDecl) and stmt.init is not None:
                _require(stmt.init, stmt.decl.type, variables)
            elif isinstance(stmt, Assign):
                _require(stmt.value, variables[stmt.target], variables)
            elif isinstance(stmt, ArrayStore):
                _require(Var(stmt.array), Type.INT_ARRAY, variables)
                _require(stmt.index, Type.INT, variables)
                _require(stmt.value, Type.INT, variables)
            elif isinstance(stmt, (Assume, If)):
                _require(stmt.cond, Type.BOOL, variables)
            elif isinstance(stmt, CallStmt):
                callee = program.get(stmt.procedure)
                for arg, param in zip(stmt.args, callee.params):
                    _require(arg, param.type, variables)
                for target, output in zip(stmt.targets, callee.outputs):
                    if variables[target] is not output.type:
                        raise ProgramError(
                            f"{target} is {variables[target].value} but {callee.name} returns {output.type.value}"
                        )
            elif isinstance(stmt, Return):
                for value, expected in zip(stmt.values, outputs):
                    _require(value, expected, variables)
