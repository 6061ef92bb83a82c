"""SMT-LIB rendering of program expressions and sorts."""

from typing import Iterable, Mapping, Optional

from hyperprod.core.exceptions import EncodingError
from hyperprod.frontend.ast import Binary, BoolLit, Expr, Index, IntLit, Store, Type, Unary, Var
from hyperprod.frontend.property import symbols_of

SORTS = {Type.INT: "Int", Type.BOOL: "Bool", Type.INT_ARRAY: "(Array Int Int)"}

OPERATORS = {
    "+": "+",
    "-": "-",
    "*": "*",
    "<": "<",
    "<=": "<=",
    ">": ">",
    ">=": ">=",
    "==": "=",
    "!=": "distinct",
    "&&": "and",
    "||": "or",
}


def sort_of(type_: Type) -> str:
    return SORTS[type_]


def int_literal(value: int) -> str:
    return str(value) if value >= 0 else f"(- {-value})"


def smt_expr(expr: Expr, names: Mapping[str, str]) -> str:
    """``expr`` with each variable replaced by its SMT symbol in ``names``."""
    if isinstance(expr, IntLit):
        return int_literal(expr.value)
    if isinstance(expr, BoolLit):
        return "true" if expr.value else "false"
    if isinstance(expr, Var):
        try:
            return names[expr.name]
        except KeyError:
            raise EncodingError(f"Variable {expr.name!r} is not part of the encoded frame") from None
    if isinstance(expr, Index):
        return f"(select {smt_expr(expr.array, names)} {smt_expr(expr.index, names)})"
    if isinstance(expr, Store):
        return (
            f"(store {smt_expr(expr.array, names)} {smt_expr(expr.index, names)} {smt_expr(expr.value, names)})"
        )
    if isinstance(expr, Unary):
        op = "not" if expr.op == "!" else "-"
        return f"({op} {smt_expr(expr.operand, names)})"
    if isinstance(expr, Binary):
        return f"({OPERATORS[expr.op]} {smt_expr(expr.left, names)} {smt_expr(expr.right, names)})"
    raise EncodingError(f"Cannot encode {expr!r}")


def eq(left: str, right: str) -> str:
    return f"(= {left} {right})"


def conj(terms: Iterable[str]) -> str:
    terms = list(terms)
    if not terms:
        return "true"
    return terms[0] if len(terms) == 1 else f"(and {' '.join(terms)})"


def negate(term: str) -> str:
    return f"(not {term})"


def versioned(name: str, version: int) -> str:
    return f"{name}!{version}"


def bind(assertion: str, names: Mapping[str, str], only: Optional[Iterable[str]] = None) -> str:
    """Wrap a property snippet in a ``let`` giving its plain variable names the encoded symbols."""
    wanted = set(symbols_of(assertion)) if only is None else set(only)
    pairs = [(plain, names[plain]) for plain in sorted(wanted) if plain in names]
    if not pairs:
        return assertion
    bindings = " ".join(f"({plain} {symbol})" for plain, symbol in pairs)
    return f"(let ({bindings}) {assertion})"
